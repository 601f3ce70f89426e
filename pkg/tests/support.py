"""Shared helpers: parameter samplers over the family registry."""

from __future__ import annotations

import numpy as np

from qso3.qscalar import HalfInt, QContext, generic_ctx, q_pow, root_of_unity_ctx
from qso3 import uqsl2, uqso3

GENERIC_QS = (1.3, 4.0, np.exp(0.37j))
ROOT_PS = (3, 5, 7, 8)

H = HalfInt.parse


def generic_contexts(tol=1e-9):
    return [generic_ctx(q=q, tol=tol) for q in GENERIC_QS]


def root_contexts(tol=1e-9):
    return [root_of_unity_ctx(p, 1, tol=tol) for p in ROOT_PS]


def weight_ls(ctx: QContext, half_odd_only=False, max_twice=9):
    """Admissible l values (as HalfInt) for the weight families."""
    cap = max_twice
    if ctx.is_root_of_unity:
        cap = min(cap, ctx.p_prime - 1)
    out = [HalfInt(t) for t in range(0, cap + 1)]
    if half_odd_only:
        out = [l for l in out if not l.is_integer() and l.twice > 0]
    return out


def split_ns(ctx: QContext, max_n=5):
    cap = uqso3.split_n_max(ctx)
    hi = max_n if cap is None else min(max_n, cap)
    return list(range(1, hi + 1))


def rng_params(seed=7, count=5):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        b = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(lam) > 0.2:
            out.append((a, b, lam))
    return out


def safe_lambda(ctx: QContext, lam: complex) -> complex:
    """Nudge lam off the excluded set +-q^k if needed."""
    while uqso3.excluded_lambda(ctx, lam):
        lam = lam * 1.07 + 0.013j
    return lam


def finite_so3_samples(ctx: QContext, seed=11):
    """(label, rep) pairs covering every finite rotation-algebra family."""
    out = []
    for l in weight_ls(ctx):
        out.append((f"R1_l[{l}]", uqso3.r1_l(ctx, l)))
    for l in weight_ls(ctx, half_odd_only=True):
        for sign in (1, -1):
            out.append((f"Ri_l[{l},{sign}]", uqso3.r_pm_i_l(ctx, l, sign)))
    for n in split_ns(ctx):
        for s1 in (1, -1):
            for s2 in (1, -1):
                out.append((f"Rsplit_n[{n},({s1},{s2})]",
                            uqso3.r_split_n(ctx, n, (s1, s2))))
    if ctx.is_root_of_unity:
        for a, b, lam in rng_params(seed):
            lam = safe_lambda(ctx, lam)
            out.append((f"R_ab_lambda[{a:.2f},{b:.2f},{lam:.2f}]",
                        uqso3.r_ab_lambda(ctx, a, b, lam)))
        for lam in (2.0, 0.7 + 0.4j, 1.0, complex(ctx.s), -1.0):
            out.append((f"Qp_lambda[{lam}]", uqso3.q_prime_lambda(ctx, lam)))
        for desc in uqso3.q_root_component_descriptors(ctx):
            out.append((f"Q_root_comp{desc}", uqso3.q_root_components(ctx, desc)))
    return out


def finite_sl2_samples(ctx: QContext, seed=13):
    out = []
    for l in weight_ls(ctx):
        for omega in ("1", "-1", "i", "-i"):
            out.append((f"T_l[{l},{omega}]", uqsl2.t_omega_l(ctx, l, omega)))
    if ctx.is_root_of_unity:
        for a, b, lam in rng_params(seed):
            out.append((f"T_ab[{a:.2f},{b:.2f},{lam:.2f}]",
                        uqsl2.t_ab_lambda(ctx, a, b, lam)))
        for lam in (2.0, 1.3 - 0.4j):
            out.append((f"T_prime[0.5,{lam}]",
                        uqsl2.t_prime_0b_lambda(ctx, 0.5, lam)))
            out.append((f"T_prime[0,{lam}]", uqsl2.t_prime_0b_lambda(ctx, 0, lam)))
            out.append((f"T_tilde[1,1,{lam}]",
                        uqsl2.t_tilde_ab_lambda(ctx, 1, 1, lam)))
        # reducible-flagged points: (a,b) = (0,0) with lambda = +-q^n
        for n in range(0, min(3, ctx.p_prime - 1)):
            out.append((f"T_ab[0,0,q^{n}]",
                        uqsl2.t_ab_lambda(ctx, 0, 0, q_pow(ctx, n))))
    return out


def banded_so3_samples(ctx: QContext):
    """(label, rep) pairs for the lattice families (generic q only)."""
    assert not ctx.is_root_of_unity
    out = [
        ("R_a_eps", uqso3.r_a_epsilon(ctx, 0.3 + 0.2j, 0.4)),
        ("R_a_special[+]", uqso3.r_a_special(ctx, 0.7, 1)),
        ("R_a_special[-]", uqso3.r_a_special(ctx, 0.7, -1)),
        ("R_hw[l+,1/2]", uqso3.r_highest_lowest(ctx, "l+", H("1/2"))),
        ("R_hw[l-,1/2]", uqso3.r_highest_lowest(ctx, "l-", H("1/2"))),
        ("R_hw[l+,3/2]", uqso3.r_highest_lowest(ctx, "l+", H("3/2"))),
        ("R_hw[a+]", uqso3.r_highest_lowest(ctx, "a+", 0.3 + 0.2j)),
        ("R_hw[a-]", uqso3.r_highest_lowest(ctx, "a-", 0.3 + 0.2j)),
        ("Q_lambda[0.7+0.1i,+]", uqso3.q_lambda(ctx, 0.7 + 0.1j, 1)),
        ("Q_lambda[1,+]", uqso3.q_lambda(ctx, 1.0, 1)),
        ("Q_lambda[sqrt_q,-]", uqso3.q_lambda(ctx, complex(ctx.s), -1)),
    ]
    for fam in (1, -1):
        for sgn in (1, -1):
            out.append((f"Rsplit_inf[{fam},{sgn}]",
                        uqso3.r_split_infinite(ctx, 0.4 + 0.1j, fam, sgn)))
    for which in (1, 2):
        for at in ("1", "sqrt_q"):
            for sgn in (1, -1):
                out.append((f"Q_comp[{which},{at},{sgn}]",
                            uqso3.q_lambda_components(ctx, which, at, sgn)))
    return out
