"""Representation families of the quantum sl2 algebra and its localization.

Finite families: the four sign-twisted weight families T_l^(omega) for
omega in {1, -1, i, -i}; at a root of unity additionally the cyclic
families T_{ab,lambda}, the one-sided variant T'_{0b,lambda}, and the
i-twisted T~_{ab,lambda}.  Infinite families: T_{a,eps} on a shifted
integer lattice.  ``is_extendable`` decides whether all operators
q^k K + q^{-k} Kinv are invertible, which is what admits division by
K + Kinv downstream.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BadParam, BadRange, CtxMismatch
from .qscalar import HalfInt, QContext, q_num, q_pow, q_pow_c
from .repcore import Band, BandedRep, FamilyDescriptor, Sl2FiniteRep

OMEGAS = {"1": 1 + 0j, "-1": -1 + 0j, "i": 1j, "-i": -1j}
EXTEND_SCAN_MARGIN = 8


def _omega_value(omega) -> complex:
    if isinstance(omega, str):
        if omega not in OMEGAS:
            raise BadParam(f"omega must be one of 1, -1, i, -i (got {omega!r})")
        return OMEGAS[omega]
    w = complex(omega)
    for cand in OMEGAS.values():
        if abs(w - cand) < 1e-9:
            return cand
    raise BadParam(f"omega must be one of 1, -1, i, -i (got {omega!r})")


def _omega_name(w: complex) -> str:
    return {1 + 0j: "1", -1 + 0j: "-1", 1j: "i", -1j: "-i"}[w]


def weight_labels(l: HalfInt) -> list[HalfInt]:
    """Basis labels m = -l, -l+1, ..., l in ascending order."""
    return [HalfInt(t) for t in range(-l.twice, l.twice + 1, 2)]


def t_omega_l(ctx: QContext, l, omega=1) -> Sl2FiniteRep:
    """Weight family of dimension 2l+1 with K = omega * diag(q^m).

    For omega = +-i the lowering generator is negated.  At a root of unity
    the label range is guarded by 2l < p'.
    """
    l = HalfInt.of(l)
    if l.twice < 0:
        raise BadParam(f"l must be >= 0, got {l}")
    if ctx.is_root_of_unity and l.twice >= ctx.p_prime:
        raise BadRange(f"2l = {l.twice} >= p' = {ctx.p_prime}: weight family out of range")
    w = _omega_value(omega)
    labels = weight_labels(l)
    dim = len(labels)
    K = np.zeros((dim, dim), dtype=complex)
    Kinv = np.zeros((dim, dim), dtype=complex)
    E = np.zeros((dim, dim), dtype=complex)
    F = np.zeros((dim, dim), dtype=complex)
    f_sign = -1.0 if w.real == 0 else 1.0
    for j, m in enumerate(labels):
        km = w * q_pow(ctx, m)
        K[j, j] = km
        Kinv[j, j] = 1 / km
        if j + 1 < dim:
            E[j + 1, j] = q_num(ctx, l - m)
        if j - 1 >= 0:
            F[j - 1, j] = f_sign * q_num(ctx, l + m)
    fam = FamilyDescriptor("T_l", {"l": l, "omega": _omega_name(w)})
    return Sl2FiniteRep(ctx, K, Kinv, E, F, fam)


def is_extendable(rep: Sl2FiniteRep | BandedRep, scan: int | None = None):
    """Whether q^k K + q^{-k} Kinv is invertible for all integers k.

    A K-eigenvalue mu fails at k iff mu^2 = -q^{-2k}.  The scan covers
    |k| <= 2*dim + 8 for generic q, and k mod p at a root of unity.
    Returns (ok, witness) with witness = (k, mu) on failure.
    """
    ctx = rep.ctx
    if isinstance(rep, Sl2FiniteRep):
        mus = np.diag(rep.K) if _is_diagonal(rep.K) else np.linalg.eigvals(rep.K)
        dim = rep.dim
    else:
        band = rep.bands["K"]
        ns = range(-40, 41) if rep.n_min is None and rep.n_max is None else \
            range(rep.n_min if rep.n_min is not None else rep.n_max - 80,
                  (rep.n_max if rep.n_max is not None else rep.n_min + 80) + 1)
        mus = np.array([band.diag(n) for n in ns])
        dim = len(mus)
    if ctx.is_root_of_unity:
        ks = range(ctx.p)
    else:
        bound = scan if scan is not None else 2 * dim + EXTEND_SCAN_MARGIN
        ks = sorted(range(-bound, bound + 1), key=abs)
    for k in ks:
        shift = q_pow_c(ctx, 2 * k)
        for mu in mus:
            # mu^2 = -q^{-2k}, tested in the scale-free form q^{2k} mu^2 = -1
            t = shift * mu * mu
            if abs(t + 1) <= ctx.threshold(abs(t)):
                return False, (k, complex(mu))
    return True, None


def _is_diagonal(mat: np.ndarray) -> bool:
    return np.count_nonzero(mat - np.diag(np.diag(mat))) == 0


def cyclic_dim(ctx: QContext, wraps: bool) -> int:
    """Dimension on which the cyclic families close.

    Stepping through the basis multiplies the K-eigenvalue by q, so a cycle
    with nonzero wraparound weights closes only after ord(q) = p steps.
    For odd p this is p' = p; for even p the p'-cycle would need
    q^{p'} = -1 to equal 1 and closes only at length p.  Wrap-free chains
    (all wrap weights zero) stay at length p'.
    """
    if not wraps or ctx.p % 2:
        return ctx.p_prime
    return ctx.p


def t_ab_lambda(ctx: QContext, a, b, lam) -> Sl2FiniteRep:
    """Cyclic family at a root of unity (dimension p' for odd p; see cyclic_dim).

    K|i> = q^{-i} lambda |i>; F steps i -> i+1, wrapping with weight b;
    E steps i -> i-1 with q-number coefficients, wrapping with weight a.
    Parameter points known to be reducible ((a,b) = (0,0), lambda = +-q^n)
    are constructed with a flag, never refused.
    """
    lam = complex(lam)
    _require_root(ctx)
    if lam == 0:
        raise BadParam("lambda must be nonzero")
    a, b = complex(a), complex(b)
    dim = cyclic_dim(ctx, a != 0 or b != 0)
    q = ctx.q
    w = q - 1 / q
    K = np.zeros((dim, dim), dtype=complex)
    Kinv = np.zeros((dim, dim), dtype=complex)
    E = np.zeros((dim, dim), dtype=complex)
    F = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        K[i, i] = q_pow(ctx, -i) * lam
        Kinv[i, i] = 1 / K[i, i]
        if i < dim - 1:
            F[i + 1, i] = 1.0
        if i > 0:
            E[i - 1, i] = a * b + q_num(ctx, i) * (
                lam ** 2 * q_pow(ctx, 1 - i) - lam ** -2 * q_pow(ctx, i - 1)) / w
    F[0, dim - 1] += b
    E[dim - 1, 0] += a
    flags = {}
    # wrap-free chains break exactly where a raising coefficient vanishes
    if a == 0 and b == 0 and _chain_breaks(ctx, E, dim):
        flags["reducible"] = True
    fam = FamilyDescriptor("T_ab_lambda", {"a": a, "b": b, "lambda": lam})
    return Sl2FiniteRep(ctx, K, Kinv, E, F, fam, flags)


def _chain_breaks(ctx: QContext, stepper: np.ndarray, dim: int) -> bool:
    scale = max(1.0, float(np.max(np.abs(stepper))))
    return any(abs(stepper[i - 1, i]) <= ctx.tol * scale for i in range(1, dim))


def t_prime_0b_lambda(ctx: QContext, b, lam) -> Sl2FiniteRep:
    """One-sided cyclic variant: E steps up (wrapping with weight b), F|0> = 0."""
    lam = complex(lam)
    _require_root(ctx)
    if lam == 0:
        raise BadParam("lambda must be nonzero")
    b = complex(b)
    dim = cyclic_dim(ctx, b != 0)
    q = ctx.q
    w = q - 1 / q
    K = np.zeros((dim, dim), dtype=complex)
    Kinv = np.zeros((dim, dim), dtype=complex)
    E = np.zeros((dim, dim), dtype=complex)
    F = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        K[i, i] = q_pow(ctx, i) / lam
        Kinv[i, i] = 1 / K[i, i]
        if i < dim - 1:
            E[i + 1, i] = 1.0
        if i > 0:
            F[i - 1, i] = q_num(ctx, i) * (
                lam ** 2 * q_pow(ctx, 1 - i) - lam ** -2 * q_pow(ctx, i - 1)) / w
    E[0, dim - 1] += b
    flags = {}
    if b == 0 and _chain_breaks(ctx, F, dim):
        flags["reducible"] = True
    fam = FamilyDescriptor("T_prime", {"b": b, "lambda": lam})
    return Sl2FiniteRep(ctx, K, Kinv, E, F, fam, flags)


def t_tilde_ab_lambda(ctx: QContext, a, b, lam) -> Sl2FiniteRep:
    """Image of the cyclic family under the automorphism K -> iK, E -> -E.

    Equivalent to the plain cyclic family at i*lambda; kept as a separate
    constructor so the equivalence is testable.
    """
    lam = complex(lam)
    _require_root(ctx)
    if lam == 0:
        raise BadParam("lambda must be nonzero")
    a, b = complex(a), complex(b)
    dim = cyclic_dim(ctx, a != 0 or b != 0)
    q = ctx.q
    w = q - 1 / q
    K = np.zeros((dim, dim), dtype=complex)
    Kinv = np.zeros((dim, dim), dtype=complex)
    E = np.zeros((dim, dim), dtype=complex)
    F = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        K[i, i] = 1j * q_pow(ctx, -i) * lam
        Kinv[i, i] = 1 / K[i, i]
        if i < dim - 1:
            F[i + 1, i] = 1.0
        if i > 0:
            E[i - 1, i] = a * b - q_num(ctx, i) * (
                lam ** 2 * q_pow(ctx, 1 - i) - lam ** -2 * q_pow(ctx, i - 1)) / w
    F[0, dim - 1] += b
    E[dim - 1, 0] += a
    fam = FamilyDescriptor("T_tilde", {"a": a, "b": b, "lambda": lam})
    return Sl2FiniteRep(ctx, K, Kinv, E, F, fam)


def special_epsilon_values(ctx: QContext, r_range: int = 8) -> list[complex]:
    """Solutions of q^{2*eps} = -1: eps = i*pi*(2r+1) / (2*tau)."""
    tau = ctx.tau
    return [1j * math.pi * (2 * r + 1) / (2 * tau) for r in range(-r_range, r_range + 1)]


def classify_epsilon(ctx: QContext, eps: complex, j_scan: int = 64) -> str:
    """"special0" if eps is congruent mod Z to a solution of q^{2eps} = -1,
    "special_half" if eps - 1/2 is, else "generic"."""
    eps = complex(eps)
    for base in special_epsilon_values(ctx):
        for shift, tag in ((0.0, "special0"), (0.5, "special_half")):
            d = eps - shift - base
            if abs(d - round(d.real)) <= ctx.threshold(abs(eps), abs(base)) and abs(
                    round(d.real)) <= j_scan:
                return tag
    return "generic"


def t_a_epsilon(ctx: QContext, a, eps) -> BandedRep:
    """Two-sided lattice family on labels m = eps + n, n in Z.

    K|m> = q^m|m>, E|m> = [a-m]|m+1>, F|m> = [a+m]|m-1>.  Flags record
    irreducibility (a != +-eps mod Z) and extendability (eps avoids the
    special offsets where K + Kinv has a zero eigenvalue).
    """
    if ctx.is_root_of_unity:
        raise BadParam("lattice family is defined for generic q only")
    a, eps = complex(a), complex(eps)
    k_band = Band(diag=lambda n: q_pow_c(ctx, eps + n))
    e_band = Band(up=lambda n: q_num(ctx, a - eps - n))
    f_band = Band(down=lambda n: q_num(ctx, a + eps + n))
    kind = classify_epsilon(ctx, eps)
    flags = {
        "extendable": kind == "generic" or kind == "special_half",
        "epsilon_class": kind,
        "irreducible": not (_is_integer_mod(ctx, a - eps) or _is_integer_mod(ctx, a + eps)),
    }
    fam = FamilyDescriptor("T_a_eps", {"a": a, "eps": eps})
    return BandedRep(ctx, "sl2", eps, {"K": k_band, "E": e_band, "F": f_band},
                     fam, flags=flags)


def delta_tensor(ta: Sl2FiniteRep, tb: Sl2FiniteRep) -> Sl2FiniteRep:
    """Coproduct tensor product: K -> K(x)K, E -> E(x)K + Kinv(x)E, likewise F.

    Kronecker index order is left factor major: (iA, iB) -> iA*dimB + iB.
    """
    _require_same_ctx(ta, tb)
    K = np.kron(ta.K, tb.K)
    Kinv = np.kron(ta.Kinv, tb.Kinv)
    E = np.kron(ta.E, tb.K) + np.kron(ta.Kinv, tb.E)
    F = np.kron(ta.F, tb.K) + np.kron(ta.Kinv, tb.F)
    fam = FamilyDescriptor("delta_tensor", {"left": ta.family, "right": tb.family})
    return Sl2FiniteRep(ta.ctx, K, Kinv, E, F, fam)


def _require_root(ctx: QContext):
    if not ctx.is_root_of_unity:
        raise BadParam("this family requires a root-of-unity context")


def _require_same_ctx(a, b):
    if abs(a.ctx.s - b.ctx.s) > 1e-12 or a.ctx.kind != b.ctx.kind:
        raise CtxMismatch("operands were built over different contexts")


def _is_integer_mod(ctx: QContext, z: complex) -> bool:
    return abs(z - round(z.real)) <= ctx.threshold(abs(z))

