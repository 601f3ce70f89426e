"""Tensor products of rotation-algebra representations and their decomposition.

Products are defined only through the sl2 factor data: the coproduct tensor
of the factors is pushed through the localization map.  There is no
coproduct on the rotation algebra itself, so products of the split
component families are not constructible.  Decomposition tables are
computed with the structure oracles and matched against the registered
generic-q families.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .psihom import compose
from .qscalar import HalfInt
from .repcore import Sl2FiniteRep, So3FiniteRep
from .structure import are_equivalent, decompose, fingerprint
from .uqsl2 import delta_tensor, t_omega_l
from .uqso3 import r1_l, r_split_n


def tensor_so3(ta: Sl2FiniteRep, tb: Sl2FiniteRep) -> So3FiniteRep:
    """Rotation-algebra tensor product via the coproduct of the factors.

    Raises NotExtendable when the combined weight pattern makes the
    localization inverse singular (e.g. an i-twisted factor whose label
    parities cancel against the partner's).
    """
    return compose(delta_tensor(ta, tb))


@dataclass
class CGReport:
    """Multiplicity table of a decomposition, plus unmatched leftovers."""

    multiplicities: dict = field(default_factory=dict)
    unmatched_dims: list = field(default_factory=list)
    component_dims: list = field(default_factory=list)

    def total_dim(self) -> int:
        return sum(self.component_dims) + sum(self.unmatched_dims)

    def to_json(self) -> dict:
        return {"multiplicities": dict(self.multiplicities),
                "unmatched_dims": list(self.unmatched_dims)}


def _so3_candidates(ctx, dim: int):
    """Registered generic-q families of the given dimension."""
    from .errors import BadRange

    cands = []
    l = HalfInt(dim - 1)  # 2l + 1 = dim
    try:
        cands.append((f"R1_l[l={l}]", r1_l(ctx, l)))
        for s1 in (1, -1):
            for s2 in (1, -1):
                name = f"Rsplit_n[n={dim},({_sgn(s1)},{_sgn(s2)})]"
                cands.append((name, r_split_n(ctx, dim, (s1, s2))))
    except BadRange:
        pass
    return cands


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


def cg_decompose(prod: So3FiniteRep, seed: int = 1234) -> CGReport:
    """Decompose a finite rotation-algebra representation and name the parts."""
    report = decompose(prod, seed=seed)
    out = CGReport()
    ctx = prod.ctx
    comps = report.components if report.is_direct_sum else []
    for _, comp in comps:
        out.component_dims.append(comp.dim)
        fp = fingerprint(comp)
        matched = None
        for name, cand in _so3_candidates(ctx, comp.dim):
            if not fp.matches(fingerprint(cand)):
                continue
            if are_equivalent(comp, cand):
                matched = name
                break
        if matched is None:
            out.unmatched_dims.append(comp.dim)
            out.component_dims.pop()
        else:
            out.multiplicities[matched] = out.multiplicities.get(matched, 0) + 1
    return out


def sl2_cg_check(ta: Sl2FiniteRep, tb: Sl2FiniteRep, seed: int = 1234) -> CGReport:
    """Decompose the coproduct tensor on the sl2 side and name the parts.

    Components are matched against the four sign-twisted weight families;
    for the twisted families the product of the factor twists is the twist
    of every component.
    """
    prod = delta_tensor(ta, tb)
    report = decompose(prod, seed=seed)
    out = CGReport()
    ctx = prod.ctx
    omegas = {"1": 1 + 0j, "-1": -1 + 0j, "i": 1j, "-i": -1j}
    comps = report.components if report.is_direct_sum else [
        (np.eye(prod.dim), prod)]
    from .structure import _multiset_close, cluster

    for _, comp in comps:
        out.component_dims.append(comp.dim)
        l = HalfInt(comp.dim - 1)
        matched = None
        got = cluster(np.linalg.eigvals(comp.K), 1e-6)
        for name, omega in omegas.items():
            cand = t_omega_l(ctx, l, omega)
            want = cluster(np.diag(cand.K), 1e-6)
            if not _multiset_close(got, want, 1e-6):
                continue
            if are_equivalent(comp, cand):
                matched = f"T_l[l={l},omega={name}]"
                break
        if matched is None:
            out.unmatched_dims.append(comp.dim)
            out.component_dims.pop()
        else:
            out.multiplicities[matched] = out.multiplicities.get(matched, 0) + 1
    return out


def expected_sl2_tensor(omega_a: complex, omega_b: complex, la, lb) -> dict:
    """Clebsch-Gordan prediction for the twisted weight families: one copy
    of the (omega_a * omega_b)-twisted family for each l from |la - lb| to
    la + lb."""
    la, lb = HalfInt.of(la), HalfInt.of(lb)
    omega = complex(omega_a) * complex(omega_b)
    name = {1 + 0j: "1", -1 + 0j: "-1", 1j: "i", -1j: "-i"}[omega]
    lo, hi = abs(la.twice - lb.twice), la.twice + lb.twice
    out = {}
    for tw in range(lo, hi + 1, 2):
        out[f"T_l[l={HalfInt(tw)},omega={name}]"] = 1
    return out


def expected_so3_tensor(omega_a: complex, omega_b: complex, la, lb) -> dict:
    """Rotation-algebra prediction: weight families recombine index-wise;
    products with a single i-twisted factor yield the reducible twisted
    families, which split into sign components of equal halves."""
    la, lb = HalfInt.of(la), HalfInt.of(lb)
    omega = complex(omega_a) * complex(omega_b)
    lo, hi = abs(la.twice - lb.twice), la.twice + lb.twice
    out = {}
    for tw in range(lo, hi + 1, 2):
        l = HalfInt(tw)
        if omega.imag == 0:
            out[f"R1_l[l={l}]"] = 1
        else:
            s1 = 1 if omega == 1j else -1
            n = (tw + 1) // 2  # l half-odd in this branch
            out[f"Rsplit_n[n={n},({_sgn(s1)},+)]"] = 1
            out[f"Rsplit_n[n={n},({_sgn(s1)},-)]"] = 1
    return out
