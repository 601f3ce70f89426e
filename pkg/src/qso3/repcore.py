"""Representation data model and relation verifiers.

Finite representations are dense complex matrices acting on column vectors:
G|m> = sum_j c_j |m_j> puts c_j in column index(m), row index(m_j), with
basis labels in ascending order.  Infinite representations are stored as
tridiagonal coefficient closures over an integer domain coordinate n with
labels m = offset + n; dense matrices exist only through truncation.

Verification is residual-based: each defining relation is evaluated and the
max-entry norm of the defect is scaled by the max-entry norms of the terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import EmptyWindow
from .qscalar import HalfInt, QContext, as_complex, q_pow

CoeffFn = Callable[[int], complex]
HALF = HalfInt(1)  # the half-integer 1/2


@dataclass(frozen=True)
class FamilyDescriptor:
    """Registry key plus the parameter record that built a representation."""

    name: str
    params: dict = field(default_factory=dict)

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({inner})"


@dataclass
class So3FiniteRep:
    ctx: QContext
    I1: np.ndarray
    I2: np.ndarray
    I3: np.ndarray
    family: FamilyDescriptor
    flags: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.I1.shape[0]

    @property
    def generators(self) -> list[np.ndarray]:
        return [self.I1, self.I2]


@dataclass
class Sl2FiniteRep:
    ctx: QContext
    K: np.ndarray
    Kinv: np.ndarray
    E: np.ndarray
    F: np.ndarray
    family: FamilyDescriptor
    flags: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.K.shape[0]

    @property
    def generators(self) -> list[np.ndarray]:
        return [self.K, self.E, self.F]


@dataclass(frozen=True)
class Band:
    """Tridiagonal action of one generator: G|n> = up(n)|n+1> + diag(n)|n> + down(n)|n-1>."""

    diag: CoeffFn | None = None
    up: CoeffFn | None = None
    down: CoeffFn | None = None


@dataclass
class BandedRep:
    """Infinite-dimensional representation on basis labels m = offset + n.

    The domain is n in [n_min, n_max] with None meaning unbounded.  For so3
    flavor ``bands`` holds I1 (diagonal), I2, and the derived I3; for sl2
    flavor it holds K (diagonal), E (up shift), F (down shift).
    """

    ctx: QContext
    flavor: str  # "so3" | "sl2"
    offset: complex
    bands: dict[str, Band]
    family: FamilyDescriptor
    n_min: int | None = None
    n_max: int | None = None
    flags: dict = field(default_factory=dict)

    def label(self, n: int) -> complex:
        return as_complex(self.offset) + n

    def in_domain(self, n: int) -> bool:
        if self.n_min is not None and n < self.n_min:
            return False
        if self.n_max is not None and n > self.n_max:
            return False
        return True

    @property
    def generator_names(self) -> list[str]:
        return ["I1", "I2"] if self.flavor == "so3" else ["K", "E", "F"]


def so3_i3_band(ctx: QContext, i1: Band, i2: Band) -> Band:
    """I3 = q^{1/2} I1 I2 - q^{-1/2} I2 I1 for diagonal I1 and tridiagonal I2."""
    rt = q_pow(ctx, HALF)
    rti = 1 / rt
    g = i1.diag

    def diag(n):
        d = i2.diag(n) if i2.diag else 0
        return d * g(n) * (rt - rti)

    def up(n):
        u = i2.up(n) if i2.up else 0
        return u * (rt * g(n + 1) - rti * g(n))

    def down(n):
        d = i2.down(n) if i2.down else 0
        return d * (rt * g(n - 1) - rti * g(n))

    return Band(diag=diag if i2.diag else None, up=up if i2.up else None,
                down=down if i2.down else None)


@dataclass
class TruncatedRep:
    """Dense window of a banded representation.

    ``interior[j]`` marks columns whose relation residuals are exact: every
    index within reach (distance 2) is either inside the window or outside
    the representation's domain.
    """

    labels: np.ndarray
    ns: np.ndarray
    matrices: dict[str, np.ndarray]
    interior: np.ndarray


def truncate(rep: BandedRep, lo, hi) -> TruncatedRep:
    """Restrict to basis labels with lo <= Re(m) <= hi; outside images are dropped."""
    off = as_complex(rep.offset).real
    n_lo = int(np.ceil(as_complex(lo).real - off - 1e-9))
    n_hi = int(np.floor(as_complex(hi).real - off + 1e-9))
    if rep.n_min is not None:
        n_lo = max(n_lo, rep.n_min)
    if rep.n_max is not None:
        n_hi = min(n_hi, rep.n_max)
    if n_hi < n_lo:
        raise EmptyWindow(f"no basis labels in [{lo}, {hi}]")
    return truncate_n(rep, n_lo, n_hi)


def truncate_n(rep: BandedRep, n_lo: int, n_hi: int) -> TruncatedRep:
    """Truncate by domain coordinate n (inclusive)."""
    if rep.n_min is not None:
        n_lo = max(n_lo, rep.n_min)
    if rep.n_max is not None:
        n_hi = min(n_hi, rep.n_max)
    if n_hi < n_lo:
        raise EmptyWindow("empty truncation window")
    ns = np.arange(n_lo, n_hi + 1)
    dim = len(ns)
    idx = {int(n): j for j, n in enumerate(ns)}
    mats = {}
    for name, band in rep.bands.items():
        mat = np.zeros((dim, dim), dtype=complex)
        for j, n in enumerate(ns):
            n = int(n)
            if band.diag is not None:
                mat[j, j] = band.diag(n)
            if band.up is not None and (n + 1) in idx:
                mat[idx[n + 1], j] = band.up(n)
            if band.down is not None and (n - 1) in idx:
                mat[idx[n - 1], j] = band.down(n)
        mats[name] = mat
    labels = np.array([rep.label(int(n)) for n in ns])
    interior = np.array([
        all(idx.__contains__(m) or not rep.in_domain(m)
            for m in range(int(n) - 2, int(n) + 3))
        for n in ns
    ])
    return TruncatedRep(labels=labels, ns=ns, matrices=mats, interior=interior)


@dataclass
class ResidualReport:
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def __str__(self):
        body = ", ".join(f"{k}={v:.3e}" for k, v in self.residuals.items())
        return f"ResidualReport({body}; max={self.max_residual:.3e})"


def _maxabs(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat))) if mat.size else 0.0


def _scaled_defect(terms: list[np.ndarray], cols: np.ndarray | None = None) -> float:
    """Max-entry norm of sum(terms), scaled by the term norms.

    ``cols`` restricts the defect to the given columns (window interiors).
    """
    defect = sum(terms)
    if cols is not None:
        defect = defect[:, cols]
    scale = sum(_maxabs(t) for t in terms)
    return _maxabs(defect) / max(scale, 1e-300) if _maxabs(defect) else 0.0


def so3_relation_residuals(ctx: QContext, I1, I2, I3, cols=None) -> dict[str, float]:
    q = ctx.q
    nu = q + 1 / q
    rt = q_pow(ctx, HALF)
    rels = {
        "i3_consistency": [rt * I1 @ I2, -(1 / rt) * I2 @ I1, -I3],
        "cubic_1": [I1 @ I2 @ I2, -nu * I2 @ I1 @ I2, I2 @ I2 @ I1, I1],
        "cubic_2": [I2 @ I1 @ I1, -nu * I1 @ I2 @ I1, I1 @ I1 @ I2, I2],
    }
    return {name: _scaled_defect(terms, cols) for name, terms in rels.items()}


def sl2_relation_residuals(ctx: QContext, K, Kinv, E, F, cols=None) -> dict[str, float]:
    q = ctx.q
    w = q - 1 / q
    eye = np.eye(K.shape[0], dtype=complex)
    rels = {
        "k_kinv": [K @ Kinv, -eye],
        "kek": [K @ E @ Kinv, -q * E],
        "kfk": [K @ F @ Kinv, -(1 / q) * F],
        "ef_commutator": [E @ F, -F @ E, -(K @ K - Kinv @ Kinv) / w],
    }
    return {name: _scaled_defect(terms, cols) for name, terms in rels.items()}


def verify_so3(rep: So3FiniteRep | BandedRep, window: int = 20) -> ResidualReport:
    """Residuals of the cyclic q-commutation relations.

    For banded representations the relations are evaluated on a truncation
    with margin and only interior columns are scored, which makes the
    reported residuals exact for the infinite operator.
    """
    if isinstance(rep, So3FiniteRep):
        return ResidualReport(so3_relation_residuals(rep.ctx, rep.I1, rep.I2, rep.I3))
    tr = _verify_window(rep, window)
    cols = np.where(tr.interior)[0]
    res = so3_relation_residuals(rep.ctx, tr.matrices["I1"], tr.matrices["I2"],
                                 tr.matrices["I3"], cols=cols)
    return ResidualReport(res)


def verify_sl2(rep: Sl2FiniteRep | BandedRep, window: int = 20) -> ResidualReport:
    if isinstance(rep, Sl2FiniteRep):
        return ResidualReport(
            sl2_relation_residuals(rep.ctx, rep.K, rep.Kinv, rep.E, rep.F))
    tr = _verify_window(rep, window)
    cols = np.where(tr.interior)[0]
    K = tr.matrices["K"]
    dk = np.diag(K)
    Kinv = np.diag(1 / dk)
    res = sl2_relation_residuals(rep.ctx, K, Kinv, tr.matrices["E"],
                                 tr.matrices["F"], cols=cols)
    return ResidualReport(res)


def _verify_window(rep: BandedRep, window: int) -> TruncatedRep:
    margin = 3
    n_lo = -window - margin if rep.n_min is None else rep.n_min
    n_hi = window + margin if rep.n_max is None else rep.n_max
    if rep.n_min is not None:
        n_hi = rep.n_min + 2 * window + margin
    if rep.n_max is not None and rep.n_min is None:
        n_lo = rep.n_max - 2 * window - margin
    return truncate_n(rep, n_lo, n_hi)



def _matrix_entry_list(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def _param_json(value):
    from .qscalar import HalfInt

    if isinstance(value, HalfInt):
        return str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_param_json(v) for v in value]
    return value


def rep_to_json(rep: So3FiniteRep | Sl2FiniteRep | TruncatedRep,
                family: FamilyDescriptor | None = None) -> dict:
    """JSON-ready dump: family, params, ctx, row-major matrices of [re, im] pairs."""
    from .qscalar import ctx_to_json

    if isinstance(rep, TruncatedRep):
        out = {
            "family": family.name if family else "truncation",
            "params": {k: _param_json(v) for k, v in (family.params if family else {}).items()},
            "truncated": True,
            "labels": [[z.real, z.imag] for z in rep.labels],
            "matrices": {k: _matrix_entry_list(v) for k, v in rep.matrices.items()},
        }
        return out
    fam = family or rep.family
    out = {
        "family": fam.name,
        "params": {k: _param_json(v) for k, v in fam.params.items()},
        "ctx": ctx_to_json(rep.ctx),
    }
    if isinstance(rep, So3FiniteRep):
        out["matrices"] = {"I1": _matrix_entry_list(rep.I1),
                           "I2": _matrix_entry_list(rep.I2),
                           "I3": _matrix_entry_list(rep.I3)}
    else:
        out["matrices"] = {"K": _matrix_entry_list(rep.K),
                           "Kinv": _matrix_entry_list(rep.Kinv),
                           "E": _matrix_entry_list(rep.E),
                           "F": _matrix_entry_list(rep.F)}
    if rep.flags:
        out["flags"] = {k: _param_json(v) for k, v in rep.flags.items()
                        if isinstance(v, (bool, int, float, str, complex, list, tuple))}
    return out
