"""Scalar arithmetic for the deformation parameter.

All families downstream are phrased in terms of powers q^a and q-numbers
[a] = (q^a - q^{-a}) / (q - q^{-1}).  Half-integer exponents are sensitive to
the choice of square root of q, so the context stores the chosen root ``s``
as data and every half-integer power is computed as a power of ``s``.
Complex exponents go through the principal logarithm tau, q = exp(tau).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd

from .errors import BadModulus, BadParam, DegenerateIndex, DegenerateQ

GENERIC_SCAN_BOUND = 64
ABS_TOL_FLOOR = 1e-12


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact half-integer n/2, stored as the integer n.

    Addition, negation and comparison are exact; ``value`` is the float n/2.
    """

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int):
            raise TypeError(f"twice must be int, got {type(self.twice).__name__}")

    @staticmethod
    def of(x) -> "HalfInt":
        """Coerce an int, HalfInt, or exact-float half-integer."""
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return HalfInt(2 * x)
        if isinstance(x, float) and float(2 * x).is_integer():
            return HalfInt(int(round(2 * x)))
        raise TypeError(f"not a half-integer: {x!r}")

    @staticmethod
    def parse(text: str) -> "HalfInt":
        """Parse '3/2', '-1/2', '2' style strings."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            if int(den) != 2:
                raise ValueError(f"half-integer denominator must be 2: {text!r}")
            return HalfInt(int(num))
        return HalfInt(2 * int(text))

    @property
    def value(self) -> float:
        return self.twice / 2

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __mul__(self, other: int):
        if not isinstance(other, int):
            return NotImplemented
        return HalfInt(self.twice * other)

    __rmul__ = __mul__

    def __complex__(self):
        return complex(self.twice / 2)

    def __float__(self):
        return self.twice / 2

    def __str__(self):
        if self.is_integer():
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self.twice})"


def as_complex(a) -> complex:
    """HalfInt | int | float | complex -> complex."""
    if isinstance(a, HalfInt):
        return complex(a.twice / 2)
    return complex(a)


@dataclass(frozen=True)
class QContext:
    """Deformation parameter with a fixed square-root branch and tolerance.

    ``s`` is the chosen value of q^{1/2}; q = s^2 and tau = Log q are derived.
    ``kind`` is "generic" or "root_of_unity"; in the latter case ``p`` is the
    minimal positive exponent with q^p = 1 and ``p_prime`` is p for odd p,
    p/2 for even p.
    """

    s: complex
    kind: str
    p: int | None = None
    p_prime: int | None = None
    tol: float = 1e-9

    @property
    def q(self) -> complex:
        return self.s * self.s

    @property
    def tau(self) -> complex:
        return cmath.log(self.q)

    @property
    def is_root_of_unity(self) -> bool:
        return self.kind == "root_of_unity"

    def threshold(self, *magnitudes: float) -> float:
        """Comparison threshold: relative to the largest magnitude, floored."""
        m = max([1.0, *magnitudes])
        return max(self.tol * m, ABS_TOL_FLOOR)

    def close(self, a, b) -> bool:
        a, b = complex(a), complex(b)
        return abs(a - b) <= self.threshold(abs(a), abs(b))


def generic_ctx(q: complex | None = None, s: complex | None = None,
                tol: float = 1e-9, scan: int = GENERIC_SCAN_BOUND) -> QContext:
    """Context for q not a root of unity.

    Give either q (s defaults to the principal square root) or s directly.
    """
    if s is None:
        if q is None:
            raise BadParam("generic_ctx needs q or s")
        s = cmath.sqrt(complex(q))
    s = complex(s)
    q = s * s
    if q == 0:
        raise BadModulus("q must be nonzero")
    if abs(q + 1) <= max(tol, ABS_TOL_FLOOR):
        raise BadModulus("q = -1 is excluded")
    power = 1 + 0j
    for n in range(1, scan + 1):
        power *= q
        if abs(power - 1) <= max(tol, ABS_TOL_FLOOR):
            raise BadModulus(
                f"q^{n} = 1 within tolerance; use root_of_unity_ctx(p={n}, k=...)")
    return QContext(s=s, kind="generic", tol=tol)


def root_of_unity_ctx(p: int, k: int = 1, tol: float = 1e-9) -> QContext:
    """Context with q = exp(2*pi*i*k/p), s = exp(pi*i*k/p); requires gcd(k,p)=1."""
    if p in (1, 2) or p < 1:
        raise BadModulus(f"p = {p} is excluded (need p >= 3)")
    if gcd(k % p if k % p else p, p) != 1:
        raise BadModulus(f"gcd(k={k}, p={p}) != 1, so p would not be minimal")
    s = cmath.exp(1j * math.pi * k / p)
    p_prime = p if p % 2 else p // 2
    return QContext(s=s, kind="root_of_unity", p=p, p_prime=p_prime, tol=tol)


def q_pow(ctx: QContext, a) -> complex:
    """q^a for a half-integer a, computed through the stored branch s."""
    a = HalfInt.of(a)
    return ctx.s ** a.twice


def q_pow_c(ctx: QContext, a) -> complex:
    """q^a = exp(a*tau) for arbitrary complex a (principal branch of tau)."""
    if isinstance(a, (HalfInt, int)):
        return q_pow(ctx, a)
    return cmath.exp(complex(a) * ctx.tau)


def _q_minus_qinv(ctx: QContext) -> complex:
    w = ctx.q - 1 / ctx.q
    if abs(w) <= ctx.threshold(abs(ctx.q)):
        raise DegenerateQ(f"q - 1/q = {w} is numerically zero (q = {ctx.q})")
    return w


def q_num(ctx: QContext, a) -> complex:
    """The q-number [a] = (q^a - q^{-a}) / (q - q^{-1})."""
    w = _q_minus_qinv(ctx)
    if isinstance(a, (HalfInt, int)):
        t = q_pow(ctx, a)
    else:
        t = q_pow_c(ctx, a)
    return (t - 1 / t) / w


def c_coeff(ctx: QContext, j) -> complex:
    """The coefficient i / (q^j - q^{-j})."""
    t = q_pow_c(ctx, j)
    d = t - 1 / t
    if abs(d) <= ctx.threshold(abs(t)):
        raise DegenerateIndex(f"q^(2*{j}) = 1 within tolerance, coefficient undefined")
    return 1j / d


def ctx_to_json(ctx: QContext) -> dict:
    out = {"s": [ctx.s.real, ctx.s.imag], "kind": ctx.kind, "tol": ctx.tol}
    if ctx.is_root_of_unity:
        out["p"] = ctx.p
        out["p_prime"] = ctx.p_prime
    return out


def ctx_from_json(data: dict) -> QContext:
    s = complex(data["s"][0], data["s"][1])
    if data["kind"] == "root_of_unity":
        p = int(data["p"])
        return QContext(s=s, kind="root_of_unity", p=p,
                        p_prime=int(data.get("p_prime") or (p if p % 2 else p // 2)),
                        tol=float(data.get("tol", 1e-9)))
    return QContext(s=s, kind="generic", tol=float(data.get("tol", 1e-9)))

