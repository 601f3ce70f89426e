"""Sweep the cyclic family's lambda along half-integer powers of q and
report spectrum multiplicities and splitting behavior.

Usage:
    python scripts/degenerate_lambda_sweep.py [--p 8] [--a-re 0.8 --a-im 0.3]

At even p the spectrum pairs up exactly at the half-odd powers; on the
condition variety a * prod(ab - zeta [j]^2) = b the family splits into
halves, which the commutant dimension confirms.
"""

import argparse

import numpy as np

from qso3.qscalar import HalfInt, q_pow, root_of_unity_ctx
from qso3.structure import commutant, i1_spectrum
from qso3 import uqso3


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=8)
    ap.add_argument("--a-re", type=float, default=0.8)
    ap.add_argument("--a-im", type=float, default=0.3)
    args = ap.parse_args()
    ctx = root_of_unity_ctx(args.p, 1)
    a = complex(args.a_re, args.a_im)

    print(f"p = {args.p}; multiplicity patterns of the diagonal generator")
    for twice in range(0, 2 * args.p):
        lam = q_pow(ctx, HalfInt(twice))
        if uqso3.excluded_lambda(ctx, lam):
            print(f"  lambda = q^{HalfInt(twice)}: excluded (+-q^k)")
            continue
        rep = uqso3.r_ab_lambda(ctx, a, 1.1, lam)
        mults = sorted(m for _, m in i1_spectrum(rep))
        print(f"  lambda = q^{HalfInt(twice)}: dim {rep.dim}, multiplicities {mults}")

    print("\nsplitting condition roots b for fixed a "
          "(degenerate lambda, full cyclic family):")
    for b in uqso3.solve_split_b(ctx, a):
        comps = uqso3.r_ab_degenerate(ctx, a, b, "plus")
        dims = [c.dim for c in comps]
        parent_cdim = commutant(uqso3.r_ab_lambda(
            ctx, a, b, uqso3.degenerate_lambdas(ctx)[0]))[0]
        print(f"  b = {b:.6f}: components {dims}, parent commutant {parent_cdim}")

    print("\nwrap-free point (a, b) = (0, 0):")
    comps = uqso3.r_ab_degenerate(ctx, 0, 0, "plus")
    print(f"  components {[c.dim for c in comps]}")


if __name__ == "__main__":
    main()
