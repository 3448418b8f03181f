#!/usr/bin/env python3
"""delta_K(all primes of norm <= x) * rho_K * log x against e^{-gamma}, on a decade schedule."""

import argparse

import mpmath

from ekron.cli import parse_int
from ekron.field import parse_field
from ekron.mertens import rosen_table
from ekron.residues import residue


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", default="Q;Q(sqrt,-1);Q(sqrt,5);Q(sqrt,-3);Q(zeta,5)")
    ap.add_argument("--max-exp", type=int, default=7)
    ap.add_argument("--fit-bound", type=parse_int, default=10**7, help="sieve bound for fitted residues")
    a = ap.parse_args()
    xs = [10**k for k in range(2, a.max_exp + 1)]
    print("field,x,prime_ideals,exact,normalized,relative_error")
    for spec in a.fields.split(";"):
        K = parse_field(spec)
        rho = residue(K, a.fit_bound)
        for r in rosen_table(K, xs, rho):
            print(f"{K.spec()},{r.x},{r.ideal_count},{r.exact},{mpmath.nstr(r.normalized, 10)},{mpmath.nstr(r.relative_error, 3)}")


if __name__ == "__main__":
    main()
