#!/usr/bin/env python3
"""Direct limit against the closed form for gamma_K(Omega), over a small matrix of fields and sets."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

import mpmath

from ekron.cli import parse_int
from ekron.field import enumerate_prime_ideals, parse_field, prime_ideal
from ekron.generalized import OmegaSet, delta, gamma_omega_closed, gamma_omega_direct
from ekron.residues import euler_kronecker


@dataclass(frozen=True)
class Config:
    fields: tuple[str, ...] = ("Q", "Q(sqrt,-1)", "Q(sqrt,5)")
    rational_bound: int = 10**6
    bound: int = 10**7
    models: tuple[str, ...] = field(default=("one-term", "two-term"))


def omega_sets(K):
    ps = list(enumerate_prime_ideals(K, 200))
    out = {"empty": [], "smallest": ps[:1], "two smallest": ps[:2]}
    split = next((P for P in ps if K.degree == 2 and P.f == 1 and P.index == 0 and P.p % 2 and K.discriminant % P.p), None)
    if split is not None:
        out["split pair"] = [split, prime_ideal(K, split.p, 1, 1)]
    return {k: OmegaSet.of(K, v) for k, v in out.items()}


def run(cfg: Config) -> None:
    print("field,omega,delta,model,closed,direct,abs_diff,fit_residual")
    for spec in cfg.fields:
        K = parse_field(spec)
        x = cfg.rational_bound if K.degree == 1 else cfg.bound
        for model in cfg.models:
            ek = euler_kronecker(K, x, model)
            for name, om in omega_sets(K).items():
                c = gamma_omega_closed(om, x, ek)
                d = gamma_omega_direct(om, x, ek.rho, model)
                print(
                    f"{K.spec()},{name},{delta(om, x).exact},{model},{mpmath.nstr(c, 10)},"
                    f"{mpmath.nstr(d.value, 10)},{mpmath.nstr(abs(c - d.value), 3)},{mpmath.nstr(d.residual, 3)}"
                )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=parse_int, default=Config.bound, help="bound for non-rational fields")
    ap.add_argument("--rational-bound", type=parse_int, default=Config.rational_bound)
    ap.add_argument("--fields", default=";".join(Config.fields), help='";"-separated field specs')
    a = ap.parse_args()
    run(Config(tuple(s.strip() for s in a.fields.split(";")), a.rational_bound, a.bound))


if __name__ == "__main__":
    main()
