#!/usr/bin/env python3
"""gamma_K estimates under doubling of the sieve bound, for each extrapolation model.

    python3 scripts/convergence.py --field "Q(sqrt,-1)" --max-bound 10^7
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import mpmath

from ekron.cli import parse_int
from ekron.field import parse_field
from ekron.residues import Model, envelope_slope, euler_kronecker, residue
from ekron.sieve import build_table


@dataclass(frozen=True)
class Config:
    field: str = "Q(sqrt,-1)"
    max_bound: int = 10**7
    steps: int = 5
    prec: int = 128


def run(cfg: Config) -> None:
    K = parse_field(cfg.field)
    table = build_table(K, cfg.max_bound)
    rho = residue(K, cfg.max_bound, cfg.prec, table)
    print(f"# {K.spec()}  degree {K.degree}  rho = {mpmath.nstr(rho.value, 15)} ({rho.method.value})")
    print("x,model,gamma_K,residual,raw_S")
    for k in range(cfg.steps - 1, -1, -1):
        x = cfg.max_bound >> k
        for model in Model:
            e = euler_kronecker(K, x, model, rho=rho, table=table, prec=cfg.prec)
            print(f"{x},{model.value},{mpmath.nstr(e.gamma_K, 12)},{mpmath.nstr(e.residual, 3)},{mpmath.nstr(e.raw, 12)}")
    best = euler_kronecker(K, cfg.max_bound, rho=rho, table=table, prec=cfg.prec)
    slope = envelope_slope(K, table, rho.value, best.gamma_K)
    print(f"# envelope slope of |S(t) - gamma| = {slope:.3f}  (expected about {-1 / K.degree:.3f})")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default=Config.field)
    ap.add_argument("--max-bound", type=parse_int, default=Config.max_bound)
    ap.add_argument("--steps", type=int, default=Config.steps)
    ap.add_argument("--precision", type=int, default=Config.prec)
    a = ap.parse_args()
    t0 = time.perf_counter()
    run(Config(a.field, a.max_bound, a.steps, a.precision))
    print(f"# {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
