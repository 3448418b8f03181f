"""Mertens and Rosen products over prime ideals.

delta_K over all prime ideals of norm <= x behaves like e^{-gamma} / (rho_K log x);
the rows here tabulate delta * rho_K * log x against e^{-gamma}.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import gmpy2
import mpmath
import numpy as np

from .field import NumberField, prime_ideal_norms
from .residues import DEFAULT_PREC, ResidueEstimate, euler_mascheroni

log = logging.getLogger(__name__)

# above this many prime ideals the exact rational product is abandoned
EXACT_THRESHOLD = 10**5


@dataclass(frozen=True)
class AsymptoticRow:
    x: int
    ideal_count: int
    delta: gmpy2.mpq | None  # exact while ideal_count <= threshold, else None
    delta_value: mpmath.mpf
    normalized: mpmath.mpf
    target: mpmath.mpf
    relative_error: mpmath.mpf

    @property
    def exact(self) -> bool:
        return self.delta is not None


def _product(values: Sequence[int]) -> gmpy2.mpz:
    # balanced product tree
    vals = [gmpy2.mpz(v) for v in values]
    if not vals:
        return gmpy2.mpz(1)
    while len(vals) > 1:
        nxt = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def rosen_table(
    field: NumberField,
    xs: Sequence[int],
    rho: ResidueEstimate,
    prec: int = DEFAULT_PREC,
    exact_threshold: int = EXACT_THRESHOLD,
) -> list[AsymptoticRow]:
    xs = [int(v) for v in xs]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("xs must be strictly ascending")
    if xs and xs[0] < 2:
        raise ValueError("xs must be >= 2")
    if rho.field != field:
        raise ValueError("residue belongs to a different field")
    norms, mult = prime_ideal_norms(field, xs[-1]) if xs else (np.zeros(0, np.int64), np.zeros(0, np.int64))
    rows = []
    with mpmath.workprec(prec):
        target = mpmath.exp(-euler_mascheroni(prec))
        delta_q = gmpy2.mpq(1)
        log_delta = 0.0  # float path, kept in step with the exact one
        exact = True
        count = 0
        lo = 0
        for x in xs:
            hi = int(np.searchsorted(norms, x, side="right"))
            qs, gs = norms[lo:hi], mult[lo:hi]
            count += int(gs.sum())
            log_delta += math.fsum((gs * np.log1p(-1.0 / qs.astype(np.float64))).tolist())
            if exact and count > exact_threshold:
                exact = False
                log.info("rosen_table: %d prime ideals exceed exact threshold %d at x=%d; using floating product", count, exact_threshold, x)
            if exact:
                num = _product([int(q) - 1 for q, g in zip(qs.tolist(), gs.tolist()) for _ in range(g)])
                den = _product([int(q) for q, g in zip(qs.tolist(), gs.tolist()) for _ in range(g)])
                delta_q *= gmpy2.mpq(num, den)
                dval = mpmath.mpf(int(delta_q.numerator)) / int(delta_q.denominator)
            else:
                dval = mpmath.exp(mpmath.mpf(log_delta))
            lo = hi
            normalized = dval * rho.value * mpmath.log(x)
            rows.append(
                AsymptoticRow(
                    x,
                    count,
                    delta_q if exact else None,
                    dval,
                    normalized,
                    target,
                    abs(normalized - target) / target,
                )
            )
    return rows
