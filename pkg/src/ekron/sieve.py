"""Dense sieve for a_m, the number of integral ideals of norm m.

The table is the Dirichlet product of the Euler factors
``1 + u_q + u_{q^2} + ...`` over prime ideals of norm ``q``, applied in place
to a vector that starts as the unit ``[1, 0, 0, ...]``. Prime ideals listed
in ``excluded`` are skipped, which yields counts of ideals coprime to them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np

from .field import NumberField, PrimeIdeal, prime_ideal_norms


class CountOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class IdealCountTable:
    field: NumberField
    bound: int
    counts: np.ndarray = dc_field(repr=False)  # counts[m] = a_m, counts[0] = 0
    excluded: frozenset[PrimeIdeal] = frozenset()
    _cumulative: list = dc_field(default_factory=list, repr=False, compare=False)

    def a(self, m: int) -> int:
        return int(self.counts[m])

    @property
    def cumulative(self) -> np.ndarray:
        """A(t) for t = 0..bound."""
        if not self._cumulative:
            self._cumulative.append(np.cumsum(self.counts))
        return self._cumulative[0]

    def A(self, t: int) -> int:
        return int(self.cumulative[min(int(t), self.bound)])


def _apply_factor(a: np.ndarray, x: int, q: int) -> None:
    """Multiply the series by 1/(1 - u_q) = (1 + u_q)(1 + u_q^2)(1 + u_q^4)..."""
    Q = q
    while Q <= x:
        tgt = a[Q::Q]
        tgt += a[1 : x // Q + 1]  # numpy buffers the overlapping read
        if tgt.size and tgt.min() < 0:
            raise CountOverflowError(f"ideal count overflowed int64 while sieving norm {q}")
        Q *= Q


def build_table(field: NumberField, x: int, excluded: Iterable[PrimeIdeal] = ()) -> IdealCountTable:
    """Exact a_m for m <= x, omitting the Euler factors of ``excluded``."""
    if x < 1:
        raise ValueError("bound must be >= 1")
    excluded = frozenset(P for P in excluded if P.norm <= x)
    for P in excluded:
        if P.field != field:
            raise ValueError(f"excluded ideal {P!r} is not in {field}")
    drop: dict[int, int] = {}
    for P in excluded:
        drop[P.norm] = drop.get(P.norm, 0) + 1

    a = np.zeros(x + 1, dtype=np.int64)
    a[1] = 1
    if x < 2:
        return IdealCountTable(field, x, a, excluded)
    norms, mult = prime_ideal_norms(field, x)
    if drop:
        mult = mult.copy()
        for i, q in enumerate(norms.tolist()):
            if q in drop:
                mult[i] -= drop[q]
    root = math.isqrt(x)
    split = int(np.searchsorted(norms, root, side="right"))

    for q, g in zip(norms[:split].tolist(), mult[:split].tolist()):
        for _ in range(g):
            _apply_factor(a, x, q)

    # above sqrt(x) only the linear term of each Euler factor survives, and
    # a[k] for k <= x/q is already final, so all large norms go at once
    big, bigg = norms[split:], mult[split:]
    keep = bigg > 0
    big, bigg = big[keep], bigg[keep]
    for k in range(1, x // (root + 1) + 1):
        if a[k] == 0:
            continue
        n = int(np.searchsorted(big, x // k, side="right"))
        if n == 0:
            break
        idx = big[:n] * k
        a[idx] += bigg[:n] * a[k]
        if a[idx].min() < 0:
            raise CountOverflowError("ideal count overflowed int64")
    return IdealCountTable(field, x, a, excluded)


def partial_zeta(table: IdealCountTable, s, prec: int = 128) -> mpmath.mpf:
    """Truncated Dedekind zeta sum_{m <= x} a_m / m^s."""
    with mpmath.workprec(prec):
        s = mpmath.mpf(s)
        if s <= 1:
            raise ValueError("partial_zeta needs s > 1")
        ms = np.flatnonzero(table.counts)
        return mpmath.fsum(int(table.counts[m]) * mpmath.power(int(m), -s) for m in ms)


def _terms(table: IdealCountTable) -> np.ndarray:
    m = np.arange(table.bound + 1, dtype=np.float64)
    m[0] = 1.0
    return table.counts.astype(np.float64) / m


def harmonic_sums(table: IdealCountTable, ts: Iterable[int], prec: int = 128) -> list[mpmath.mpf]:
    """sum_{m <= t} a_m / m for each t, summed in ascending m without cancellation loss.

    Each double-precision term a_m/m is accumulated with ``math.fsum``
    (exactly rounded) segment by segment, and the segments are combined at
    ``prec`` bits.
    """
    ts = [int(t) for t in ts]
    for t in ts:
        if not 0 <= t <= table.bound:
            raise ValueError(f"t={t} outside table bound {table.bound}")
    terms = _terms(table)
    order = sorted(set(ts))
    out: dict[int, mpmath.mpf] = {}
    with mpmath.workprec(prec):
        acc = mpmath.mpf(0)
        lo = 1
        for t in order:
            if t >= lo:
                acc += mpmath.mpf(math.fsum(terms[lo : t + 1].tolist()))
                lo = t + 1
            out[t] = +acc
    return [out[t] for t in ts]


def harmonic_ideal_sum(table: IdealCountTable, t: int, prec: int = 128) -> mpmath.mpf:
    return harmonic_sums(table, [t], prec)[0]


def scaled_harmonic_sums(table: IdealCountTable, t_max: int | None = None) -> tuple[int, list[int]]:
    """(L, [L * sum_{m <= t} a_m / m for t = 0..t_max]) with L = lcm(1..t_max); all integers."""
    t_max = table.bound if t_max is None else t_max
    L = math.lcm(*range(1, t_max + 1)) if t_max else 1
    out = [0]
    acc = 0
    for m in range(1, t_max + 1):
        acc += int(table.counts[m]) * (L // m)
        out.append(acc)
    return L, out


def exact_harmonic_sums(table: IdealCountTable, t_max: int | None = None) -> list[Fraction]:
    """Exact rationals sum_{m <= t} a_m / m for t = 0..t_max."""
    L, nums = scaled_harmonic_sums(table, t_max)
    return [Fraction(n, L) for n in nums]
