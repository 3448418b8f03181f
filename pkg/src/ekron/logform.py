"""Exact rational linear combinations of logarithms of rational primes."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import mpmath

from .primes import factorint, is_prime

_is_prime = lru_cache(maxsize=4096)(is_prime)


class LogLinearForm:
    """``sum c_p * log p`` with exact rational coefficients, keyed by prime ``p``.

    Canonical: zero coefficients are dropped, so the zero form is the empty map.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for p, c in items:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"log-form key {p} is not prime")
            acc[p] = acc.get(p, Fraction(0)) + Fraction(c)
        self._terms = {p: acc[p] for p in sorted(acc) if acc[p] != 0}

    @classmethod
    def log_of(cls, n: int) -> LogLinearForm:
        """``log n`` for a positive integer ``n``, split over its prime factors."""
        if n < 1:
            raise ValueError("log_of needs a positive integer")
        return cls(factorint(n))

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LogLinearForm):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == LogLinearForm(other)
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: LogLinearForm) -> LogLinearForm:
        return LogLinearForm(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> LogLinearForm:
        return LogLinearForm({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: LogLinearForm) -> LogLinearForm:
        return self + (-other)

    def __mul__(self, k: Fraction | int) -> LogLinearForm:
        k = Fraction(k)
        return LogLinearForm({p: k * c for p, c in self._terms.items()})

    __rmul__ = __mul__

    def value(self, prec: int = 128) -> mpmath.mpf:
        with mpmath.workprec(prec):
            return mpmath.fsum(
                mpmath.mpf(c.numerator) / c.denominator * mpmath.log(p) for p, c in self._terms.items()
            )

    def argument(self) -> list[tuple[int, Fraction]]:
        """Factored ``alpha`` with ``log alpha`` equal to this form."""
        return list(self._terms.items())

    def to_json(self) -> dict[str, str]:
        return {str(p): str(c) for p, c in self._terms.items()}

    def __repr__(self) -> str:
        if not self._terms:
            return "LogLinearForm(0)"
        body = " + ".join(f"({c})*log({p})" for p, c in self._terms.items())
        return f"LogLinearForm({body})"


ZERO = LogLinearForm()
