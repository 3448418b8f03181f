"""Factored integral ideals: norms, Mobius, von Mangoldt, gcd and divisors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator

from .field import NumberField, PrimeIdeal, enumerate_prime_ideals
from .logform import ZERO, LogLinearForm

DEFAULT_DIVISOR_CAP = 2**20


class MixedFieldError(ValueError):
    pass


class DivisorCapError(ValueError):
    pass


class IdentityViolation(AssertionError):
    """Both sides of an exact identity disagree; always a library bug."""


@dataclass(frozen=True)
class FactoredIdeal:
    """Integral ideal as a product of prime-ideal powers; no factors is O_K."""

    field: NumberField
    factors: tuple[tuple[PrimeIdeal, int], ...] = ()

    def __post_init__(self):
        merged: dict[PrimeIdeal, int] = {}
        for P, k in self.factors:
            if P.field != self.field:
                raise MixedFieldError(f"{P!r} does not lie in {self.field}")
            if k < 0:
                raise ValueError("exponents must be nonnegative")
            merged[P] = merged.get(P, 0) + k
        canon = tuple(sorted(((P, k) for P, k in merged.items() if k), key=lambda t: t[0].sort_key()))
        object.__setattr__(self, "factors", canon)

    @classmethod
    def _canonical(cls, field: NumberField, factors: tuple) -> FactoredIdeal:
        # factors already sorted, exponents >= 1, one field: skip validation
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "factors", factors)
        return obj

    @classmethod
    def unit(cls, field: NumberField) -> FactoredIdeal:
        return cls(field)

    @classmethod
    def of(cls, *parts: PrimeIdeal | tuple[PrimeIdeal, int]) -> FactoredIdeal:
        pairs = [(x, 1) if isinstance(x, PrimeIdeal) else x for x in parts]
        if not pairs:
            raise ValueError("use FactoredIdeal.unit(field) for the unit ideal")
        return cls(pairs[0][0].field, tuple(pairs))

    def valuation(self, P: PrimeIdeal) -> int:
        for Q, k in self.factors:
            if Q == P:
                return k
        return 0

    @property
    def support(self) -> tuple[PrimeIdeal, ...]:
        return tuple(P for P, _ in self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    @property
    def norm(self) -> int:
        return prod((P.p ** (P.f * k) for P, k in self.factors), start=1)

    def log_norm(self) -> LogLinearForm:
        return LogLinearForm([(P.p, P.f * k) for P, k in self.factors])

    def _check(self, other: FactoredIdeal) -> None:
        if other.field != self.field:
            raise MixedFieldError(f"{self.field} vs {other.field}")

    def __mul__(self, other: FactoredIdeal) -> FactoredIdeal:
        self._check(other)
        return FactoredIdeal(self.field, self.factors + other.factors)

    def divides(self, other: FactoredIdeal) -> bool:
        self._check(other)
        return all(other.valuation(P) >= k for P, k in self.factors)

    def quotient(self, J: FactoredIdeal) -> FactoredIdeal:
        """``self * J^-1``, defined only when ``J`` divides ``self``."""
        if not J.divides(self):
            raise ValueError("quotient requires J | I")
        rest = tuple((P, k - J.valuation(P)) for P, k in self.factors)
        return FactoredIdeal._canonical(self.field, tuple(t for t in rest if t[1]))

    def __str__(self) -> str:
        if not self.factors:
            return "(1)"
        return "*".join(f"[{P.spec()}]" + (f"^{k}" if k > 1 else "") for P, k in self.factors)


def mobius(a: FactoredIdeal) -> int:
    if any(k >= 2 for _, k in a.factors):
        return 0
    return -1 if len(a.factors) % 2 else 1


def mangoldt(a: FactoredIdeal) -> LogLinearForm:
    """``log N(P)`` if ``a`` is a power of one prime ideal ``P``, else 0 (symbolic)."""
    if len(a.factors) != 1:
        return ZERO
    P, _ = a.factors[0]
    return LogLinearForm({P.p: P.f})


def gcd(a: FactoredIdeal, b: FactoredIdeal) -> FactoredIdeal:
    a._check(b)
    return FactoredIdeal(a.field, tuple((P, min(k, b.valuation(P))) for P, k in a.factors))


def divisors(a: FactoredIdeal, cap: int = DEFAULT_DIVISOR_CAP) -> Iterator[FactoredIdeal]:
    count = prod((k + 1 for _, k in a.factors), start=1)
    if count > cap:
        raise DivisorCapError(f"{count} divisors exceed the cap of {cap}")
    primes = [P for P, _ in a.factors]
    for exps in itertools.product(*(range(k + 1) for _, k in a.factors)):
        yield FactoredIdeal._canonical(a.field, tuple((P, k) for P, k in zip(primes, exps) if k))


def check_mobius_identity(a: FactoredIdeal, cap: int = DEFAULT_DIVISOR_CAP) -> tuple[Fraction, Fraction]:
    """Both sides of sum_{J|I} mu(J)/N(J) = prod_{P|I} (1 - 1/N(P)), exactly."""
    lhs = Fraction(0)
    for J in divisors(a, cap):
        mu = mobius(J)
        if mu:
            lhs += Fraction(mu, J.norm)
    rhs = prod((1 - Fraction(1, P.norm) for P in a.support), start=Fraction(1))
    if lhs != rhs:
        raise IdentityViolation(f"Mobius identity fails for {a}: {lhs} != {rhs}")
    return lhs, rhs


def check_mangoldt_identity(a: FactoredIdeal, cap: int = DEFAULT_DIVISOR_CAP) -> tuple[LogLinearForm, LogLinearForm]:
    """Both sides of mu(I) log N(I) = -sum_{J|I} Lambda(J) mu(I J^-1), as exact log forms."""
    lhs = mobius(a) * a.log_norm()
    rhs = ZERO
    for J in divisors(a, cap):
        lam = mangoldt(J)
        if lam:
            rhs = rhs - mobius(a.quotient(J)) * lam
    if lhs != rhs:
        raise IdentityViolation(f"von Mangoldt identity fails for {a}: {lhs} != {rhs}")
    return lhs, rhs


def ideals_with_support(primes: Iterable[PrimeIdeal], max_exponent: int) -> Iterator[FactoredIdeal]:
    """Every ideal whose support is exactly ``primes``, exponents 1..max_exponent."""
    primes = list(primes)
    field = primes[0].field
    for exps in itertools.product(range(1, max_exponent + 1), repeat=len(primes)):
        yield FactoredIdeal(field, tuple(zip(primes, exps)))


def identity_test_family(
    field: NumberField, norm_bound: int = 1000, max_factors: int = 4, max_exponent: int = 3, universe: int = 8
) -> Iterator[FactoredIdeal]:
    """Test ideals for the exact identity checks.

    Every prime power P^k with N(P) <= norm_bound and k <= max_exponent, the
    unit ideal, and every ideal whose support is 2..max_factors primes drawn
    from a spread of ``universe`` prime ideals (the smallest and the largest
    norms up to the bound).
    """
    primes = list(enumerate_prime_ideals(field, norm_bound))
    for P in primes:
        for k in range(1, max_exponent + 1):
            yield FactoredIdeal(field, ((P, k),))
    half = universe // 2
    spread = primes[: universe - half] + primes[-half:] if len(primes) > universe else primes
    spread = list(dict.fromkeys(spread))
    yield FactoredIdeal.unit(field)
    for r in range(2, max_factors + 1):
        for sup in itertools.combinations(spread, r):
            yield from ideals_with_support(sup, max_exponent)
