"""Supported number fields, splitting laws and prime ideal enumeration.

Only fields with closed-form splitting laws are modelled: the rationals,
quadratic fields Q(sqrt d) and cyclotomic fields Q(zeta_m). Conjugate prime
ideals above the same rational prime are told apart by an abstract index;
norms and splitting data are all any downstream computation needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Iterator

import numpy as np

from .primes import euler_phi, is_prime, is_squarefree, kronecker, multiplicative_order, primes_up_to

# norms must stay inside signed 64-bit so the dense sieve can index them
MAX_NORM = 2**63 - 1


class FieldError(ValueError):
    """Invalid field parameters or an unparsable field specification."""


class NormOverflowError(OverflowError):
    pass


class FieldKind(str, Enum):
    RATIONAL = "rational"
    QUADRATIC = "quadratic"
    CYCLOTOMIC = "cyclotomic"


@dataclass(frozen=True)
class NumberField:
    kind: FieldKind
    param: int = 0  # d for quadratic, m for cyclotomic
    degree: int = dc_field(init=False, compare=False)
    discriminant: int = dc_field(init=False, compare=False)

    def __post_init__(self):
        if self.kind is FieldKind.RATIONAL:
            deg, disc = 1, 1
        elif self.kind is FieldKind.QUADRATIC:
            d = self.param
            if d in (0, 1) or not is_squarefree(d):
                raise FieldError(f"d={d} must be a squarefree integer other than 0 and 1")
            deg, disc = 2, (d if d % 4 == 1 else 4 * d)
        elif self.kind is FieldKind.CYCLOTOMIC:
            m = self.param
            if m < 3 or m % 4 == 2:
                raise FieldError(f"m={m} must be >= 3 and not 2 mod 4")
            deg = euler_phi(m)
            disc = _cyclotomic_discriminant(m)
        else:  # pragma: no cover
            raise FieldError(f"unknown field kind {self.kind!r}")
        object.__setattr__(self, "degree", deg)
        object.__setattr__(self, "discriminant", disc)

    @classmethod
    def rational(cls) -> NumberField:
        return cls(FieldKind.RATIONAL)

    @classmethod
    def quadratic(cls, d: int) -> NumberField:
        return cls(FieldKind.QUADRATIC, d)

    @classmethod
    def cyclotomic(cls, m: int) -> NumberField:
        return cls(FieldKind.CYCLOTOMIC, m)

    def spec(self) -> str:
        """Canonical CLI spelling, inverse of :func:`parse_field`."""
        if self.kind is FieldKind.RATIONAL:
            return "Q"
        tag = "sqrt" if self.kind is FieldKind.QUADRATIC else "zeta"
        return f"Q({tag},{self.param})"

    def __str__(self) -> str:
        return self.spec()


def _cyclotomic_discriminant(m: int) -> int:
    from .primes import factorint

    n = euler_phi(m)
    sign = -1 if (n // 2) % 2 else 1
    num = m**n
    den = 1
    for p in factorint(m):
        den *= p ** (n // (p - 1))
    return sign * (num // den)


_FIELD_RE = re.compile(r"\s*Q\s*(?:\(\s*(sqrt|zeta)\s*,\s*([+-]?\d+)\s*\))?\s*$")


def parse_field(text: str) -> NumberField:
    """Parse ``Q``, ``Q(sqrt,d)`` or ``Q(zeta,m)``."""
    m = _FIELD_RE.match(text)
    if m is None:
        pos = _first_bad_position(text)
        raise FieldError(f"cannot parse field spec {text!r} at position {pos}")
    tag, num = m.groups()
    if tag is None:
        return NumberField.rational()
    try:
        if tag == "sqrt":
            return NumberField.quadratic(int(num))
        return NumberField.cyclotomic(int(num))
    except FieldError as exc:
        raise FieldError(f"{exc} (field spec {text!r}, position {m.start(2)})") from None


def _first_bad_position(text: str) -> int:
    # longest prefix that could still be completed to a valid spec
    pattern = "Q(sqrt,"
    alt = "Q(zeta,"
    s = text.replace(" ", "")
    i = 0
    while i < len(s) and i < len(pattern) and (s[i] == pattern[i] or s[i] == alt[i]):
        i += 1
    if i == len(pattern):
        j = i + (1 if i < len(s) and s[i] in "+-" else 0)
        while j < len(s) and s[j].isdigit():
            j += 1
        i = j
    return i


@dataclass(frozen=True)
class SplittingType:
    e: int
    f: int
    g: int


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal of O_K above the rational prime ``p``."""

    p: int
    f: int
    e: int
    index: int
    field: NumberField

    @property
    def norm(self) -> int:
        n = self.p**self.f
        if n > MAX_NORM:
            raise NormOverflowError(f"norm {self.p}^{self.f} exceeds 64-bit range")
        return n

    def sort_key(self) -> tuple[int, int, int]:
        return (self.p**self.f, self.p, self.index)

    def spec(self) -> str:
        return f"{self.p}:{self.f}:{self.index}"

    def __repr__(self) -> str:
        return f"PrimeIdeal({self.spec()} in {self.field})"


def splitting_type(field: NumberField, p: int) -> SplittingType:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if field.kind is FieldKind.RATIONAL:
        return SplittingType(1, 1, 1)
    if field.kind is FieldKind.QUADRATIC:
        k = kronecker(field.discriminant, p)
        if k == 0:
            return SplittingType(2, 1, 1)
        return SplittingType(1, 1, 2) if k == 1 else SplittingType(1, 2, 1)
    m = field.param
    a = 0
    mm = m
    while mm % p == 0:
        mm //= p
        a += 1
    e = euler_phi(p**a)
    f = multiplicative_order(p % mm, mm) if mm > 1 else 1
    return SplittingType(e, f, field.degree // (e * f))


def prime_ideal(field: NumberField, p: int, f: int | None = None, index: int = 0) -> PrimeIdeal:
    """The ``index``-th prime ideal above ``p``; ``f`` is checked if given."""
    st = splitting_type(field, p)
    if f is not None and f != st.f:
        raise ValueError(f"prime ideals above {p} in {field} have residue degree {st.f}, not {f}")
    if not 0 <= index < st.g:
        raise ValueError(f"index {index} out of range: {st.g} prime(s) above {p} in {field}")
    return PrimeIdeal(p, st.f, st.e, index, field)


def _norm_data(field: NumberField, norm_bound: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized splitting data (p, e, f, g) for all p with some norm p^f <= bound."""
    ps = primes_up_to(norm_bound)
    if field.kind is FieldKind.RATIONAL:
        one = np.ones_like(ps)
        return ps, one, one, one
    if field.kind is FieldKind.QUADRATIC:
        D = field.discriminant
        # (D/.) is a character mod |D| for fundamental D
        table = np.array([kronecker(D, r) for r in range(abs(D))], dtype=np.int64)
        chi = table[ps % abs(D)]
        for i, p in enumerate(ps[: np.searchsorted(ps, abs(D), side="right")]):
            chi[i] = kronecker(D, int(p))
        e = np.where(chi == 0, 2, 1)
        f = np.where(chi == -1, 2, 1)
        g = np.where(chi == 1, 2, 1)
        return ps, e, f, g
    m = field.param
    n = field.degree
    # residue degree depends only on p mod m for p not dividing m
    f_table = np.zeros(m, dtype=np.int64)
    for r in range(m):
        if np.gcd(r, m) == 1:
            f_table[r] = multiplicative_order(r, m)
    f = f_table[ps % m]
    e = np.ones_like(ps)
    for i in np.flatnonzero(m % ps == 0):
        st = splitting_type(field, int(ps[i]))
        e[i], f[i] = st.e, st.f
    g = n // (e * f)
    return ps, e, f, g


def prime_ideal_norms(field: NumberField, norm_bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct prime-ideal norms ``q <= norm_bound`` and how many ideals have each.

    Returns ``(norms, multiplicity)`` sorted by norm. Used by the sieve, which
    never needs individual ideal objects.
    """
    ps, _e, f, g = _norm_data(field, norm_bound)
    logb = np.log(float(norm_bound))
    keep = f * np.log(ps.astype(float)) <= logb + 1e-9
    ps, f, g = ps[keep], f[keep], g[keep]
    norms = ps**f
    ok = norms <= norm_bound
    norms, g = norms[ok], g[ok]
    order = np.argsort(norms, kind="stable")
    return norms[order], g[order]


def enumerate_prime_ideals(field: NumberField, norm_bound: int) -> Iterator[PrimeIdeal]:
    """Every prime ideal of norm <= ``norm_bound``, sorted by (norm, p, index)."""
    if norm_bound < 2:
        raise ValueError("norm_bound must be >= 2")
    if norm_bound > MAX_NORM:
        raise NormOverflowError("norm_bound exceeds 64-bit range")
    ps, e, f, g = _norm_data(field, norm_bound)
    rows = []
    for p, ee, ff, gg in zip(ps.tolist(), e.tolist(), f.tolist(), g.tolist()):
        q = p**ff
        if q <= norm_bound:
            rows.append((q, p, ee, ff, gg))
    rows.sort()
    for q, p, ee, ff, gg in rows:
        for i in range(gg):
            yield PrimeIdeal(p, ff, ee, i, field)
