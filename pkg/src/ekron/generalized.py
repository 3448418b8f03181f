"""Generalized Euler-Kronecker constants gamma_K(Omega).

Two independent routes are provided. The closed form

    gamma_K(Omega) = delta_K(Omega) * (gamma_K + sum_{P in Omega} log N(P) / (N(P) - 1))

and the direct limit of

    (1/rho_K) * sum_{N(I) <= t, (I, P(Omega(t))) = 1} 1/N(I) - delta_K(Omega(t)) * log t,

extrapolated exactly like gamma_K itself. Infinite Omega are only ever seen
through their truncations Omega(x).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import prod
from typing import Callable, Iterable

import mpmath

from .extrapolate import sample_points
from .field import NumberField, PrimeIdeal, enumerate_prime_ideals, prime_ideal
from .logform import LogLinearForm
from .residues import DEFAULT_PREC, EKEstimate, Model, ResidueEstimate, extrapolate_limit, partial_constants
from .sieve import build_table, exact_harmonic_sums

SYMBOLIC_LIMIT = 64


class OmegaSpecError(ValueError):
    pass


@dataclass(frozen=True)
class OmegaSet:
    """A set of prime ideals: an explicit finite list or a rule with a name."""

    field: NumberField
    members: tuple[PrimeIdeal, ...] | None = None
    rule: Callable[[PrimeIdeal], bool] | None = dc_field(default=None, compare=False)
    name: str = ""

    def __post_init__(self):
        if (self.members is None) == (self.rule is None):
            raise OmegaSpecError("give exactly one of members or rule")
        if self.members is not None:
            if len(set(self.members)) != len(self.members):
                raise OmegaSpecError("duplicate prime ideals in Omega")
            for P in self.members:
                if P.field != self.field:
                    raise OmegaSpecError(f"{P!r} is not in {self.field}")
            object.__setattr__(self, "members", tuple(sorted(self.members, key=PrimeIdeal.sort_key)))
            if not self.name:
                object.__setattr__(self, "name", ",".join(P.spec() for P in self.members) or "empty")

    @classmethod
    def empty(cls, field: NumberField) -> OmegaSet:
        return cls(field, ())

    @classmethod
    def of(cls, field: NumberField, members: Iterable[PrimeIdeal]) -> OmegaSet:
        return cls(field, tuple(members))

    @classmethod
    def from_rule(cls, field: NumberField, name: str, rule: Callable[[PrimeIdeal], bool]) -> OmegaSet:
        return cls(field, rule=rule, name=name)

    @property
    def is_explicit(self) -> bool:
        return self.members is not None

    def truncate(self, x: int) -> tuple[PrimeIdeal, ...]:
        """Omega(x): members of norm <= x, sorted by norm."""
        if self.members is not None:
            return tuple(P for P in self.members if P.norm <= x)
        if x < 2:
            return ()
        return tuple(P for P in enumerate_prime_ideals(self.field, x) if self.rule(P))

    def rational_primes(self, x: int) -> frozenset[int]:
        """N_Omega restricted to Omega(x): the rational primes under its members."""
        return frozenset(P.p for P in self.truncate(x))

    def describe(self) -> dict:
        d = {"field": self.field.spec(), "kind": "explicit" if self.is_explicit else "rule", "name": self.name}
        if self.members is not None:
            d["members"] = [P.spec() for P in self.members]
        return d


def _split_completely(P: PrimeIdeal) -> bool:
    return P.e == 1 and P.f == 1 and _g(P) == P.field.degree


def _g(P: PrimeIdeal) -> int:
    from .field import splitting_type

    return splitting_type(P.field, P.p).g


RULES: dict[str, Callable[[PrimeIdeal], bool]] = {
    "all": lambda P: True,
    "degree-one": lambda P: P.f == 1,
    "split-only": _split_completely,
}


def omega_from_rule(field: NumberField, name: str) -> OmegaSet:
    if name not in RULES:
        raise OmegaSpecError(f"unknown Omega rule {name!r}; choose from {sorted(RULES)}")
    return OmegaSet.from_rule(field, name, RULES[name])


_IDEAL_RE = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*:\s*(\d+)\s*$")


def parse_prime_ideal(field: NumberField, text: str) -> PrimeIdeal:
    """Parse ``p:f:index``."""
    m = _IDEAL_RE.match(text)
    if m is None:
        raise OmegaSpecError(f"cannot parse prime ideal {text!r}; expected p:f:index")
    p, f, idx = map(int, m.groups())
    try:
        return prime_ideal(field, p, f, idx)
    except ValueError as exc:
        raise OmegaSpecError(str(exc)) from None


def parse_omega(field: NumberField, text: str) -> OmegaSet:
    """Parse a comma-separated list of ``p:f:index`` specs; empty text is the empty set."""
    parts = [s for s in text.split(",") if s.strip()]
    return OmegaSet.of(field, [parse_prime_ideal(field, s) for s in parts])


@dataclass(frozen=True)
class DeltaValue:
    exact: Fraction
    bound: int

    def __post_init__(self):
        if not 0 < self.exact <= 1:
            raise ValueError("delta must lie in (0, 1]")


def delta_of(primes: Iterable[PrimeIdeal]) -> Fraction:
    return prod((1 - Fraction(1, P.norm) for P in primes), start=Fraction(1))


def delta(omega: OmegaSet, x: int) -> DeltaValue:
    """Exact delta_K(Omega(x)) = prod (1 - 1/N(P))."""
    if x < 1:
        raise ValueError("x must be >= 1")
    return DeltaValue(delta_of(omega.truncate(x)), x)


@dataclass(frozen=True)
class ConvergenceSum:
    value: mpmath.mpf
    form: LogLinearForm | None  # exact form when |Omega(x)| is small
    count: int
    bound: int


def log_weight(P: PrimeIdeal) -> LogLinearForm:
    """log N(P) / (N(P) - 1) as an exact form: f/(p^f - 1) * log p."""
    return LogLinearForm({P.p: Fraction(P.f, P.norm - 1)})


def convergence_sum(omega: OmegaSet, x: int, prec: int = DEFAULT_PREC) -> ConvergenceSum:
    """sum_{P in Omega(x)} log N(P) / (N(P) - 1)."""
    primes = omega.truncate(x)
    with mpmath.workprec(prec):
        if len(primes) <= SYMBOLIC_LIMIT:
            form = LogLinearForm([])
            for P in primes:
                form = form + log_weight(P)
            return ConvergenceSum(form.value(prec), form, len(primes), x)
        val = mpmath.fsum(P.f * mpmath.log(P.p) / (P.norm - 1) for P in primes)
        return ConvergenceSum(val, None, len(primes), x)


def gamma_omega_closed(omega: OmegaSet, x: int, gamma_K: EKEstimate, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """delta(Omega(x)) * (gamma_K + sum log N(P)/(N(P) - 1))."""
    if gamma_K.field != omega.field:
        raise ValueError(f"gamma_K is for {gamma_K.field}, Omega lives in {omega.field}")
    d = delta(omega, x).exact
    with mpmath.workprec(prec):
        s = convergence_sum(omega, x, prec).value
        return mpmath.mpf(d.numerator) / d.denominator * (gamma_K.gamma_K + s)


@dataclass(frozen=True)
class DirectEstimate:
    value: mpmath.mpf
    residual: mpmath.mpf
    raw: mpmath.mpf
    samples: tuple[int, ...]
    model: Model
    bound: int


def gamma_omega_direct(
    omega: OmegaSet,
    x: int,
    rho: ResidueEstimate,
    model: Model | str = Model.ONE_TERM,
    prec: int = DEFAULT_PREC,
) -> DirectEstimate:
    """Extrapolated direct limit; Omega is re-truncated at every sample point."""
    model = Model(model)
    if rho.field != omega.field:
        raise ValueError(f"rho is for {rho.field}, Omega lives in {omega.field}")
    field = omega.field
    ts = [x] if model is Model.NONE else sample_points(x)
    # group sample points by truncation so each table is summed in one pass
    groups: dict[tuple[PrimeIdeal, ...], list[int]] = {}
    for i, t in enumerate(ts):
        groups.setdefault(omega.truncate(t), []).append(i)
    vals: list = [None] * len(ts)
    for trunc, idx in groups.items():
        d = delta_of(trunc)
        with mpmath.workprec(prec):
            w = mpmath.mpf(d.numerator) / d.denominator
        table = build_table(field, x, trunc)
        for i, v in zip(idx, partial_constants(table, [ts[i] for i in idx], rho.value, w, prec)):
            vals[i] = v
    fit = extrapolate_limit(ts, vals, field.degree, model, prec)
    return DirectEstimate(fit.coeffs[0], fit.residual, vals[-1], tuple(ts), model, x)


def coprime_harmonic_exact(field: NumberField, excluded: Iterable[PrimeIdeal], t_max: int) -> list[Fraction]:
    """Exact sum_{N(I) <= t, I coprime to excluded} 1/N(I) for t = 0..t_max."""
    return exact_harmonic_sums(build_table(field, t_max, excluded), t_max)
