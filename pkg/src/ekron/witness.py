"""Exact reduction of gamma_K(Omega_i)/delta_K(Omega_i) - gamma_K(Omega_j)/delta_K(Omega_j).

By the closed form, the difference is the difference of two convergence sums,
and since only the finite symmetric difference of the two sets survives it is

    sum_{P in Omega_i \\ Omega_j} f/(p^f - 1) log p - sum_{Q in Omega_j \\ Omega_i} g/(q^g - 1) log q
      = log alpha,    alpha = prod p^{c_p}.

``alpha`` is a positive algebraic number (rational powers of primes). It equals
1 exactly when every c_p vanishes, because a product of rational prime powers
is 1 only when all exponents are zero (clear denominators and use unique
factorization in Z). For alpha != 1 Lindemann's theorem makes log alpha
transcendental; that theorem is assumed, not checked here.

The hypothesis check asks for both N_{Omega_i} \\ N_{Omega_j} and
N_{Omega_j} \\ N_{Omega_i} to be nonempty, where N_Omega is the set of rational
primes under Omega. Finiteness of Omega_i \\ Omega_j follows from finiteness of
the rational-prime difference because at most n prime ideals lie over each p;
at a truncation everything is finite anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

import mpmath

from .field import PrimeIdeal
from .generalized import DeltaValue, OmegaSet, log_weight
from .logform import LogLinearForm
from .residues import DEFAULT_PREC

LINDEMANN_NOTE = (
    "transcendental by Lindemann's theorem given nonzero exponent vector: "
    "alpha = prod p^c_p is algebraic, alpha != 0, and alpha != 1 because the "
    "rational exponent vector is nonzero (unique factorization in Z after "
    "clearing denominators); Lindemann's theorem itself is assumed"
)
ZERO_NOTE = "exponent vector is zero: alpha = 1 and the difference vanishes identically"
RULE_CAVEAT = "Omega given by a rule: set differences checked at the truncation bound only"


class Verdict(str, Enum):
    ZERO_DIFFERENCE = "ZeroDifference"
    TRANSCENDENTAL_DIFFERENCE = "TranscendentalDifference"


def _check_fields(omega_i: OmegaSet, omega_j: OmegaSet) -> None:
    if omega_i.field != omega_j.field:
        raise ValueError(f"Omega_i is over {omega_i.field}, Omega_j over {omega_j.field}")


def symmetric_difference(omega_i: OmegaSet, omega_j: OmegaSet, x: int) -> tuple[list[PrimeIdeal], list[PrimeIdeal]]:
    """(Omega_i(x) \\ Omega_j(x), Omega_j(x) \\ Omega_i(x)), each sorted by norm."""
    _check_fields(omega_i, omega_j)
    a, b = omega_i.truncate(x), omega_j.truncate(x)
    sa, sb = set(a), set(b)
    return [P for P in a if P not in sb], [P for P in b if P not in sa]


@dataclass(frozen=True)
class HypothesisCheck:
    ok: bool
    reasons: tuple[str, ...]
    primes_i_minus_j: tuple[int, ...]
    primes_j_minus_i: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_hypothesis(omega_i: OmegaSet, omega_j: OmegaSet, x: int) -> HypothesisCheck:
    """Both N_{Omega_i} \\ N_{Omega_j} and N_{Omega_j} \\ N_{Omega_i} nonempty at truncation x.

    Finiteness holds automatically for truncations.
    """
    _check_fields(omega_i, omega_j)
    ni, nj = omega_i.rational_primes(x), omega_j.rational_primes(x)
    dij, dji = tuple(sorted(ni - nj)), tuple(sorted(nj - ni))
    reasons = []
    if not dij:
        reasons.append("N_Omega_i \\ N_Omega_j is empty")
    if not dji:
        reasons.append("N_Omega_j \\ N_Omega_i is empty")
    if not (omega_i.is_explicit and omega_j.is_explicit):
        reasons.append(RULE_CAVEAT)
    ok = bool(dij) and bool(dji)
    return HypothesisCheck(ok, tuple(reasons), dij, dji)


def difference_form(omega_i: OmegaSet, omega_j: OmegaSet, x: int) -> LogLinearForm:
    only_i, only_j = symmetric_difference(omega_i, omega_j, x)
    form = LogLinearForm()
    for P in only_i:
        form = form + log_weight(P)
    for Q in only_j:
        form = form - log_weight(Q)
    return form


def classify(form: LogLinearForm) -> Verdict:
    return Verdict.TRANSCENDENTAL_DIFFERENCE if form else Verdict.ZERO_DIFFERENCE


@dataclass(frozen=True)
class WitnessCertificate:
    omega_i: dict
    omega_j: dict
    bound: int
    hypothesis: HypothesisCheck
    form: LogLinearForm
    verdict: Verdict
    numeric_value: mpmath.mpf
    prec: int
    only_i: tuple[str, ...] = ()
    only_j: tuple[str, ...] = ()
    note: str = dc_field(default="")

    @property
    def hypothesis_ok(self) -> bool:
        return self.hypothesis.ok

    @property
    def argument(self) -> list[tuple[int, str]]:
        """alpha = prod p^c as (p, c) pairs with c as an exact rational string."""
        return [(p, str(c)) for p, c in self.form.argument()]

    def to_json(self) -> dict:
        digits = max(15, int(self.prec * 0.30103))
        with mpmath.workprec(self.prec):
            alpha = mpmath.exp(self.numeric_value)
        return {
            "omega_i": self.omega_i,
            "omega_j": self.omega_j,
            "bound": self.bound,
            "omega_i_minus_omega_j": list(self.only_i),
            "omega_j_minus_omega_i": list(self.only_j),
            "hypothesis_ok": self.hypothesis.ok,
            "hypothesis_reasons": list(self.hypothesis.reasons),
            "form": self.form.to_json(),
            "verdict": self.verdict.value,
            "argument_description": [{"prime": p, "exponent": c} for p, c in self.argument],
            "numeric_value": {"value": mpmath.nstr(self.numeric_value, digits), "precision_bits": self.prec},
            "alpha_decimal": {"value": mpmath.nstr(alpha, digits), "precision_bits": self.prec},
            "note": self.note,
        }


def witness(omega_i: OmegaSet, omega_j: OmegaSet, x: int, prec: int = DEFAULT_PREC) -> WitnessCertificate:
    """Certificate for the difference of normalized generalized constants at truncation x."""
    hyp = check_hypothesis(omega_i, omega_j, x)
    only_i, only_j = symmetric_difference(omega_i, omega_j, x)
    form = difference_form(omega_i, omega_j, x)
    verdict = classify(form)
    with mpmath.workprec(prec):
        value = form.value(prec)
    note = LINDEMANN_NOTE if verdict is Verdict.TRANSCENDENTAL_DIFFERENCE else ZERO_NOTE
    return WitnessCertificate(
        omega_i.describe(),
        omega_j.describe(),
        x,
        hyp,
        form,
        verdict,
        value,
        prec,
        tuple(P.spec() for P in only_i),
        tuple(P.spec() for P in only_j),
        note,
    )


def numeric_crosscheck(
    cert: WitnessCertificate,
    gamma_i,
    gamma_j,
    delta_i: DeltaValue,
    delta_j: DeltaValue,
    prec: int = DEFAULT_PREC,
) -> mpmath.mpf:
    """|(gamma_i/delta_i - gamma_j/delta_j) - log alpha|."""
    with mpmath.workprec(prec):
        di = mpmath.mpf(delta_i.exact.numerator) / delta_i.exact.denominator
        dj = mpmath.mpf(delta_j.exact.numerator) / delta_j.exact.denominator
        return abs(mpmath.mpf(gamma_i) / di - mpmath.mpf(gamma_j) / dj - cert.form.value(prec))
