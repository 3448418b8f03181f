"""Residue rho_K of the Dedekind zeta function and the Euler-Kronecker constant.

gamma_K is obtained as the limit of

    S(t) = (1/rho_K) * sum_{N(a) <= t} 1/N(a) - log t,

evaluated on a geometric schedule of t and extrapolated with the correction
``t^{-1/n}`` dictated by the ideal-count error term A(t) = rho t + O(t^{1-1/n}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath
import numpy as np

from .extrapolate import Fit, FitError, fit_powers, sample_points, student_t_quantile
from .field import FieldKind, NumberField
from .primes import kronecker
from .sieve import IdealCountTable, build_table, harmonic_sums

DEFAULT_PREC = 128


class UnsupportedExactResidue(ValueError):
    pass


class ResidueMethod(str, Enum):
    EXACT_RATIONAL = "exact_rational"
    EXACT_L_VALUE = "exact_L_value"
    FIT = "fit"


@dataclass(frozen=True)
class ResidueEstimate:
    field: NumberField
    value: mpmath.mpf
    method: ResidueMethod
    uncertainty: mpmath.mpf
    bound: int | None = None
    residual: mpmath.mpf | None = None

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError(f"residue must be positive, got {self.value}")


class Model(str, Enum):
    NONE = "none"
    ONE_TERM = "one-term"
    TWO_TERM = "two-term"

    def exponents(self, degree: int) -> list:
        if self is Model.NONE:
            return [0]
        if self is Model.ONE_TERM:
            return [0, Fraction(-1, degree)]
        return [0, Fraction(-1, degree), Fraction(-2, degree)]


def default_model(field: NumberField) -> Model:
    return Model.ONE_TERM


@dataclass(frozen=True)
class EKEstimate:
    field: NumberField
    gamma_K: mpmath.mpf
    rho: ResidueEstimate
    bound_used: int
    model: Model
    residual: mpmath.mpf
    raw: mpmath.mpf  # S(x) without extrapolation
    samples: tuple[int, ...] = ()
    prec: int = DEFAULT_PREC

    @property
    def c_K(self) -> mpmath.mpf:
        """Constant term of the Laurent expansion of zeta_K at s = 1."""
        with mpmath.workprec(self.prec):
            return self.gamma_K * self.rho.value


def euler_mascheroni(prec: int = DEFAULT_PREC) -> mpmath.mpf:
    with mpmath.workprec(prec):
        return +mpmath.euler


def residue_exact(field: NumberField, prec: int = DEFAULT_PREC) -> ResidueEstimate:
    """rho_K in closed form: 1 for Q, L(1, chi_D) for quadratic fields.

    Uses the finite character sums of the class number formula:
    D < 0:  L(1, chi) = -pi / |D|^{3/2} * sum_{a<|D|} chi(a) a
    D > 0:  L(1, chi) = -1/sqrt(D) * sum_{a<D} chi(a) log sin(pi a / D)
    """
    if field.kind is FieldKind.RATIONAL:
        with mpmath.workprec(prec):
            return ResidueEstimate(field, mpmath.mpf(1), ResidueMethod.EXACT_RATIONAL, mpmath.mpf(0))
    if field.kind is not FieldKind.QUADRATIC:
        raise UnsupportedExactResidue(f"no closed-form residue for {field}; use residue_fit")
    D = field.discriminant
    N = abs(D)
    with mpmath.workprec(prec + 16):
        if D < 0:
            s = sum(kronecker(D, a) * a for a in range(1, N))
            val = -mpmath.pi * s / mpmath.mpf(N) ** 1.5
        else:
            val = -mpmath.fsum(kronecker(D, a) * mpmath.log(mpmath.sinpi(mpmath.mpf(a) / N)) for a in range(1, N))
            val /= mpmath.sqrt(N)
    with mpmath.workprec(prec):
        return ResidueEstimate(field, +val, ResidueMethod.EXACT_L_VALUE, mpmath.mpf(0))


def residue_fit(field: NumberField, x: int, table: IdealCountTable | None = None, prec: int = DEFAULT_PREC) -> ResidueEstimate:
    """Fit A(t) = rho t + c t^{1-1/n} on the geometric sample schedule ending at x.

    Points are weighted by t^{1-1/n}, the size of the error term in A(t), and
    the reported uncertainty is the standard error of rho expanded by the
    two-sided 99% Student-t factor.
    """
    if x < 1000:
        raise ValueError("residue_fit needs x >= 1000")
    table = table if table is not None else build_table(field, x)
    ts = sample_points(x)
    ys = [table.A(t) for t in ts]
    if len(set(ys)) == 1:
        raise FitError("all samples of A(t) are equal")
    n = field.degree
    with mpmath.workprec(prec):
        power = 1 - mpmath.mpf(1) / n
        fit = fit_powers(ts, ys, [1, power], prec, sigma=[mpmath.mpf(t) ** power for t in ts])
        k = student_t_quantile(0.995, len(ts) - 2)
        return ResidueEstimate(field, fit.coeffs[0], ResidueMethod.FIT, k * fit.stderr[0], x, fit.residual)


def residue(field: NumberField, x: int | None = None, prec: int = DEFAULT_PREC, table: IdealCountTable | None = None) -> ResidueEstimate:
    """Exact residue where a closed form exists, otherwise a fit at bound x."""
    try:
        return residue_exact(field, prec)
    except UnsupportedExactResidue:
        if x is None:
            raise
        return residue_fit(field, x, table, prec)


def partial_constants(table: IdealCountTable, ts, rho, weight=1, prec: int = DEFAULT_PREC) -> list[mpmath.mpf]:
    """(1/rho) * H(t) - weight * log t for each t; H is the table's harmonic sum."""
    hs = harmonic_sums(table, ts, prec)
    with mpmath.workprec(prec):
        rho = mpmath.mpf(rho)
        return [h / rho - weight * mpmath.log(t) for h, t in zip(hs, ts)]


def extrapolate_limit(ts, values, degree: int, model: Model, prec: int = DEFAULT_PREC) -> Fit:
    return fit_powers(ts, values, model.exponents(degree), prec)


def euler_kronecker(
    field: NumberField,
    x: int,
    model: Model | str | None = None,
    rho: ResidueEstimate | None = None,
    table: IdealCountTable | None = None,
    prec: int = DEFAULT_PREC,
) -> EKEstimate:
    model = default_model(field) if model is None else Model(model)
    table = table if table is not None else build_table(field, x)
    if rho is None:
        rho = residue(field, x if x >= 1000 else None, prec, table)
    if model is Model.NONE:
        ts = [x]
    else:
        ts = sample_points(x)
    vals = partial_constants(table, ts, rho.value, 1, prec)
    fit = extrapolate_limit(ts, vals, field.degree, model, prec)
    return EKEstimate(field, fit.coeffs[0], rho, x, model, fit.residual, vals[-1], tuple(ts), prec)


def envelope_slope(field: NumberField, table: IdealCountTable, rho, gamma, t_min: int = 16) -> float:
    """Log-log slope of max_{t <= u < 2t} |S(u) - gamma| over dyadic windows.

    The sup over each doubling window tracks the size of the error term
    rather than the zeros of its oscillation.
    """
    x = table.bound
    m = np.arange(x + 1, dtype=np.float64)
    m[0] = 1.0
    H = np.cumsum(table.counts / m)
    u = np.arange(x + 1, dtype=np.float64)
    u[0] = 1.0
    err = np.abs(H / float(rho) - np.log(u) - float(gamma))
    xs, ys = [], []
    k = max(0, int(math.log2(t_min)))
    while 2 ** (k + 1) - 1 <= x:
        xs.append(k * math.log(2))
        ys.append(math.log(err[2**k : 2 ** (k + 1)].max()))
        k += 1
    if len(xs) < 3:
        raise ValueError("bound too small for a slope estimate")
    return float(np.polyfit(xs, ys, 1)[0])
