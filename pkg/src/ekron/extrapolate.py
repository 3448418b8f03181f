"""Least-squares fits of power-law correction models at high precision."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

SAMPLE_COUNT = 8
SAMPLE_RATIO = 2


class FitError(ValueError):
    pass


def sample_points(x: int, count: int = SAMPLE_COUNT, ratio: int = SAMPLE_RATIO) -> list[int]:
    """Geometric schedule ending at ``x``: floor(x / ratio^k), ascending, deduplicated."""
    pts = sorted({x // ratio**k for k in range(count)} - {0})
    return pts


@dataclass(frozen=True)
class Fit:
    coeffs: tuple  # mpf, one per basis exponent
    residual: mpmath.mpf  # Euclidean norm of the residual vector
    stderr: tuple  # standard error per coefficient (0 when the fit is exact/determined)


def _exponent(e):
    if isinstance(e, Fraction):
        return mpmath.mpf(e.numerator) / e.denominator
    return mpmath.mpf(e)


def fit_powers(ts: Sequence, ys: Sequence, exponents: Sequence, prec: int = 128, sigma: Sequence | None = None) -> Fit:
    """Fit ``y(t) = sum_j c_j t^{e_j}`` by least squares.

    ``sigma`` gives a relative noise scale per point (weighted least squares);
    the residual and standard errors refer to the weighted problem.
    """
    if len(ts) != len(ys):
        raise ValueError("ts and ys differ in length")
    k = len(exponents)
    if len(ts) < k:
        raise FitError(f"{len(ts)} sample point(s) for {k} unknowns; use a larger bound or more points")
    with mpmath.workprec(prec):
        sig = [mpmath.mpf(1)] * len(ts) if sigma is None else [mpmath.mpf(v) for v in sigma]
        X = mpmath.matrix(len(ts), k)
        for i, t in enumerate(ts):
            t = mpmath.mpf(t)
            for j, e in enumerate(exponents):
                X[i, j] = t ** _exponent(e) / sig[i]
        y = mpmath.matrix([mpmath.mpf(v) / s for v, s in zip(ys, sig)])
        XtX = X.T * X
        # Gram determinant of the unit-normalized columns lies in [0, 1]
        scale = [mpmath.sqrt(XtX[j, j]) for j in range(k)]
        gram = mpmath.matrix(k, k)
        for i in range(k):
            for j in range(k):
                gram[i, j] = XtX[i, j] / (scale[i] * scale[j]) if scale[i] and scale[j] else 0
        if mpmath.det(gram) < mpmath.mpf(2) ** (-prec // 2):
            raise FitError("singular fit matrix; add sample points or use a simpler model")
        cov = mpmath.inverse(XtX)
        c = cov * (X.T * y)
        r = y - X * c
        rss = mpmath.fsum(v**2 for v in r)
        dof = len(ts) - k
        s2 = rss / dof if dof > 0 else mpmath.mpf(0)
        stderr = tuple(mpmath.sqrt(abs(s2 * cov[j, j])) for j in range(k))
        return Fit(tuple(c[j] for j in range(k)), mpmath.sqrt(rss), stderr)


def student_t_quantile(q: float, dof: int, prec: int = 64) -> mpmath.mpf:
    """Quantile of Student's t distribution with ``dof`` degrees of freedom."""
    with mpmath.workprec(prec):
        nu = mpmath.mpf(dof)

        def cdf(t):
            return 1 - mpmath.betainc(nu / 2, mpmath.mpf(1) / 2, 0, nu / (nu + t * t), regularized=True) / 2

        return mpmath.findroot(lambda t: cdf(t) - q, (mpmath.mpf(0), mpmath.mpf(1000)), solver="bisect")
