from fractions import Fraction

import mpmath
import pytest

from ekron.mertens import rosen_table
from ekron.residues import residue_exact
from oracles import euler_gamma_em, primes_naive


def test_exact_delta_at_ten(Q):
    (row,) = rosen_table(Q, [10], residue_exact(Q))
    assert row.exact and Fraction(int(row.delta.numerator), int(row.delta.denominator)) == Fraction(8, 35)
    assert row.ideal_count == 4


def test_rational_matches_naive_product(Q):
    rows = rosen_table(Q, [100, 1000], residue_exact(Q))
    expect = Fraction(1)
    for p in primes_naive(1000):
        expect *= Fraction(p - 1, p)
    d = rows[1].delta
    assert Fraction(int(d.numerator), int(d.denominator)) == expect
    assert rows[1].delta_value < rows[0].delta_value


def test_rational_mertens_at_million(Q):
    row = rosen_table(Q, [10**6], residue_exact(Q))[-1]
    assert row.ideal_count == 78498
    with mpmath.workprec(128):
        assert abs(row.target - mpmath.exp(-euler_gamma_em())) < mpmath.mpf(10) ** -30
    assert row.relative_error < 0.02


def test_float_fallback_matches_exact(Qi):
    rho = residue_exact(Qi)
    exact = rosen_table(Qi, [5000], rho)[0]
    approx = rosen_table(Qi, [5000], rho, exact_threshold=10)[0]
    assert exact.exact and not approx.exact
    assert abs(exact.delta_value - approx.delta_value) / exact.delta_value < 1e-12


def test_gaussian_trend(Qi):
    rows = rosen_table(Qi, [10**4, 4 * 10**4, 10**5, 10**6], residue_exact(Qi))
    assert rows[-1].relative_error < rows[0].relative_error
    assert rows[-1].relative_error < 0.05
    assert all(b.delta_value < a.delta_value for a, b in zip(rows, rows[1:]))


def test_rejects_unsorted(Q):
    with pytest.raises(ValueError):
        rosen_table(Q, [100, 10], residue_exact(Q))
