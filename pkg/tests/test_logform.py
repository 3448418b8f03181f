from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ekron.logform import LogLinearForm

forms = st.dictionaries(st.sampled_from([2, 3, 5, 7, 11, 13]), st.fractions(max_denominator=50), max_size=5).map(LogLinearForm)


def test_canonical_zero():
    assert LogLinearForm({2: 0, 3: Fraction(0)}) == LogLinearForm()
    assert not LogLinearForm({2: 1}) - LogLinearForm({2: 1})


def test_rejects_non_prime_keys():
    with pytest.raises(ValueError):
        LogLinearForm({4: 1})


def test_log_of_splits_over_primes():
    assert LogLinearForm.log_of(360) == LogLinearForm({2: 3, 3: 2, 5: 1})
    assert LogLinearForm.log_of(1).is_zero()


def test_value():
    f = LogLinearForm({2: 1, 3: Fraction(-1, 2)})
    with mpmath.workdps(40):
        assert abs(f.value(160) - mpmath.log(2 / mpmath.sqrt(3))) < mpmath.mpf(10) ** -40


@given(forms, forms, forms)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == LogLinearForm()
    assert -(-a) == a
    assert 2 * a == a + a
