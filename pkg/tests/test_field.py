import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekron.field import (
    FieldError,
    NumberField,
    enumerate_prime_ideals,
    parse_field,
    prime_ideal,
    prime_ideal_norms,
    splitting_type,
)
from ekron.primes import is_prime, jacobi, kronecker, primes_up_to
from oracles import legendre_brute, order_brute, primes_naive, quadratic_split_brute


def test_primes_match_naive():
    assert primes_up_to(2000).tolist() == primes_naive(2000)


def test_segmented_sieve_matches_simple(monkeypatch):
    import ekron.primes as pr

    expect = pr._simple_sieve(300_000)
    monkeypatch.setattr(pr, "SEGMENT_THRESHOLD", 1000)
    got = pr.primes_up_to(300_000, segment=7919)
    assert got.tolist() == expect.tolist()


def test_is_prime_agrees_with_sieve():
    ps = set(primes_up_to(50_000).tolist())
    assert all(is_prime(n) == (n in ps) for n in range(50_000))
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


@pytest.mark.parametrize("d", [-1, -3, -5, 2, 3, 5, 13, -163])
def test_field_invariants(d):
    K = NumberField.quadratic(d)
    assert K.degree == 2
    assert K.discriminant == (d if d % 4 == 1 else 4 * d)


@pytest.mark.parametrize("m,deg,disc", [(3, 2, -3), (4, 2, -4), (5, 4, 125), (8, 4, 256), (7, 6, -16807), (12, 4, 144)])
def test_cyclotomic_degree_and_discriminant(m, deg, disc):
    K = NumberField.cyclotomic(m)
    assert (K.degree, K.discriminant) == (deg, disc)


@pytest.mark.parametrize("bad", [lambda: NumberField.quadratic(4), lambda: NumberField.quadratic(1),
                                 lambda: NumberField.quadratic(0), lambda: NumberField.cyclotomic(6),
                                 lambda: NumberField.cyclotomic(2)])
def test_invalid_fields(bad):
    with pytest.raises(FieldError):
        bad()


def test_parse_field_roundtrip():
    for text in ["Q", "Q(sqrt,-1)", "Q(sqrt,5)", "Q(zeta,5)", " Q( sqrt , -7 ) "]:
        K = parse_field(text)
        assert parse_field(K.spec()) == K


@pytest.mark.parametrize("text,pos", [("Q(sqr,4)", 5), ("R", 0), ("Q(sqrt,-1", 9), ("Q(sqrt,x)", 7)])
def test_parse_field_reports_position(text, pos):
    with pytest.raises(FieldError, match=f"position {pos}"):
        parse_field(text)


def test_splitting_examples(Q, Qi, Z5):
    assert vars(splitting_type(Qi, 2)) == {"e": 2, "f": 1, "g": 1}
    assert vars(splitting_type(Q, 7)) == {"e": 1, "f": 1, "g": 1}
    assert vars(splitting_type(Qi, 5)) == {"e": 1, "f": 1, "g": 2}
    assert vars(splitting_type(Qi, 3)) == {"e": 1, "f": 2, "g": 1}
    assert vars(splitting_type(Z5, 11)) == {"e": 1, "f": 1, "g": 4}
    with pytest.raises(ValueError):
        splitting_type(Qi, 9)


def test_kronecker_reciprocity_matches_brute_force():
    for D in (-4, -3, 5, -7, 8, -8, 12, 13, -20, 21, -163):
        for p in primes_naive(10_000)[1:]:
            assert kronecker(D, p) == legendre_brute(D, p)


def test_jacobi_rejects_even_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 4)


@pytest.mark.parametrize("d", [-1, -2, -3, 2, 3, 5, 6, 7, 13, -15, 17, -23])
def test_quadratic_splitting_against_root_count(d):
    K = NumberField.quadratic(d)
    for p in primes_naive(2000):
        st = splitting_type(K, p)
        assert (st.e, st.f, st.g) == quadratic_split_brute(d, p)


def test_quadratic_g2_iff_square_root_exists_up_to_1e4():
    for d in (-1, 5, -7, 13):
        K = NumberField.quadratic(d)
        D = K.discriminant
        for p in primes_naive(10_000):
            if p == 2 or D % p == 0:
                continue
            solvable = any((x * x - D) % p == 0 for x in range(p))
            assert (splitting_type(K, p).g == 2) == solvable


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 9, 12, 15, 16, 20])
def test_cyclotomic_efg(m):
    K = NumberField.cyclotomic(m)
    for p in primes_naive(1000):
        st = splitting_type(K, p)
        assert st.e * st.f * st.g == K.degree
        if m % p:
            assert st.f == order_brute(p, m) and st.e == 1


def test_enumeration_examples(Q, Qi, Z5):
    assert [P.norm for P in enumerate_prime_ideals(Q, 10)] == [2, 3, 5, 7]
    assert [P.norm for P in enumerate_prime_ideals(Qi, 10)] == [2, 5, 5, 9]
    z = list(enumerate_prime_ideals(Z5, 12))
    assert [(P.norm, P.e, P.f) for P in z] == [(5, 4, 1)] + [(11, 1, 1)] * 4
    assert len({P for P in z}) == 5


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["Q", "Q(sqrt,-1)", "Q(sqrt,5)", "Q(sqrt,-7)", "Q(zeta,5)", "Q(zeta,8)", "Q(zeta,7)"]),
       st.integers(2, 3000))
def test_enumeration_sorted_and_consistent(spec, bound):
    K = parse_field(spec)
    ideals = list(enumerate_prime_ideals(K, bound))
    keys = [P.sort_key() for P in ideals]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for P in ideals:
        st_ = splitting_type(K, P.p)
        assert P.norm <= bound and (P.e, P.f) == (st_.e, st_.f) and 0 <= P.index < st_.g
        assert st_.e * st_.f * st_.g == K.degree
    norms, mult = prime_ideal_norms(K, bound)
    assert sum(mult.tolist()) == len(ideals)


def test_prime_ideal_constructor_checks(Qi):
    assert prime_ideal(Qi, 5, 1, 1).index == 1
    with pytest.raises(ValueError):
        prime_ideal(Qi, 5, 1, 2)
    with pytest.raises(ValueError):
        prime_ideal(Qi, 3, 1, 0)


def test_norm_overflow_is_explicit(Z5):
    from ekron.field import NormOverflowError, PrimeIdeal

    huge = PrimeIdeal(2**31 - 1, 4, 1, 0, Z5)
    with pytest.raises(NormOverflowError):
        huge.norm
