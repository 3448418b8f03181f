"""Independent reference computations used as test oracles.

Nothing here imports from ekron: each oracle reaches its answer by a
different route than the library code it checks.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath


def primes_naive(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n via the Akiyama-Tanigawa algorithm (B_1 = +1/2 convention)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def euler_gamma_em(N: int = 200, terms: int = 20, dps: int = 60) -> mpmath.mpf:
    """gamma = H_N - log N - 1/(2N) + sum_k B_2k / (2k N^2k) (Euler-Maclaurin)."""
    H = sum(Fraction(1, n) for n in range(1, N + 1))
    corr = Fraction(-1, 2 * N) + sum(bernoulli(2 * k) / (2 * k * Fraction(N) ** (2 * k)) for k in range(1, terms + 1))
    with mpmath.workdps(dps):
        v = mpmath.mpf(H.numerator) / H.denominator - mpmath.log(N) + mpmath.mpf(corr.numerator) / corr.denominator
        return +v


def legendre_brute(a: int, p: int) -> int:
    """(a/p) for odd prime p by listing the squares mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def quadratic_split_brute(d: int, p: int) -> tuple[int, int, int]:
    """(e, f, g) for p in Q(sqrt d) by counting roots of the minimal polynomial
    of the ring-of-integers generator mod p (Dedekind-Kummer)."""
    if d % 4 == 1:
        c = (d - 1) // 4
        roots = [x for x in range(p) if (x * x - x - c) % p == 0]
        disc = d
    else:
        roots = [x for x in range(p) if (x * x - d) % p == 0]
        disc = 4 * d
    if disc % p == 0:
        return (2, 1, 1)
    return (1, 1, 2) if len(roots) == 2 else (1, 2, 1)


def order_brute(a: int, m: int) -> int:
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def cyclotomic_prime_norms(m: int, bound: int) -> list[int]:
    """Norms (with multiplicity) of prime ideals of Q(zeta_m), m prime, up to bound."""
    out = []
    for p in primes_naive(bound):
        if p == m:
            out.append(p)
            continue
        f = order_brute(p, m)
        g = (m - 1) // f
        if p**f <= bound:
            out += [p**f] * g
    return sorted(out)


def count_ideals_by_enumeration(norms: list[int], bound: int) -> list[int]:
    """a_m for m <= bound by enumerating all multisets of prime ideals."""
    counts = [0] * (bound + 1)

    def rec(start: int, n: int) -> None:
        counts[n] += 1
        for i in range(start, len(norms)):
            q = norms[i]
            if n * q > bound:
                break
            rec(i, n * q)

    rec(0, 1)
    return counts


def chi_minus4(n: int) -> int:
    return (0, 1, 0, -1)[n % 4]


def divisor_sum_counts(chi, bound: int) -> list[int]:
    out = [0] * (bound + 1)
    for d in range(1, bound + 1):
        c = chi(d)
        if c:
            for m in range(d, bound + 1, d):
                out[m] += c
    return out


def l_one_accelerated(chi_table: list[int], dps: int = 40, levels: int = 10, base: int = 64) -> mpmath.mpf:
    """sum chi(n)/n via partial sums over whole periods plus Richardson extrapolation.

    The tail after N periods has an asymptotic expansion in powers of 1/N,
    so partial sums at N = base * 2^j are extrapolated to N -> oo.
    """
    q = len(chi_table)
    with mpmath.workdps(dps):
        seq = []
        acc = mpmath.mpf(0)
        n = 1
        for j in range(levels):
            N = base * 2**j
            while n <= N * q:
                c = chi_table[n % q]
                if c:
                    acc += mpmath.mpf(c) / n
                n += 1
            seq.append(+acc)
        # Richardson table with ratio 2 and error terms 1/N, 1/N^2, ...
        T = seq[:]
        for k in range(1, levels):
            T = [(2**k * T[i + 1] - T[i]) / (2**k - 1) for i in range(len(T) - 1)]
        return T[0]


def gamma_quadratic_reference(chi_table: list[int], dps: int = 40) -> mpmath.mpf:
    """gamma_K = gamma + L'(1, chi)/L(1, chi) for K quadratic, via mpmath's Dirichlet series."""
    with mpmath.workdps(dps):
        return mpmath.euler + mpmath.dirichlet(1, chi_table, 1) / mpmath.dirichlet(1, chi_table)


def kronecker_table(D: int) -> list[int]:
    """chi_D(a) for a mod |D| via brute-force Legendre symbols and the 2-adic rule."""

    def chi(a: int) -> int:
        if math.gcd(a, D) != 1:
            return 0
        r = 1
        while a % 2 == 0:
            a //= 2
            r *= 1 if D % 8 in (1, 7) else -1
        # Jacobi (D/a) for odd a as a product of brute-force Legendre symbols
        for p in primes_naive(a):
            while a % p == 0:
                a //= p
                r *= legendre_brute(D, p)
        return r

    return [chi(a) for a in range(abs(D))]
