from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from s4lift.arith import (INF, RationalPoly, complex_roots, factor_degrees_mod_p, factor_int,
                          factorization_pattern_mod_p,
                          find_embedding, hilbert_symbol, is_embedding, is_prime, kronecker_symbol,
                          poly_discriminant, primes_up_to, relevant_places, resultant, same_field,
                          squarefree_part, valuation)

P43 = RationalPoly.from_descending([1, 0, 0, -2, -1])


def _legendre_brute(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_kronecker_examples():
    assert kronecker_symbol(1, 7) == 1
    assert kronecker_symbol(-43, 2) == -1
    assert kronecker_symbol(-43, 3) == _legendre_brute(-43, 3)


@given(st.integers(-500, 500), st.sampled_from(primes_up_to(60)[1:]))
def test_kronecker_matches_euler_criterion(a, p):
    assert kronecker_symbol(a, p) == _legendre_brute(a, p)


@given(st.integers(-300, 300), st.integers(1, 300), st.integers(1, 300))
def test_kronecker_multiplicative_in_denominator(a, m, n):
    assert kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n)


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    for v in [INF] + primes_up_to(50):
        assert hilbert_symbol(2, -1, v) == 1


@given(st.integers(-10 ** 4, 10 ** 4).filter(bool), st.integers(-10 ** 4, 10 ** 4).filter(bool))
def test_hilbert_symmetric_and_bimultiplicative(a, b):
    for v in relevant_places(a, b, 3):
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        assert hilbert_symbol(a, b * b, v) == 1
        assert hilbert_symbol(a, 3 * b, v) == hilbert_symbol(a, 3, v) * hilbert_symbol(a, b, v)


@given(st.integers(-10 ** 4, 10 ** 4).filter(bool), st.integers(-10 ** 4, 10 ** 4).filter(bool))
def test_hilbert_norm_from_quadratic_field(a, b):
    # (a, x^2 - a y^2) = 1 whenever the second entry is nonzero
    n = b * b - a * 7 * 7
    if n:
        for v in relevant_places(a, n):
            assert hilbert_symbol(a, n, v) == 1


def test_squarefree_part_examples():
    assert squarefree_part(16) == 1
    assert squarefree_part(-688) == -43
    assert squarefree_part(Fraction(4, 9)) == 1
    assert squarefree_part(Fraction(-3, 8)) == -6


@given(st.integers(1, 10 ** 6), st.integers(-10 ** 3, 10 ** 3).filter(bool))
def test_squarefree_part_square_invariant(n, k):
    assert squarefree_part(n * k * k) == squarefree_part(n)
    s = squarefree_part(n)
    assert all(e == 1 for e in factor_int(abs(s)).values())


def test_factor_and_valuation():
    assert factor_int(2 ** 5 * 3 * 563 ** 2) == {2: 5, 3: 1, 563: 2}
    assert valuation(Fraction(5, 8), 2) == -3
    assert is_prime(563) and is_prime(643) and not is_prime(561)
    big = 1000003 * 1000033
    assert factor_int(big) == {1000003: 1, 1000033: 1}


def test_poly_discriminant_examples():
    assert poly_discriminant(P43) == -688
    assert poly_discriminant(RationalPoly([-1, 0, 1])) == 4


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=6))
def test_discriminant_matches_sympy(coeffs):
    f = RationalPoly(coeffs + [1])
    x = sympy.symbols("x")
    ref = sympy.discriminant(sum(c * x ** i for i, c in enumerate(coeffs + [1])), x)
    assert poly_discriminant(f) == Fraction(int(ref))


def test_resultant_zero_for_common_root():
    f = RationalPoly([-2, 0, 1])
    g = RationalPoly([-2, 0, 1]) * RationalPoly([1, 1])
    assert resultant(f, g) == 0


def test_factorization_patterns():
    assert factorization_pattern_mod_p(RationalPoly([1, 0, 1]), 5) == ((1, 1), True)
    degs, sqf = factorization_pattern_mod_p(P43, 3)
    x = sympy.symbols("x")
    ref = sympy.factor_list(x ** 4 - 2 * x - 1, modulus=3)[1]
    assert sorted(degs) == sorted(sympy.degree(f, x) for f, e in ref for _ in range(e))
    assert sqf


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6), st.sampled_from([3, 5, 7, 11, 13]))
def test_pattern_degrees_sum_to_degree(coeffs, p):
    f = RationalPoly(coeffs + [1])
    assert sum(d * e for d, e in factor_degrees_mod_p(f, p)) == f.degree
    degs, sqf = factorization_pattern_mod_p(f, p)
    assert sqf == (poly_discriminant(f) % p != 0)


def test_complex_roots_examples():
    r = complex_roots(RationalPoly([1, 0, 1]), 50)
    assert {(round(float(z.real), 10), round(float(z.imag), 10)) for z in r} == {(0, 1), (0, -1)}
    r = complex_roots(P43, 80)
    real = [z for z in r if z.imag == 0]
    assert len(real) == 2 and len(r) == 4
    with mpmath.workdps(80):
        assert all(abs(P43.evalf(z)) < mpmath.mpf(10) ** -70 for z in r)


def test_complex_roots_rejects_repeated():
    with pytest.raises(ValueError):
        complex_roots(RationalPoly([1, -2, 1]), 30)


def test_embedding_certificate_roundtrip():
    f = RationalPoly.from_descending([1, 0, -2])
    g = RationalPoly.from_descending([1, -2, -1])     # roots 1 +- sqrt 2
    h = find_embedding(f, g, digits=60)
    assert h is not None and is_embedding(f, g, h)
    assert same_field(f, g, h)
    assert not is_embedding(f, g, RationalPoly([0, 1]))
