import random
from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from s4lift import embed
from s4lift.arith import RationalPoly


def _fr(x):
    return sp.Rational(Fraction(x).numerator, Fraction(x).denominator)


def sympy_gamma_det(roots, P, D):
    V = sp.Matrix([[_fr(r) ** k for k in range(4)] for r in roots])
    sD = sp.sqrt(D)
    C = sp.Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, sp.Rational(1, 2), sp.Rational(1, 2)],
                   [0, 0, 1 / (2 * sD), -1 / (2 * sD)]])
    return (V * sp.Matrix(P).applyfunc(_fr) * C + sp.eye(4)).det()


@given(st.integers(0, 10 ** 6))
def test_gamma_determinant_matches_oracle(seed):
    rng = random.Random(seed)
    roots = rng.sample(range(-9, 10), 4)
    while True:
        P = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        if sp.Matrix(P).applyfunc(_fr).det() != 0:
            break
    D = rng.choice([-3, -7, 5, 13, -643])
    got = embed.gamma_determinant(roots, P, D, digits=40)
    want = complex(sp.N(sympy_gamma_det(roots, P, D), 40))
    assert abs(complex(got) - want) <= 1e-25 * max(1, abs(want))


def test_gamma_determinant_errors():
    P = [[int(i == j) for j in range(4)] for i in range(4)]
    with pytest.raises(ValueError):
        embed.gamma_determinant([1, 1, 2, 3], P, -3)
    with pytest.raises(ValueError):
        embed.gamma_determinant([0, 1, 2, 3], [[0] * 4] * 4, -3)
    with pytest.raises(ValueError):
        embed.gamma_determinant([0, 1, 2], P, -3)


@pytest.mark.parametrize("case", [43, 563, 643])
def test_gamma_conjugates(case):
    data = embed.load_case(case)
    conj = embed.gamma_conjugates(data["quartic"], data["gamma"], 60)
    assert len(conj) == 12 == len(embed.conjugate_pairs())
    assert all(abs(v) > 1e-10 for v in conj)
    # the multiset is Galois stable, so the power sums are real rationals
    with mpmath.workdps(60):
        for k in (1, 2, 3):
            s = sum(v ** k for v in conj)
            assert abs(mpmath.im(s)) < mpmath.mpf(10) ** -40


def test_degenerate_gamma():
    g = embed.GammaExpression([(1, 1, 0), (-1, 0, 1), (0, 0, 0)])
    g0 = embed.GammaExpression([(1, 1, 1), (-1, 1, 1)])
    q = RationalPoly.from_descending([1, 0, 0, -2, -1])
    assert len(embed.gamma_conjugates(q, g, 40)) == 12
    with pytest.raises(ValueError):
        embed.gamma_conjugates(q, g0, 40)
    with pytest.raises(ValueError):
        embed.gamma_conjugates(RationalPoly.from_descending([1, 0, -2, 0, 1]), g, 40)


@pytest.fixture(scope="module")
def poly24():
    return {c: embed.degree24_polynomial(c) for c in (563, 643)}


@pytest.mark.parametrize("case", [563, 643])
def test_degree24_product_is_even_and_squarefree(poly24, case):
    f = poly24[case]
    assert f.degree == 24 and f.is_squarefree()
    assert all(f.coeffs[k] == 0 for k in range(1, 25, 2))


def test_reconstruction_stable_under_precision_and_order(poly24):
    data = embed.load_case(643)
    conj = embed.gamma_conjugates(data["quartic"], data["gamma"], 400)
    assert embed.minpoly_sqrt_gamma(conj, digits=400) == poly24[643]
    assert embed.minpoly_sqrt_gamma(list(reversed(conj))) == poly24[643]


def test_rescaling_c(poly24):
    # c s^2 gives f(t / s) up to the leading factor s^24
    data = embed.load_case(643)
    conj = embed.gamma_conjugates(data["quartic"], data["gamma"], 200)
    g = embed.minpoly_sqrt_gamma(conj, c=4)
    f = poly24[643]
    assert all(g.coeffs[k] == f.coeffs[k] * 2 ** (24 - k) for k in range(25))


def test_minpoly_errors():
    data = embed.load_case(643)
    conj = embed.gamma_conjugates(data["quartic"], data["gamma"], 50)
    with pytest.raises(ValueError):
        embed.minpoly_sqrt_gamma(conj, c=0)
    with pytest.raises(ValueError):
        embed.minpoly_sqrt_gamma(conj[:11])
    with pytest.raises(embed.PrecisionError):
        embed.minpoly_sqrt_gamma(conj, digits=15, tolerance_exp=40)


def _sqf_and_val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@pytest.mark.parametrize("case", [563, 643])
def test_printed_polynomial_discriminant(case):
    f = embed.load_printed_poly24(case)
    t = sp.symbols("t")
    d = int(sp.discriminant(sp.Poly([int(c) for c in reversed(f.coeffs)], t)))
    v = _sqf_and_val(abs(d), case)
    assert v % 2 == 1 and v >= 11
    assert sp.ntheory.factor_.core(abs(d)) * (1 if d > 0 else -1) == -case


@pytest.mark.parametrize("case", [563, 643])
def test_printed_polynomial_irreducible(case):
    assert embed.is_irreducible_over_Q(embed.load_printed_poly24(case))


@pytest.mark.parametrize("case", [563, 643])
def test_field_certificate_verifies(case):
    data = embed.load_case(case)
    cert = embed.load_field_certificate(case)
    target = embed.load_printed_poly24(case)
    assert embed.verify_field_certificate(data["quartic"], data["gamma"], target, cert)
    bad = dict(cert, denominator=cert["denominator"] + 1)
    assert not embed.verify_field_certificate(data["quartic"], data["gamma"], target, bad)


def test_gamma_expression_roundtrip():
    g = embed.load_case(563)["gamma"]
    assert embed.GammaExpression.from_json(g.to_json()) == g
    with pytest.raises(ValueError):
        embed.GammaExpression([(1, -1, 0)])
