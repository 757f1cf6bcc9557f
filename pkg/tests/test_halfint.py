import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from s4lift import elliptic, halfint as h, ternary
from s4lift.halfint import QExpansion


def theta_cubed(B):
    th = h.theta_unary(1, B)
    return th.multiply(th).multiply(th, weight=Fraction(3, 2), level=4, character=1)


@pytest.fixture(scope="module")
def span344():
    B = 25 * 400
    forms = ternary.load_table(172) + ternary.load_table(344)
    series = [ternary.theta_series(T, B) for T in forms]
    return series


def test_theta_unary():
    th = h.theta_unary(3, 30)
    assert [m for m in range(31) if th.re[m]] == [0, 3, 12, 27]
    assert th.re[0] == 1 and th.re[12] == 2
    with pytest.raises(ValueError):
        h.theta_unary(0, 10)


def test_sum_of_three_squares():
    F = theta_cubed(50)
    r3 = [sum(1 for a in range(-8, 9) for b in range(-8, 9) for c in range(-8, 9)
              if a * a + b * b + c * c == n) for n in range(51)]
    assert [int(x) for x in F.re] == r3


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_theta_cubed_is_eigenform(p):
    # theta^3 spans M_{3/2}(4), with T_{p^2} eigenvalue p + 1
    F = theta_cubed(p * p * 20)
    assert h.is_eigenform(F, p, p + 1, 20)
    assert not h.is_eigenform(F, p, p, 20)


def test_hecke_rejects_bad_input():
    F = theta_cubed(100)
    with pytest.raises(ValueError):
        h.hecke_Tp2(F, 4, 2)
    with pytest.raises(ValueError):
        h.hecke_Tp2(F, 2, 5)       # 2 divides the level
    with pytest.raises(ValueError):
        h.hecke_Tp2(F, 5, 10)      # truncation too short


def test_expand_4z_and_product():
    g = QExpansion([0, 1, 2, 3], [0, 0, 1, 0], weight=1, level=7, character=-7)
    G = h.expand_4z(g, 13)
    assert [G[m] for m in (4, 8, 12)] == [(1, 0), (2, 1), (3, 0)]
    assert all(G[m] == (0, 0) for m in range(14) if m % 4)
    with pytest.raises(ValueError):
        h.expand_4z(g, 40)
    P = h.product_weight_3_2(g, 7, 3)
    assert P.level == 28 and P.weight == Fraction(3, 2)
    with pytest.raises(ValueError):
        h.product_weight_3_2(g, 5, 3)


def test_kohnen_check():
    F = theta_cubed(40)
    assert not h.kohnen_check(F, 3)
    K = QExpansion([0, 0, 0, 5, 7, 0, 0, 2], weight=Fraction(3, 2))
    assert h.kohnen_check(K, 7)
    with pytest.raises(ValueError):
        h.kohnen_check(K, 5)


@pytest.mark.parametrize("N,cusp,dim", [(4, False, 1), (4, True, 0), (8, False, 2),
                                         (28, True, 1), (344, True, 20), (344, False, 25),
                                         (2252, True, 140), (2572, True, 160)])
def test_dimensions(N, cusp, dim):
    assert h.dim_weight_3_2(N, cusp=cusp) == dim


def test_dimension_needs_level_multiple_of_4():
    with pytest.raises(ValueError):
        h.dim_weight_3_2(10)


def test_theta_rank_and_duplicates(span344):
    r, idx = h.rank_and_basis(span344, 400)
    assert r == 21 and len(idx) == 21
    assert r <= h.dim_weight_3_2(344, cusp=False)
    r2, _ = h.rank_and_basis(span344[:3] + span344[:3], 400)
    assert r2 == 3


@given(st.lists(st.integers(-5, 5), min_size=21, max_size=21).filter(any))
def test_rational_span_recovers_combination(span344_small, coeffs):
    basis = span344_small
    target = h.combine(basis, coeffs)
    sp = h.RationalSpan(basis)
    assert sp.solve([target], 60)[0] == [Fraction(c) for c in coeffs]


@pytest.fixture(scope="module")
def span344_small(span344):
    _, idx = h.rank_and_basis(span344, 400)
    return [span344[i].truncate(400) for i in idx]


def test_rational_span_errors(span344_small):
    sp = h.RationalSpan(span344_small)
    with pytest.raises(h.InsufficientPrecision):
        sp.solve([span344_small[0]], 1000)
    with pytest.raises(h.InsufficientPrecision):
        sp.solve([span344_small[0]], sp.max_row - 1)
    bad = QExpansion([1] + [0] * 400)
    with pytest.raises(h.NotInSpan):
        sp.solve([bad], 60)


def test_hecke_operators_commute(span344):
    _, idx = h.rank_and_basis(span344, 400)
    basis = [span344[i] for i in idx]
    sp = h.RationalSpan([F.truncate(400) for F in basis])
    M9 = h.hecke_matrix(basis, 3, span=sp)
    M25 = h.hecke_matrix(basis, 5, span=sp)
    n = len(basis)

    def mul(A, C):
        return [[sum(A[i][k] * C[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert mul(M9, M25) == mul(M25, M9)


def test_hecke_matrix_singleton():
    F = theta_cubed(9 * 60)
    assert h.hecke_matrix([F], 3) == [[4]]
    with pytest.raises(h.InsufficientPrecision):
        h.hecke_matrix([theta_cubed(9 * 10)], 3)


def test_eigenform_search_empty_intersection():
    F = theta_cubed(25 * 60)
    E = elliptic.curve("43A")
    with pytest.raises(ArithmeticError):
        h.eigenform_search([F], E, (3, 5))


def test_qexpansion_json_roundtrip():
    F = QExpansion([Fraction(1, 3), 0, -2], [0, Fraction(5, 7), 0], weight=Fraction(3, 2), level=4)
    G = QExpansion.from_json(F.to_json())
    assert G == F and G.level == 4 and G.weight == Fraction(3, 2)
    assert (F - F) == QExpansion.zero(2)
    assert F.real_part().is_rational() and not F.is_rational()
