import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from s4lift import elliptic
from s4lift.arith import INF, RationalPoly, poly_discriminant, squarefree_part
from s4lift.quadform import (Br2Element, QuadraticForm, br2_add, diagonalize, hasse_invariant,
                             is_equivalent_over_Q, obstruction_class, reference_form, signature,
                             trace_form, witness_places, witt_sum_check)

P43 = RationalPoly.from_descending([1, 0, 0, -2, -1])
P563 = RationalPoly.from_descending([1, -8, 19, -14, -1])


def test_trace_form_of_case_43():
    Q = trace_form(P43)
    assert [list(map(int, r)) for r in Q.gram] == [[4, 0, 0, 6], [0, 0, 6, 4], [0, 6, 4, 0], [6, 4, 0, 12]]


def test_trace_form_rejects_non_squarefree():
    with pytest.raises(ValueError):
        trace_form(RationalPoly.from_descending([1, 0, -2, 0, 1]))     # (x^2-1)^2


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_trace_form_det_matches_discriminant(c):
    f = RationalPoly(c + [1])
    if not f.is_squarefree():
        return
    assert squarefree_part(trace_form(f).determinant()) == squarefree_part(poly_discriminant(f))


def test_diagonalize_examples():
    I4 = QuadraticForm.diagonal([1, 1, 1, 1])
    assert diagonalize(I4) == [1, 1, 1, 1]
    d = diagonalize(trace_form(P43))
    assert squarefree_part(Fraction(1) * d[0] * d[1] * d[2] * d[3]) == -43
    assert signature(trace_form(P43)) == (3, 1)
    h = diagonalize(QuadraticForm([[0, 1], [1, 0]]))
    assert squarefree_part(-h[0] * h[1]) == 1


def test_hasse_examples():
    for v in [INF, 2, 3, 43]:
        assert hasse_invariant(QuadraticForm.diagonal([1, 1, 1, 1]), v) == 1
    assert hasse_invariant(QuadraticForm.diagonal([-1, -1]), INF) == -1


def _random_unimodular(rng, n):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        for r in range(n):
            M[r][i] += k * M[r][j]
    return M


@given(st.lists(st.integers(-50, 50).filter(bool), min_size=4, max_size=4), st.integers(0, 10 ** 6))
def test_hasse_basis_change_invariance(diag, seed):
    rng = random.Random(seed)
    Q = QuadraticForm.diagonal(diag)
    places = witness_places(Q)
    for _ in range(3):
        Q2 = Q.transform(_random_unimodular(rng, 4))
        assert all(hasse_invariant(Q2, v) == hasse_invariant(Q, v) for v in places)
        assert is_equivalent_over_Q(Q, Q2)


def test_equivalence_examples():
    Q = trace_form(P43)
    assert is_equivalent_over_Q(Q, Q)
    assert not is_equivalent_over_Q(QuadraticForm.diagonal([1, 1]), QuadraticForm.diagonal([1, -1]))
    assert is_equivalent_over_Q(Q, reference_form(-43))


def test_reference_form():
    assert reference_form(1) == QuadraticForm.diagonal([1, 1, 2, 2])
    assert reference_form(-43) == QuadraticForm.diagonal([1, 1, 2, -86])
    assert squarefree_part(reference_form(-43).determinant()) == -43


def test_obstruction_examples():
    assert obstruction_class(P43).is_trivial
    assert obstruction_class(P563).is_trivial
    E = elliptic.curve("643A")
    e = obstruction_class(E.halving_quartic(elliptic.point(1, 0)))
    assert not e.is_trivial and set(e) <= {2, 643}


def test_br2_arithmetic():
    e = Br2Element([2, 43])
    assert (e + e).is_trivial
    assert br2_add(Br2Element([2, 43]), Br2Element([43, 7])) == Br2Element([2, 7])
    assert Br2Element.from_json(e.to_json()) == e


def test_witt_sum_check():
    E = elliptic.curve("643A")
    qs = [E.halving_quartic(elliptic.point(*P)) for P in ((1, 0), (2, 1), (-1, 3))]
    D = squarefree_part(E.discriminant)
    assert witt_sum_check(*qs, D)
    assert witt_sum_check(P43, P43, P43, -43)
    with pytest.raises(ValueError):
        witt_sum_check(P43, qs[0], qs[1], D)


@given(st.lists(st.integers(-12, 12), min_size=4, max_size=4))
def test_obstruction_support_is_even(c):
    f = RationalPoly(c + [1])
    if not f.is_squarefree() or poly_discriminant(f) >= 0:
        return
    e = obstruction_class(f)
    assert len(e) % 2 == 0 and INF not in e
