"""Quadratic forms over Q, local invariants and the 2+S4 embedding obstruction.

Br_2(Q) elements are represented by their support: the finite set of places
where the local invariant is -1.  The Witt invariant of a form is taken to be
its Hasse invariant eps_v(q) = prod_{i<j} (a_i, a_j)_v over a diagonalization
<a_1, ..., a_n>; with this convention the obstruction for a quartic K is

    eps_v(Tr_K(x^2)) * eps_v(<1, 1, 2, 2 D(K)>),

which is trivial everywhere exactly when the two forms are isometric.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (INF, Place, RationalPoly, hilbert_symbol, poly_discriminant,
                    relevant_places, squarefree_part)


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric Gram matrix with exact rational entries."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __init__(self, gram: Sequence[Sequence]):
        g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def diagonal(cls, entries: Iterable) -> "QuadraticForm":
        e = [Fraction(x) for x in entries]
        return cls([[e[i] if i == j else 0 for j in range(len(e))] for i in range(len(e))])

    @property
    def dim(self) -> int:
        return len(self.gram)

    def determinant(self) -> Fraction:
        return _det([list(r) for r in self.gram])

    def transform(self, M) -> "QuadraticForm":
        """M^T G M."""
        n = self.dim
        G = self.gram
        out = [[sum(M[k][i] * G[k][l] * M[l][j] for k in range(n) for l in range(n))
                for j in range(n)] for i in range(n)]
        return QuadraticForm(out)


def _det(A: list[list[Fraction]]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in A]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    return det


def diagonalize(Q: QuadraticForm) -> list[Fraction]:
    """Congruence diagonalization by symmetric Gaussian elimination."""
    G = [list(row) for row in Q.gram]
    n = len(G)
    out = []
    for c in range(n):
        if G[c][c] == 0:
            # find a nonzero diagonal entry further down, or create one
            r = next((r for r in range(c + 1, n) if G[r][r] != 0), None)
            if r is not None:
                G[c], G[r] = G[r], G[c]
                for row in G:
                    row[c], row[r] = row[r], row[c]
            else:
                r = next((r for r in range(c + 1, n) if G[c][r] != 0), None)
                if r is None:
                    raise ValueError("degenerate quadratic form")
                # e_c <- e_c + e_r gives G[c][c] = 2 G[c][r]
                for k in range(n):
                    G[c][k] += G[r][k]
                for k in range(n):
                    G[k][c] += G[k][r]
        p = G[c][c]
        out.append(p)
        for r in range(c + 1, n):
            f = G[r][c] / p
            if f:
                for k in range(c, n):
                    G[r][k] -= f * G[c][k]
                for k in range(c, n):
                    G[k][r] = G[r][k]
    if any(a == 0 for a in out):
        raise ValueError("degenerate quadratic form")
    return out


def signature(Q: QuadraticForm) -> tuple[int, int]:
    d = diagonalize(Q)
    pos = sum(1 for a in d if a > 0)
    return pos, len(d) - pos


def hasse_invariant(Q: QuadraticForm, v: Place) -> int:
    """eps_v(Q) = prod_{i<j} (a_i, a_j)_v over any diagonalization."""
    return _hasse_of_diagonal(diagonalize(Q), v)


def _hasse_of_diagonal(d: Sequence[Fraction], v: Place) -> int:
    s = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            s *= hilbert_symbol(d[i], d[j], v)
    return s


def witness_places(*forms: QuadraticForm) -> list[Place]:
    """inf, 2 and every prime in a diagonal entry of one of the forms."""
    entries = []
    for Q in forms:
        entries += diagonalize(Q)
    return relevant_places(*entries)


def is_equivalent_over_Q(Q1: QuadraticForm, Q2: QuadraticForm) -> bool:
    """Hasse-Minkowski: dimension, determinant class, signature and all eps_v."""
    if Q1.dim != Q2.dim:
        return False
    d1, d2 = diagonalize(Q1), diagonalize(Q2)
    if squarefree_part(Q1.determinant()) != squarefree_part(Q2.determinant()):
        return False
    if signature(Q1) != signature(Q2):
        return False
    places = relevant_places(*d1, *d2)
    return all(_hasse_of_diagonal(d1, v) == _hasse_of_diagonal(d2, v) for v in places)


def power_sums(f: RationalPoly, k: int) -> list[Fraction]:
    """p_0..p_k of the roots of f via Newton's identities."""
    f = f.monic()
    n = f.degree
    # e_i with f = x^n - e1 x^{n-1} + e2 x^{n-2} - ...
    e = [Fraction(1)] + [(-1) ** i * f.coeffs[n - i] for i in range(1, n + 1)]
    p = [Fraction(n)]
    for m in range(1, k + 1):
        s = Fraction(0)
        for i in range(1, min(m, n) + 1):
            term = e[i] * (p[m - i] if m != i else 1)
            if m == i:
                term *= m
            s += (-1) ** (i - 1) * term
        p.append(s)
    return p


def trace_form(quartic: RationalPoly) -> QuadraticForm:
    """Gram matrix of x -> Tr(x^2) on the power basis: entries p_{i+j}."""
    f = quartic.monic()
    n = f.degree
    if n != 4:
        raise ValueError("trace_form expects a quartic")
    if not f.is_squarefree():
        raise ValueError("trace_form needs a squarefree quartic")
    p = power_sums(f, 2 * n - 2)
    return QuadraticForm([[p[i + j] for j in range(n)] for i in range(n)])


def reference_form(D) -> QuadraticForm:
    """<1, 1, 2, 2D>."""
    D = Fraction(D)
    if D == 0:
        raise ValueError("reference form needs D != 0")
    return QuadraticForm.diagonal([1, 1, 2, 2 * D])


class Br2Element(frozenset):
    """Element of Br_2(Q), stored as the set of places with local invariant -1."""

    def __new__(cls, places: Iterable[Place] = ()):
        return super().__new__(cls, places)

    def __add__(self, other: "Br2Element") -> "Br2Element":
        return Br2Element(self.symmetric_difference(other))

    @property
    def is_trivial(self) -> bool:
        return not self

    def sorted_places(self) -> list[Place]:
        finite = sorted(p for p in self if p != INF)
        return ([INF] if INF in self else []) + finite

    def to_json(self) -> str:
        return json.dumps([str(p) if p == INF else p for p in self.sorted_places()])

    @classmethod
    def from_json(cls, text: str) -> "Br2Element":
        return cls(INF if p == INF else int(p) for p in json.loads(text))

    def __repr__(self):
        return f"Br2Element({self.sorted_places()})"


def br2_add(e1: Br2Element, e2: Br2Element) -> Br2Element:
    return e1 + e2


def obstruction_class(quartic: RationalPoly) -> Br2Element:
    """Obstruction to embedding the S4 closure of a quartic field into a 2+S4 extension."""
    d = poly_discriminant(quartic.monic())
    if d > 0:
        raise ValueError("signature mismatch case out of scope (positive discriminant)")
    Q = trace_form(quartic)
    R = reference_form(squarefree_part(d))
    dq, dr = diagonalize(Q), diagonalize(R)
    places = relevant_places(*dq, *dr)
    return Br2Element(v for v in places
                      if v != INF and _hasse_of_diagonal(dq, v) != _hasse_of_diagonal(dr, v))


def witt_sum_check(q1: RationalPoly, q2: RationalPoly, q3: RationalPoly, D_L: int) -> bool:
    """eps_v(Tr q3) = eps_v(Tr q1) eps_v(Tr q2) (2, D_L)_v at every place."""
    classes = {squarefree_part(poly_discriminant(q.monic())) for q in (q1, q2, q3)}
    if classes != {squarefree_part(D_L)}:
        raise ValueError("discriminant classes of the quartics and D_L disagree")
    diags = [diagonalize(trace_form(q)) for q in (q1, q2, q3)]
    places = relevant_places(*(a for d in diags for a in d), D_L)
    for v in places:
        e1, e2, e3 = (_hasse_of_diagonal(d, v) for d in diags)
        if e3 != e1 * e2 * hilbert_symbol(2, D_L, v):
            return False
    return True
