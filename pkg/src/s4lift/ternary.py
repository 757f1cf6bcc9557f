"""Positive-definite integral ternary quadratic forms.

A form is stored by its six coefficients
    Q(X) = a1 X1^2 + a2 X2^2 + a3 X3^2 + a23 X2 X3 + a13 X1 X3 + a12 X1 X2.
Internally most work happens on the even Gram matrix S = 2A (integer entries,
even diagonal), for which Q(v) = v^T S v / 2.

Conventions: disc(Q) = 4 det(A) = det(S) / 2, and level(Q) is the least N
such that N S^{-1} is integral with even diagonal.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, astuple
from fractions import Fraction
from functools import reduce
from itertools import product
from pathlib import Path

import numpy as np

from .halfint import QExpansion

DATA = Path(__file__).with_name("data")


@dataclass(frozen=True, order=True)
class TernaryForm:
    a1: int
    a2: int
    a3: int
    a23: int
    a13: int
    a12: int

    def __post_init__(self):
        S = self.gram2()
        m1 = S[0][0]
        m2 = S[0][0] * S[1][1] - S[0][1] ** 2
        if m1 <= 0 or m2 <= 0 or _det3(S) <= 0:
            raise ValueError(f"{self.coefficients} is not positive definite")

    @property
    def coefficients(self) -> tuple[int, ...]:
        return astuple(self)

    def gram2(self) -> list[list[int]]:
        """The even Gram matrix 2A."""
        return [
            [2 * self.a1, self.a12, self.a13],
            [self.a12, 2 * self.a2, self.a23],
            [self.a13, self.a23, 2 * self.a3],
        ]

    @classmethod
    def from_gram2(cls, S) -> "TernaryForm":
        S = [[int(x) for x in row] for row in S]
        if any(S[i][i] % 2 for i in range(3)):
            raise ValueError("even Gram matrix needs even diagonal")
        return cls(S[0][0] // 2, S[1][1] // 2, S[2][2] // 2, S[1][2], S[0][2], S[0][1])

    def __call__(self, x1, x2, x3):
        return (self.a1 * x1 * x1 + self.a2 * x2 * x2 + self.a3 * x3 * x3
                + self.a23 * x2 * x3 + self.a13 * x1 * x3 + self.a12 * x1 * x2)

    def transform(self, M) -> "TernaryForm":
        """The form x -> Q(M x) (columns of M are the new basis vectors)."""
        S = np.array(self.gram2(), dtype=object)
        M = np.array(M, dtype=object)
        return TernaryForm.from_gram2(M.T.dot(S).dot(M))

    def to_json(self) -> dict:
        return dict(zip(("a1", "a2", "a3", "a23", "a13", "a12"), self.coefficients))

    @classmethod
    def from_json(cls, d: dict) -> "TernaryForm":
        return cls(*(int(d[k]) for k in ("a1", "a2", "a3", "a23", "a13", "a12")))


def _det3(S) -> int:
    return (S[0][0] * (S[1][1] * S[2][2] - S[1][2] * S[2][1])
            - S[0][1] * (S[1][0] * S[2][2] - S[1][2] * S[2][0])
            + S[0][2] * (S[1][0] * S[2][1] - S[1][1] * S[2][0]))


def _adj3(S) -> list[list[int]]:
    def minor(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return S[r[0]][c[0]] * S[r[1]][c[1]] - S[r[0]][c[1]] * S[r[1]][c[0]]
    return [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]


def _level_of_gram2(S) -> int:
    d = _det3(S)
    adj = _adj3(S)
    n = 1
    for i in range(3):
        for j in range(3):
            m = d if i != j else 2 * d
            n = math.lcm(n, m // math.gcd(adj[i][j], m))
    return n


def invariants(T: TernaryForm) -> tuple[int, int]:
    """(discriminant, level) of a form."""
    S = T.gram2()
    return _det3(S) // 2, _level_of_gram2(S)


def discriminant(T: TernaryForm) -> int:
    return _det3(T.gram2()) // 2


def level(T: TernaryForm) -> int:
    return _level_of_gram2(T.gram2())


def has_square_discriminant(T: TernaryForm) -> bool:
    d = discriminant(T)
    return math.isqrt(d) ** 2 == d


def dual_form(T: TernaryForm, N: int | None = None) -> TernaryForm:
    """The form with even Gram matrix N (2A)^{-1}; N defaults to the level.

    For N = level(T) this is an involution on classes of level N, and
    disc(T) * disc(dual) = N^3 / 4.
    """
    S = T.gram2()
    N = level(T) if N is None else N
    d = _det3(S)
    adj = _adj3(S)
    S2 = [[Fraction(N * adj[i][j], d) for j in range(3)] for i in range(3)]
    if any(x.denominator != 1 for row in S2 for x in row) or any(S2[i][i] % 2 for i in range(3)):
        raise ValueError(f"{N} is not a multiple of the level")
    return TernaryForm.from_gram2([[int(x) for x in row] for row in S2])


# --------------------------------------------------------------------------
# short vectors


def _lll_gram(S, delta=Fraction(99, 100)):
    """LLL on a positive definite Gram matrix; returns (reduced Gram, basis change)."""
    n = len(S)
    G = [[Fraction(x) for x in row] for row in S]
    B = [[int(i == j) for j in range(n)] for i in range(n)]  # rows = basis vectors

    def gram(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(n) for j in range(n))

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        Bn = [Fraction(0)] * n
        # Gram-Schmidt in the abstract inner product, tracked by coefficients
        coeff = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i):
                mu[i][j] = sum(
                    coeff_j * gram(B[i], B[k]) for k, coeff_j in enumerate(coeff[j])
                ) / Bn[j]
                coeff[i] = [coeff[i][k] - mu[i][j] * coeff[j][k] for k in range(n)]
            Bn[i] = sum(
                coeff[i][a] * coeff[i][b] * gram(B[a], B[b]) for a in range(n) for b in range(n)
            )
        return mu, Bn

    k = 1
    while k < n:
        mu, Bn = gso()
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [B[k][i] - q * B[j][i] for i in range(n)]
                mu, Bn = gso()
        if Bn[k] >= (delta - mu[k][k - 1] ** 2) * Bn[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            k = max(k - 1, 1)
    M = [[B[j][i] for j in range(n)] for i in range(n)]  # columns = basis vectors
    Sred = [[int(gram(B[i], B[j])) for j in range(n)] for i in range(n)]
    return Sred, M


def short_vectors(S, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """All v in Z^3 with v^T S v / 2 <= bound, for an even Gram matrix S.

    Fincke-Pohst style: nested bounds from the LDL^T decomposition, with the
    innermost coordinate vectorized and every norm evaluated exactly.
    Returns (vectors, norms) as int64 arrays.
    """
    A = np.array(S, dtype=float) / 2.0
    # LDL^T with the last coordinate outermost
    q33 = A[2, 2]
    # conditional forms: Q = q11 (x1 + c12 x2 + c13 x3)^2 + q22 (x2 + c23 x3)^2 + q33' x3^2
    q11 = A[0, 0]
    c12 = A[0, 1] / q11
    c13 = A[0, 2] / q11
    q22 = A[1, 1] - A[0, 1] ** 2 / q11
    c23 = (A[1, 2] - A[0, 1] * A[0, 2] / q11) / q22
    q33 = A[2, 2] - A[0, 2] ** 2 / q11 - q22 * c23 ** 2
    eps = 1e-7 * max(1.0, bound)
    Si = [[int(x) for x in row] for row in S]
    vecs = []
    r3 = math.sqrt((bound + eps) / q33)
    for x3 in range(-int(math.floor(r3)), int(math.floor(r3)) + 1):
        rem3 = bound + eps - q33 * x3 * x3
        if rem3 < 0:
            continue
        ctr2 = -c23 * x3
        r2 = math.sqrt(rem3 / q22)
        for x2 in range(int(math.ceil(ctr2 - r2)), int(math.floor(ctr2 + r2)) + 1):
            rem2 = rem3 - q22 * (x2 + c23 * x3) ** 2
            if rem2 < 0:
                continue
            ctr1 = -c12 * x2 - c13 * x3
            r1 = math.sqrt(rem2 / q11)
            lo, hi = int(math.ceil(ctr1 - r1)), int(math.floor(ctr1 + r1))
            if lo > hi:
                continue
            x1 = np.arange(lo, hi + 1, dtype=np.int64)
            block = np.empty((len(x1), 3), dtype=np.int64)
            block[:, 0] = x1
            block[:, 1] = x2
            block[:, 2] = x3
            vecs.append(block)
    if not vecs:
        return np.zeros((0, 3), dtype=np.int64), np.zeros(0, dtype=np.int64)
    V = np.concatenate(vecs)
    Sn = np.array(Si, dtype=np.int64)
    norms = np.einsum("ij,jk,ik->i", V, Sn, V) // 2
    keep = norms <= bound
    return V[keep], norms[keep]


# --------------------------------------------------------------------------
# reduction and equivalence


def _canonical_key(T: TernaryForm) -> tuple[int, ...]:
    S, M = _lll_gram(T.gram2())
    R = max(S[i][i] for i in range(3)) // 2
    V, norms = short_vectors(S, R)
    order = np.lexsort((V[:, 2], V[:, 1], V[:, 0], norms))
    V, norms = V[order], norms[order]
    Sn = np.array(S, dtype=np.int64)
    nonzero = norms > 0
    V, norms = V[nonzero], norms[nonzero]
    m1 = int(norms[0])
    first = V[norms == m1]
    best = None
    vl = [tuple(int(c) for c in v) for v in V]
    nl = [int(x) for x in norms]
    P = V.dot(Sn)  # rows: S v
    for v in first:
        v = tuple(int(c) for c in v)
        # candidates for the second vector: primitive together with v
        cand2 = []
        a2 = None
        for w, nw in zip(vl, nl):
            if a2 is not None and nw > a2:
                break
            minors = (v[0] * w[1] - v[1] * w[0], v[0] * w[2] - v[2] * w[0], v[1] * w[2] - v[2] * w[1])
            if math.gcd(*minors) == 1:
                a2 = nw
                cand2.append(w)
        for w in cand2:
            a3 = None
            for u, nu in zip(vl, nl):
                if a3 is not None and nu > a3:
                    break
                if abs(_det3([v, w, u])) == 1:
                    a3 = nu
                    S2 = np.array([v, w, u], dtype=np.int64).dot(Sn).dot(np.array([v, w, u]).T)
                    a23, a13, a12 = int(S2[1, 2]), int(S2[0, 2]), int(S2[0, 1])
                    key = (m1, a2, a3, abs(a23), abs(a13), abs(a12), -a23, -a13, -a12)
                    if best is None or key < best:
                        best = key
    return best


def reduce(T: TernaryForm) -> TernaryForm:
    """Canonical reduced representative of the class of T.

    Among all bases (v1, v2, v3) that realize the successive minima, picks the
    one whose coefficient tuple is lexicographically least by
    (a1, a2, a3, |a23|, |a13|, |a12|), preferring positive off-diagonal
    entries.  The result satisfies 0 < a1 <= a2 <= a3, |a12|, |a13| <= a1 and
    |a23| <= a2, and two forms are equivalent iff they reduce to the same form.
    """
    k = _canonical_key(T)
    return TernaryForm(k[0], k[1], k[2], -k[6], -k[7], -k[8])


def is_equivalent(T1: TernaryForm, T2: TernaryForm) -> bool:
    if invariants(T1) != invariants(T2):
        return False
    return reduce(T1) == reduce(T2)


def is_reduced(T: TernaryForm) -> bool:
    return (0 < T.a1 <= T.a2 <= T.a3 and abs(T.a23) <= T.a2
            and abs(T.a13) <= T.a1 and abs(T.a12) <= T.a1)


# --------------------------------------------------------------------------
# enumeration


def _candidates_with_det(det_s: int):
    """Forms with |a12|,|a13| <= a1 <= a2 <= a3, |a23| <= a2 and det(2A) = det_s.

    Every class has a Minkowski reduced member in this box, and Minkowski
    reduced forms satisfy a1 a2 a3 <= 2 det(A) = det_s / 4.
    """
    bound = Fraction(det_s, 4)
    a1 = 1
    while a1 ** 3 <= bound:
        a2 = a1
        while a1 * a2 * a2 <= bound:
            for a12 in range(-a1, a1 + 1):
                m2 = 4 * a1 * a2 - a12 * a12
                if m2 <= 0:
                    continue
                for a13 in range(-a1, a1 + 1):
                    a23 = np.arange(-a2, a2 + 1, dtype=np.int64)
                    # det(S) = 2 a3 m2 + rest, rest = det with a3 = 0
                    rest = (-2 * a1 * a23 * a23 + a12 * a13 * a23 * 2 - 2 * a2 * a13 * a13)
                    num = det_s - rest
                    ok = (num > 0) & (num % (2 * m2) == 0)
                    for i in np.nonzero(ok)[0]:
                        a3 = int(num[i] // (2 * m2))
                        if a3 >= a2 and a1 * a2 * a3 <= bound:
                            yield (a1, a2, a3, int(a23[i]), a13, a12)
            a2 += 1
        a1 += 1


def _level_divides(S, N: int) -> bool:
    d = _det3(S)
    adj = _adj3(S)
    return all((N * adj[i][j]) % (d if i != j else 2 * d) == 0 for i in range(3) for j in range(3))


def forms_with_disc(disc: int, N: int, exact: bool = True) -> list[TernaryForm]:
    """Reduced class representatives of discriminant ``disc`` whose level is N
    (or divides N when ``exact`` is false)."""
    found = set()
    for c in _candidates_with_det(2 * disc):
        S = [[2 * c[0], c[5], c[4]], [c[5], 2 * c[1], c[3]], [c[4], c[3], 2 * c[2]]]
        if exact:
            if _level_of_gram2(S) != N:
                continue
        elif not _level_divides(S, N):
            continue
        found.add(reduce(TernaryForm(*c)))
    return sorted(found)


def possible_discriminants(N: int) -> list[int]:
    """Discriminants d allowed at level N: N | 4d and d | N^3 / 4 (dual integrality)."""
    out = []
    for d in _divisors(N ** 3):
        if (4 * d) % N == 0 and (N ** 3) % (4 * d) == 0:
            out.append(d)
    return sorted(out)


def _divisors(n: int) -> list[int]:
    import sympy
    return [int(d) for d in sympy.divisors(n)]


def in_kohnen_space(T: TernaryForm) -> bool:
    """True when Q only takes values = 0, 3 mod 4 (theta lies in the plus space)."""
    return all(T(*v) % 4 in (0, 3) for v in product(range(4), repeat=3))


def enumerate_classes(N: int, require_square_disc: bool = True,
                      kohnen: bool = False) -> list[TernaryForm]:
    """All classes of positive definite ternary forms of level N.

    ``kohnen`` keeps only the forms whose theta series satisfies the Kohnen
    plus-space condition.

    Each discriminant d is paired with its dual discriminant N^3/(4d); the
    smaller side is enumerated directly and the other obtained by the
    level-N duality, which keeps the search space small at large d.
    """
    out = set()
    for d in possible_discriminants(N):
        if require_square_disc and math.isqrt(d) ** 2 != d:
            continue
        dd = N ** 3 // (4 * d)
        if d <= dd:
            out.update(forms_with_disc(d, N))
        else:
            # level-N forms of disc d are the N-duals of forms of disc dd whose
            # level divides N; the dual's level can drop, so filter again
            for T in forms_with_disc(dd, N, exact=False):
                D = dual_form(T, N)
                if level(D) == N:
                    out.add(reduce(D))
    if kohnen:
        out = {T for T in out if in_kohnen_space(T)}
    return sorted(out, key=lambda T: (discriminant(T), T.coefficients))


# --------------------------------------------------------------------------
# theta series


def representation_numbers(T: TernaryForm, B: int) -> list[int]:
    """r(m) = #{v : Q(v) = m} for 0 <= m <= B."""
    _, norms = short_vectors(T.gram2(), B)
    counts = np.bincount(norms, minlength=B + 1)
    return [int(x) for x in counts[: B + 1]]


def representation_numbers_box(T: TernaryForm, B: int, box: int) -> list[int]:
    """Brute force count in the box |v|_inf <= box; test oracle only."""
    r = [0] * (B + 1)
    for v in product(range(-box, box + 1), repeat=3):
        m = T(*v)
        if m <= B:
            r[m] += 1
    return r


def theta_series(T: TernaryForm, B: int) -> QExpansion:
    disc, lev = invariants(T)
    char = 1 if math.isqrt(disc) ** 2 == disc else disc
    return QExpansion.from_ints(representation_numbers(T, B), weight=Fraction(3, 2),
                                level=lev, character=char)


# --------------------------------------------------------------------------
# table I/O


def load_table(N: int) -> list[TernaryForm]:
    """The printed class table for level N (172, 344, 2252 or 2572)."""
    rows = []
    for line in (DATA / f"table_{N}.tsv").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        rows.append(TernaryForm(*map(int, line.split("\t")[1:])))
    return rows


def to_tsv(forms, labels=None) -> str:
    lines = ["label\ta1\ta2\ta3\ta23\ta13\ta12"]
    for i, T in enumerate(forms):
        lab = labels[i] if labels else f"Q{i + 1}"
        lines.append("\t".join([lab] + [str(c) for c in T.coefficients]))
    return "\n".join(lines) + "\n"


def to_json(forms) -> str:
    return json.dumps([T.to_json() for T in forms])
