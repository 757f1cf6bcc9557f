"""q-expansions of integral and half-integral weight forms.

Coefficients live in Q(sqrt(-2)); each is stored as a pair (x, y) of exact
rationals meaning x + y sqrt(-2).  Expansions carry weight, level and a
character tag (1 for trivial, otherwise the integer D of the Kronecker
character (D/.)).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import arith

ZERO = Fraction(0)


def _f(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def qmul(a: tuple, b: tuple) -> tuple:
    """(x1 + y1 s)(x2 + y2 s) with s^2 = -2."""
    return (a[0] * b[0] - 2 * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


class QExpansion:
    """Truncated series c_0 + c_1 q + ... + c_B q^B."""

    __slots__ = ("re", "im", "weight", "level", "character")

    def __init__(self, re: Iterable, im: Iterable | None = None, *, weight=None,
                 level: int | None = None, character: int = 1):
        re = tuple(_f(x) for x in re)
        im = tuple(ZERO for _ in re) if im is None else tuple(_f(y) for y in im)
        if len(im) != len(re):
            raise ValueError("real and sqrt(-2) parts must have the same length")
        self.re = re
        self.im = im
        self.weight = None if weight is None else _f(weight)
        self.level = level
        self.character = character

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], **meta) -> "QExpansion":
        return cls([Fraction(int(c)) for c in coeffs], **meta)

    @classmethod
    def zero(cls, B: int, **meta) -> "QExpansion":
        return cls([ZERO] * (B + 1), **meta)

    @property
    def B(self) -> int:
        return len(self.re) - 1

    def meta(self) -> dict:
        return dict(weight=self.weight, level=self.level, character=self.character)

    def __len__(self):
        return len(self.re)

    def __getitem__(self, m: int) -> tuple[Fraction, Fraction]:
        return self.re[m], self.im[m]

    def is_rational(self) -> bool:
        return not any(self.im)

    def coefficients(self) -> list[Fraction]:
        if not self.is_rational():
            raise ValueError("expansion has sqrt(-2) parts")
        return list(self.re)

    def truncate(self, B: int) -> "QExpansion":
        if B > self.B:
            raise ValueError(f"cannot extend truncation {self.B} to {B}")
        return QExpansion(self.re[: B + 1], self.im[: B + 1], **self.meta())

    def _binary(self, other, sign):
        B = min(self.B, other.B)
        return QExpansion(
            [self.re[i] + sign * other.re[i] for i in range(B + 1)],
            [self.im[i] + sign * other.im[i] for i in range(B + 1)],
            **self.meta(),
        )

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c, d=0) -> "QExpansion":
        """Multiply by c + d sqrt(-2)."""
        c, d = _f(c), _f(d)
        re = [c * x - 2 * d * y for x, y in zip(self.re, self.im)]
        im = [c * y + d * x for x, y in zip(self.re, self.im)]
        return QExpansion(re, im, **self.meta())

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return self.multiply(other)
        return self.scale(other)

    __rmul__ = __mul__

    def multiply(self, other: "QExpansion", **meta) -> "QExpansion":
        """Cauchy product, truncated to the shorter of the two."""
        B = min(self.B, other.B)
        a = [(m, self[m]) for m in range(B + 1) if self.re[m] or self.im[m]]
        b = [(m, other[m]) for m in range(B + 1) if other.re[m] or other.im[m]]
        if len(a) > len(b):
            a, b = b, a
        re = [ZERO] * (B + 1)
        im = [ZERO] * (B + 1)
        for i, (ax, ay) in a:
            for j, (bx, by) in b:
                k = i + j
                if k > B:
                    break
                re[k] += ax * bx - 2 * ay * by
                im[k] += ax * by + ay * bx
        return QExpansion(re, im, **(meta or self.meta()))

    def conjugate(self) -> "QExpansion":
        return QExpansion(self.re, [-y for y in self.im], **self.meta())

    def real_part(self) -> "QExpansion":
        """(f + conj f) / 2."""
        return QExpansion(self.re, None, **self.meta())

    def imag_part(self) -> "QExpansion":
        """(sqrt(-2)/2) (f - conj f), which equals -2 y."""
        return QExpansion([-2 * y for y in self.im], None, **self.meta())

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        B = min(self.B, other.B)
        return self.re[: B + 1] == other.re[: B + 1] and self.im[: B + 1] == other.im[: B + 1]

    def __repr__(self):
        return f"QExpansion({self.format(20)}, weight={self.weight}, level={self.level})"

    def format(self, upto: int | None = None) -> str:
        upto = self.B if upto is None else min(upto, self.B)
        terms = []
        for m in range(upto + 1):
            x, y = self[m]
            if not x and not y:
                continue
            if y:
                c = f"({x}{'+' if y > 0 else '-'}{abs(y)}*sqrt(-2))"
            else:
                c = str(x)
            mono = "" if m == 0 else ("q" if m == 1 else f"q^{m}")
            if not mono:
                terms.append(c)
            elif c == "1":
                terms.append(mono)
            elif c == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(q^{upto + 1})"

    def to_json(self) -> str:
        return json.dumps({
            "weight": None if self.weight is None else str(self.weight),
            "level": self.level,
            "character": self.character,
            "coefficients": [[str(x), str(y)] for x, y in zip(self.re, self.im)],
        })

    @classmethod
    def from_json(cls, text: str) -> "QExpansion":
        d = json.loads(text)
        re = [Fraction(x) for x, _ in d["coefficients"]]
        im = [Fraction(y) for _, y in d["coefficients"]]
        w = d.get("weight")
        return cls(re, im, weight=None if w is None else Fraction(w),
                   level=d.get("level"), character=d.get("character", 1))


class NotInSpan(ArithmeticError):
    """T(basis[index]) is not a combination of the basis; first bad coefficient given."""

    def __init__(self, index: int, coefficient: int):
        super().__init__(f"image of basis element {index} leaves the span "
                         f"(first mismatch at q^{coefficient})")
        self.index = index
        self.coefficient = coefficient


class InsufficientPrecision(ArithmeticError):
    """The truncated coefficient vectors do not determine the combination."""


# ---- constructions


def theta_unary(n: int, B: int) -> QExpansion:
    """sum_j q^(n j^2), weight 1/2, level 4n, character (n/.)."""
    if n < 1:
        raise ValueError("n must be positive")
    c = [0] * (B + 1)
    j = 0
    while n * j * j <= B:
        c[n * j * j] += 1 if j == 0 else 2
        j += 1
    return QExpansion.from_ints(c, weight=Fraction(1, 2), level=4 * n, character=n)


def product_weight_3_2(g: QExpansion, d: int, B: int | None = None) -> QExpansion:
    """g * Theta_d for g of weight 1, level n, character (-d/.), d | n."""
    if d <= 0:
        raise ValueError("d must be positive")
    n = g.level
    if n is None or n % d:
        raise ValueError("d must divide the level of g")
    B = g.B if B is None else B
    if B > g.B:
        raise ValueError("truncation of g is too short")
    th = theta_unary(d, B)
    return g.truncate(B).multiply(th, weight=Fraction(3, 2), level=math.lcm(n, 4 * d),
                                  character=1)


def expand_4z(g: QExpansion, B: int) -> QExpansion:
    """g(4z) to q^B."""
    if 4 * g.B < B - 3:
        raise ValueError(f"source truncation {g.B} too short for q^{B} after z -> 4z")
    re = [ZERO] * (B + 1)
    im = [ZERO] * (B + 1)
    for m in range(0, B // 4 + 1):
        re[4 * m], im[4 * m] = g.re[m], g.im[m]
    return QExpansion(re, im, weight=g.weight,
                      level=None if g.level is None else 4 * g.level, character=g.character)


def kohnen_check(F: QExpansion, p: int) -> bool:
    """True iff c_m = 0 whenever m = 1, 2 mod 4."""
    if p % 4 != 3:
        raise ValueError("the plus-space condition is stated for p = 3 mod 4")
    if F.weight is not None and F.weight != Fraction(3, 2):
        raise ValueError("weight 3/2 expansion expected")
    return all(not F.re[m] and not F.im[m] for m in range(F.B + 1) if m % 4 in (1, 2))


def hecke_Tp2(F: QExpansion, p: int, B_out: int) -> QExpansion:
    """b(m) = c(p^2 m) + (-m|p) c(m) + p c(m/p^2), weight 3/2, trivial character."""
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if F.level is not None and F.level % p == 0:
        raise ValueError(f"{p} divides the level {F.level}")
    pp = p * p
    if F.B < pp * B_out:
        raise ValueError(f"truncation {F.B} too short for T_{pp} up to q^{B_out}")
    re, im = [], []
    for m in range(B_out + 1):
        k = arith.kronecker_symbol(-m, p)
        x = F.re[pp * m] + k * F.re[m]
        y = F.im[pp * m] + k * F.im[m]
        if m % pp == 0:
            x += p * F.re[m // pp]
            y += p * F.im[m // pp]
        re.append(x)
        im.append(y)
    return QExpansion(re, im, **F.meta())


# ---- exact linear algebra over Q(sqrt(-2))


def _qinv(a: tuple) -> tuple:
    n = a[0] * a[0] + 2 * a[1] * a[1]
    return (a[0] / n, -a[1] / n)


def _is_zero(a: tuple) -> bool:
    return not a[0] and not a[1]


def _echelon(rows: list[list[tuple]]):
    """Row-reduce in place to reduced echelon form; returns pivot columns."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _qinv(rows[r][c])
        rows[r] = [qmul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [(x[0] - (f[0] * y[0] - 2 * f[1] * y[1]), x[1] - (f[0] * y[1] + f[1] * y[0]))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank_and_basis(expansions: Sequence[QExpansion], B: int) -> tuple[int, list[int]]:
    """Rank of the coefficient vectors c_0..c_B and the indices of an independent
    subset chosen greedily in input order."""
    if any(F.B < B for F in expansions):
        raise ValueError("every expansion must reach q^B")
    echelon: list[tuple[int, list[tuple]]] = []     # (pivot column, row)
    chosen = []
    for idx, F in enumerate(expansions):
        v = [F[m] for m in range(B + 1)]
        for col, row in echelon:
            f = v[col]
            if not _is_zero(f):
                v = [(x[0] - (f[0] * y[0] - 2 * f[1] * y[1]), x[1] - (f[0] * y[1] + f[1] * y[0]))
                     for x, y in zip(v, row)]
        col = next((m for m in range(B + 1) if not _is_zero(v[m])), None)
        if col is None:
            continue
        inv = _qinv(v[col])
        v = [qmul(inv, x) for x in v]
        echelon.append((col, v))
        chosen.append(idx)
    return len(chosen), chosen


def _solve_in_span(basis: Sequence[QExpansion], targets: Sequence[QExpansion], B: int):
    """Coordinates of each target in the basis from coefficients 0..B (rational parts
    and sqrt(-2) parts both used).  Raises InsufficientPrecision / NotInSpan."""
    n, t = len(basis), len(targets)
    rows = [[basis[j][m] for j in range(n)] + [targets[i][m] for i in range(t)]
            for m in range(B + 1)]
    pivots = _echelon(rows)
    basis_piv = [c for c in pivots if c < n]
    if len(basis_piv) < n:
        raise InsufficientPrecision(f"basis has rank {len(basis_piv)} < {n} on q^0..q^{B}")
    coords = []
    for i in range(t):
        x = [rows[r][n + i] for r in range(n)]
        for m in range(B + 1):
            val = (ZERO, ZERO)
            for j in range(n):
                val = (val[0] + (x[j][0] * basis[j][m][0] - 2 * x[j][1] * basis[j][m][1]),
                       val[1] + (x[j][0] * basis[j][m][1] + x[j][1] * basis[j][m][0]))
            if val != targets[i][m]:
                raise NotInSpan(i, m)
        coords.append(x)
    return coords


_MOD = (1 << 61) - 1


class RationalSpan:
    """Exact coordinates in the span of rational expansions.

    Rows m where the basis has full rank are picked modulo a large prime (a
    nonsingular block mod p is nonsingular over Q); the block is inverted
    once and every solution is checked on all rows with integer arithmetic.
    """

    def __init__(self, basis: Sequence[QExpansion]):
        if not all(F.is_rational() for F in basis):
            raise ValueError("RationalSpan expects expansions with rational coefficients")
        self.n = n = len(basis)
        self.B = min(F.B for F in basis)
        # scale each basis vector to integers
        self.scales = [math.lcm(*(c.denominator for c in F.re)) for F in basis]
        self.cols = [[int(c * s) for c in F.re[:self.B + 1]] for F, s in zip(basis, self.scales)]
        echelon: list[tuple[int, list[int]]] = []
        rows = []
        for m in range(self.B + 1):
            v = [c[m] % _MOD for c in self.cols]
            for col, r in echelon:
                if v[col]:
                    f = v[col]
                    v = [(x - f * y) % _MOD for x, y in zip(v, r)]
            col = next((j for j in range(n) if v[j]), None)
            if col is None:
                continue
            inv = pow(v[col], -1, _MOD)
            echelon.append((col, [x * inv % _MOD for x in v]))
            rows.append(m)
            if len(rows) == n:
                break
        if len(rows) < n:
            raise InsufficientPrecision(f"basis has rank {len(rows)} < {n} on q^0..q^{self.B}")
        self.rows = rows
        self.max_row = rows[-1]
        self.inverse = _invert([[Fraction(self.cols[j][m]) for j in range(n)] for m in rows])

    def solve(self, targets: Sequence[QExpansion], B: int) -> list[list[Fraction]]:
        """Coordinates (w.r.t. the unscaled basis) of each target, checked on q^0..q^B."""
        if B > self.B or B < self.max_row:
            raise InsufficientPrecision(f"need {self.max_row} <= B <= {self.B}")
        out = []
        for i, T in enumerate(targets):
            if T.B < B or not T.is_rational():
                raise ValueError("targets must be rational and reach q^B")
            y = [T.re[m] for m in self.rows]
            z = [sum((a * b for a, b in zip(row, y)), ZERO) for row in self.inverse]
            D = math.lcm(*(c.denominator for c in z))
            zi = [int(c * D) for c in z]
            for m in range(B + 1):
                if sum(col[m] * c for col, c in zip(self.cols, zi)) != T.re[m] * D:
                    raise NotInSpan(i, m)
            out.append([c * s for c, s in zip(z, self.scales)])
        return out


def _invert(A: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(A)
    M = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c])
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [r[n:] for r in M]


def hecke_matrix(basis: Sequence[QExpansion], p: int, B_express: int = 50,
                 retry: bool = True, span: RationalSpan | None = None) -> list[list[Fraction]]:
    """M with T_{p^2}(basis_i) = sum_j M[j][i] basis_j, exact; rational bases only.

    The images are checked on q^0..q^B with B at least B_express and at least
    the last pivot row of the basis.  On InsufficientPrecision in the general
    path the bound is doubled while the truncation allows (at most B / p^2)
    when ``retry`` is set.
    """
    ceiling = min(F.B for F in basis) // (p * p)
    if span is not None or all(F.is_rational() for F in basis):
        span = span or RationalSpan([F.truncate(min(F.B, ceiling)) for F in basis])
        B = max(B_express, span.max_row)
        if B > ceiling:
            raise InsufficientPrecision(f"need {B} coefficients of T_{p * p}; only {ceiling} "
                                        "available; extend the truncation")
        coords = span.solve([hecke_Tp2(F, p, B) for F in basis], B)
        n = len(basis)
        return [[coords[i][j] for i in range(n)] for j in range(n)]
    B = B_express
    while True:
        if B > ceiling:
            raise InsufficientPrecision(f"need more than {ceiling} coefficients to express "
                                        f"T_{p * p}; extend the truncation")
        try:
            return _hecke_matrix_at(basis, p, B)
        except InsufficientPrecision:
            if not retry or B == ceiling:
                raise
            B = min(2 * B, ceiling)


def _nullspace(M: list[list[Fraction]]) -> list[list[Fraction]]:
    rows = [[(x, ZERO) for x in r] for r in M]
    n = len(M[0]) if M else 0
    pivots = _echelon(rows) if rows else []
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        v = [ZERO] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f][0]
        out.append(v)
    return out


def combine(basis: Sequence[QExpansion], coeffs: Sequence, **meta) -> QExpansion:
    """sum_j coeffs[j] * basis[j] over the common truncation."""
    B = min(F.B for F in basis)
    re = [ZERO] * (B + 1)
    im = [ZERO] * (B + 1)
    for c, F in zip(coeffs, basis):
        c = _f(c)
        if not c:
            continue
        for m in range(B + 1):
            if F.re[m]:
                re[m] += c * F.re[m]
            if F.im[m]:
                im[m] += c * F.im[m]
    return QExpansion(re, im, **(meta or basis[0].meta()))


def eigenform_search(basis: Sequence[QExpansion], E, primes: Sequence[int],
                     B_express: int = 50, leading=1):
    """The combination spanning the common a_p(E)-eigenspace of T_{p^2}, p in primes.

    Returns (coefficients, expansion) normalized so that the first nonzero
    coefficient of the expansion equals ``leading``.
    """
    n = len(basis)
    stacked: list[list[Fraction]] = []
    ceiling = min(F.B for F in basis) // max(p * p for p in primes)
    span = RationalSpan([F.truncate(ceiling) for F in basis])
    for p in primes:
        if not E.has_good_reduction(p):
            raise ValueError(f"{p} is a bad prime for the curve")
        M = hecke_matrix(basis, p, B_express, span=span)
        a = E.ap(p)
        stacked += [[M[i][j] - (a if i == j else 0) for j in range(n)] for i in range(n)]
    null = _nullspace(stacked)
    if not null:
        raise ArithmeticError("empty intersection of eigenspaces")
    if len(null) > 1:
        raise ArithmeticError(f"eigenspace has dimension {len(null)}; needs more primes")
    x = null[0]
    F = combine(basis, x, weight=Fraction(3, 2), level=basis[0].level, character=1)
    m0 = next((m for m in range(F.B + 1) if F.re[m] or F.im[m]), None)
    if m0 is None:
        raise ArithmeticError("eigenvector gives the zero expansion")
    s = _f(leading) / F.re[m0]
    return [s * c for c in x], F.scale(s)


def is_eigenform(F: QExpansion, p: int, eigenvalue, B_out: int) -> bool:
    return hecke_Tp2(F, p, B_out) == F.truncate(B_out).scale(eigenvalue)


# ---- dimensions


def _cusps_gamma0(N: int):
    """(c, number of cusps with denominator c, width) for c | N."""
    out = []
    for c in range(1, N + 1):
        if N % c == 0:
            g = math.gcd(c, N // c)
            out.append((c, _phi(g), N // math.gcd(c * c, N)))
    return out


def _phi(n: int) -> int:
    r = n
    for p in arith.factor_int(n):
        r = r // p * (p - 1)
    return r


def _index_gamma0(N: int) -> int:
    r = N
    for p in arith.factor_int(N):
        r = r // p * (p + 1)
    return r


def _genus_gamma0_4(N: int) -> int:
    """Genus of X_0(N) for 4 | N (no elliptic points)."""
    h = sum(k for _, k, _ in _cusps_gamma0(N))
    return (_index_gamma0(N) // 6 - h + 2) // 2


def _fundamental_discriminant(t: int) -> int:
    d = arith.squarefree_part(t)
    return d if d % 4 == 1 else 4 * d


def _totally_even(D: int) -> bool:
    """Every prime-discriminant factor of the fundamental discriminant D is positive."""
    rest = D
    for p in arith.factor_int(abs(D)):
        if p == 2:
            continue
        pstar = p if p % 4 == 1 else -p
        if pstar < 0:
            return False
        rest //= pstar
    return rest in (1, 8)


def dim_weight_1_2(N: int, cusp: bool = False) -> int:
    """Theta series theta(psi, t z) with psi = (t/.) primitive and 4 r^2 t | N."""
    if N % 4:
        raise ValueError("level must be divisible by 4")
    count = 0
    for t in range(1, N // 4 + 1):
        if (N // 4) % t:
            continue
        if math.isqrt(t) ** 2 == t:
            r, totally_even = 1, True
        else:
            D = _fundamental_discriminant(t)
            r = abs(D)
            totally_even = _totally_even(D)
        if (N // 4) % (r * r * t):
            continue
        if cusp and totally_even:
            continue
        count += 1
    return count


def dim_weight_3_2(level: int, cusp: bool = True) -> int:
    """dim S_{3/2}(Gamma_0(N)) (or M_{3/2} with cusp=False), trivial character.

    Riemann-Roch on X_0(N) with the theta^3 multiplier: cusps above 1/2 of
    X_0(4) carry the fractional order 3w/4 (w the width), the others order 0.
    The dual term is the weight-1/2 space, counted by Serre-Stark.
    """
    N = level
    if N % 4:
        raise ValueError("level must be divisible by 4")
    g = _genus_gamma0_4(N)
    irregular = [(k, w) for c, k, w in _cusps_gamma0(N) if c % 4 == 2]
    regular = sum(k for c, k, _ in _cusps_gamma0(N) if c % 4 != 2)
    if cusp:
        deg = sum(k * ((3 * w + 3) // 4 - 1) for k, w in irregular) - regular
        return deg - g + 1 + dim_weight_1_2(N)
    deg = sum(k * ((3 * w) // 4) for k, w in irregular)
    return deg - g + 1 + dim_weight_1_2(N, cusp=True)
