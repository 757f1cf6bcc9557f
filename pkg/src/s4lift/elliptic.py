"""Weierstrass curves over Q: group law, 2-division cubic, halving quartics and a_p."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .arith import RationalPoly, factor_int, kronecker_symbol

DATA = Path(__file__).with_name("data")


@dataclass(frozen=True)
class CurvePoint:
    """Affine point (x, y); ``x is None`` encodes the point at infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"[{self.x}, {self.y}]"


O = CurvePoint()


def point(x, y) -> CurvePoint:
    return CurvePoint(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __init__(self, a1, a2, a3, a4, a6):
        for name, v in zip(("a1", "a2", "a3", "a4", "a6"), (a1, a2, a3, a4, a6)):
            object.__setattr__(self, name, Fraction(v))
        if self.discriminant == 0:
            raise ValueError("singular curve")

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        a1, a2, a3, a4, a6 = self.ainvs
        x, y = P.x, P.y
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def _check(self, P):
        if not self.contains(P):
            raise ValueError(f"{P} is not on the curve")

    def negate(self, P: CurvePoint) -> CurvePoint:
        self._check(P)
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        self._check(P)
        self._check(Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, a6 = self.ainvs
        if P.x == Q.x:
            if P.y + Q.y + a1 * Q.x + a3 == 0:
                return O
            lam = (3 * P.x ** 2 + 2 * a2 * P.x + a4 - a1 * P.y) / (2 * P.y + a1 * P.x + a3)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        nu = P.y - lam * P.x
        x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(x3, y3)

    def double(self, P: CurvePoint) -> CurvePoint:
        return self.add(P, P)

    def multiply(self, n: int, P: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.multiply(-n, self.negate(P))
        R, A = O, P
        while n:
            if n & 1:
                R = self.add(R, A)
            A = self.add(A, A)
            n >>= 1
        return R

    def two_division_cubic(self) -> RationalPoly:
        """4x^3 + b2 x^2 + 2 b4 x + b6; its roots are the x-coordinates of E[2]."""
        b2, b4, b6, _ = self.b_invariants
        return RationalPoly([b6, 2 * b4, b2, 4])

    def duplication_numerator(self) -> RationalPoly:
        """x^4 - b4 x^2 - 2 b6 x - b8, so that x(2Q) = num / two_division_cubic."""
        b2, b4, b6, b8 = self.b_invariants
        return RationalPoly([-b8, -2 * b6, -b4, 0, 1])

    def halving_quartic(self, P: CurvePoint) -> RationalPoly:
        """Monic quartic whose roots are the x(Q) with 2Q = P."""
        self._check(P)
        if P.is_infinity or self.double(P).is_infinity:
            raise ValueError("halving quartic needs a point of order > 2")
        f = (self.duplication_numerator() - P.x * self.two_division_cubic()).monic()
        if not f.is_squarefree():
            raise ValueError(f"halving quartic of {P} is not squarefree")
        return f

    def _integral_ainvs_mod(self, p: int) -> list[int]:
        out = []
        for a in self.ainvs:
            if a.denominator % p == 0:
                raise ValueError(f"model is not integral at {p}")
            out.append(a.numerator * pow(a.denominator, -1, p) % p)
        return out

    def has_good_reduction(self, p: int) -> bool:
        try:
            self._integral_ainvs_mod(p)
        except ValueError:
            return False
        return self.discriminant.numerator % p != 0

    def count_points(self, p: int) -> int:
        """#E(F_p) including the point at infinity."""
        if not self.has_good_reduction(p):
            raise ValueError(f"bad reduction at {p}")
        a1, a2, a3, a4, a6 = self._integral_ainvs_mod(p)
        if p == 2:
            n = 1
            for x in range(2):
                for y in range(2):
                    if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                        n += 1
            return n
        b2 = (a1 * a1 + 4 * a2) % p
        b4 = (2 * a4 + a1 * a3) % p
        b6 = (a3 * a3 + 4 * a6) % p
        # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        squares = [0] * p
        for t in range(p):
            squares[t * t % p] += 1
        n = 1
        for x in range(p):
            n += squares[(4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % p]
        return n

    def ap(self, p: int) -> int:
        return p + 1 - self.count_points(p)


def b_invariants(E: WeierstrassCurve):
    return E.b_invariants


def discriminant(E: WeierstrassCurve) -> Fraction:
    return E.discriminant


def add_points(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return E.add(P, Q)


def two_division_cubic(E: WeierstrassCurve) -> RationalPoly:
    return E.two_division_cubic()


def halving_quartic(E: WeierstrassCurve, P: CurvePoint) -> RationalPoly:
    return E.halving_quartic(P)


def ap(E: WeierstrassCurve, p: int) -> int:
    return E.ap(p)


def bad_primes(E: WeierstrassCurve) -> list[int]:
    d = E.discriminant
    return sorted(set(factor_int(d.numerator)) | set(factor_int(d.denominator)))


def load_registry(path: Path | None = None) -> dict[str, dict]:
    """label -> {"curve": WeierstrassCurve, "points": [CurvePoint, ...]}."""
    raw = json.loads(Path(path or DATA / "curves.json").read_text())
    out = {}
    for label, entry in raw.items():
        out[label] = {
            "curve": WeierstrassCurve(*(Fraction(a) for a in entry["ainvs"])),
            "points": [point(*map(Fraction, pt)) for pt in entry.get("points", [])],
        }
    return out


def curve(label: str) -> WeierstrassCurve:
    return load_registry()[label]["curve"]
