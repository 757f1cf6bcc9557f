"""Random objects shared by the property tests."""

import random
from fractions import Fraction

from s4lift import elliptic
from s4lift.arith import squarefree_part


def curve_through_point(rng: random.Random):
    """(E, P) with integral E through an integral point P of order > 2 and disc(E) < 0."""
    while True:
        a1, a2, a3, a4 = (rng.randint(-3, 3) for _ in range(4))
        x0, y0 = rng.randint(-5, 5), rng.randint(-5, 5)
        a6 = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0 ** 3 - a2 * x0 * x0 - a4 * x0
        try:
            E = elliptic.WeierstrassCurve(a1, a2, a3, a4, a6)
        except ValueError:
            continue
        if E.discriminant >= 0:
            continue
        P = elliptic.point(x0, y0)
        if E.double(P).is_infinity:
            continue
        try:
            E.halving_quartic(P)
        except ValueError:
            continue
        return E, P


def random_nonzero_rational(rng: random.Random, bound: int = 10 ** 4) -> Fraction:
    while True:
        n = rng.randint(-bound, bound)
        if n:
            return Fraction(n, rng.randint(1, bound))
