"""Explicit solutions of the 2+S4 embedding problem.

An element gamma of the S4 closure is written as a polynomial in two roots
x1, x2 of the quartic.  Its twelve conjugates are the values at the ordered
pairs of distinct roots, and the square roots of those values are the roots
of a degree-24 polynomial with integer coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import mpmath

from .arith import RationalPoly, complex_roots

DATA = Path(__file__).with_name("data")


class PrecisionError(RuntimeError):
    """Raised when rounding a numerically expanded product is not trustworthy."""


@dataclass(frozen=True)
class GammaExpression:
    """scalar * sum c * x1^i * x2^j over the stored (c, i, j) triples."""

    terms: tuple[tuple[int, int, int], ...]
    scalar: Fraction = Fraction(1)

    def __init__(self, terms: Sequence[Sequence[int]], scalar=1):
        t = tuple((int(c), int(i), int(j)) for c, i, j in terms)
        if any(i < 0 or j < 0 for _, i, j in t):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "terms", t)
        object.__setattr__(self, "scalar", Fraction(scalar))

    def __call__(self, x1, x2):
        s = sum(c * x1 ** i * x2 ** j for c, i, j in self.terms)
        sc = self.scalar
        if isinstance(s, (int, Fraction)):
            return sc * s
        return s * mpmath.mpf(sc.numerator) / sc.denominator

    def to_json(self) -> str:
        return json.dumps({"scalar": str(self.scalar), "terms": [list(t) for t in self.terms]})

    @classmethod
    def from_json(cls, text: str) -> "GammaExpression":
        d = json.loads(text)
        return cls(d["terms"], Fraction(d.get("scalar", "1")))


def load_case(case: int) -> dict:
    """Shipped data for a worked case: curve label, point, quartic and gamma."""
    d = json.loads((DATA / "gamma" / f"case{case}.json").read_text())
    return {
        "case": d["case"],
        "curve": d["curve"],
        "point": tuple(d["point"]),
        "quartic": RationalPoly.from_descending(d["quartic"]),
        "gamma": GammaExpression(d["terms"], Fraction(d["scalar"])),
    }


def load_printed_poly24(case: int) -> RationalPoly | None:
    d = json.loads((DATA / "poly24.json").read_text())
    c = d.get(str(case))
    return None if c is None else RationalPoly.from_descending(c)


def gamma_determinant(roots: Sequence, P: Sequence[Sequence], D: int, digits: int = 50):
    """det(V P C + I) with V the 4x4 power matrix of the roots and C the fixed block."""
    with mpmath.workdps(digits):
        rs = [mpmath.mpmathify(r) for r in roots]
        if len(rs) != 4:
            raise ValueError("need four roots")
        for i in range(4):
            for j in range(i + 1, 4):
                if abs(rs[i] - rs[j]) < mpmath.mpf(10) ** (-digits // 2):
                    raise ValueError("repeated roots")
        Pm = mpmath.matrix([[mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
                             for x in row] for row in P])
        if abs(mpmath.det(Pm)) == 0:
            raise ValueError("singular transformation matrix")
        V = mpmath.matrix([[r ** k for k in range(4)] for r in rs])
        sD = mpmath.sqrt(mpmath.mpf(D))
        h = mpmath.mpf(1) / 2
        C = mpmath.matrix([[1, 0, 0, 0],
                           [0, 1, 0, 0],
                           [0, 0, h, h],
                           [0, 0, 1 / (2 * sD), -1 / (2 * sD)]])
        return mpmath.det(V * Pm * C + mpmath.eye(4))


def gamma_conjugates(quartic: RationalPoly, gamma: GammaExpression, digits: int = 200):
    """gamma at all 12 ordered pairs of distinct roots, in (i, j) lexicographic order."""
    f = quartic.monic()
    if f.degree != 4 or not f.is_squarefree():
        raise ValueError("need a squarefree quartic")
    roots = complex_roots(f, digits + 20)
    out = []
    with mpmath.workdps(digits + 20):
        for i in range(4):
            for j in range(4):
                if i != j:
                    v = gamma(roots[i], roots[j])
                    if abs(v) < mpmath.mpf(10) ** (-digits // 2):
                        raise ValueError("degenerate gamma: a conjugate vanishes")
                    out.append(v)
    return out


def conjugate_pairs() -> list[tuple[int, int]]:
    """Ordered pairs (i, j) matching the order returned by gamma_conjugates."""
    return [(i, j) for i in range(4) for j in range(4) if i != j]


def _expand_product(conjugates, c: Fraction, digits: int):
    with mpmath.workdps(digits):
        cc = mpmath.mpf(c.numerator) / c.denominator
        # coefficients in ascending order of powers of u = t^2
        poly = [mpmath.mpc(1)]
        for g in conjugates:
            a = -cc * g
            new = [mpmath.mpc(0)] * (len(poly) + 1)
            for k, v in enumerate(poly):
                new[k] += v * a
                new[k + 1] += v
            poly = new
        ints = []
        worst = mpmath.mpf(0)
        for v in poly:
            n = int(mpmath.nint(v.real))
            worst = max(worst, abs(v - n))
            ints.append(n)
        return ints, worst


def minpoly_sqrt_gamma(conjugates, c=1, digits: int = 200, tolerance_exp: int = 20,
                       retries: int = 3, quartic: RationalPoly | None = None,
                       gamma: GammaExpression | None = None) -> RationalPoly:
    """prod (t^2 - c*gamma_i) rounded to integers.

    If ``quartic`` and ``gamma`` are given, the conjugates are recomputed at
    doubled precision when the rounding residual exceeds 10^-tolerance_exp.
    """
    c = Fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    conj = list(conjugates)
    if len(conj) != 12:
        raise ValueError("expected 12 conjugates")
    d = digits
    for attempt in range(retries + 1):
        ints, worst = _expand_product(conj, c, d)
        if worst < mpmath.mpf(10) ** (-tolerance_exp):
            break
        if quartic is None or gamma is None or attempt == retries:
            raise PrecisionError(f"rounding residual {mpmath.nstr(worst, 5)} at {d} digits; "
                                 "increase the precision")
        d *= 2
        conj = gamma_conjugates(quartic, gamma, d)
    # u-coefficients -> t-coefficients with u = t^2
    coeffs = [0] * (2 * len(ints) - 1)
    for k, v in enumerate(ints):
        coeffs[2 * k] = v
    f = RationalPoly(coeffs)
    if not f.is_squarefree():
        raise ValueError("degree-24 polynomial is not squarefree")
    return f


def degree24_polynomial(case: int, c=1, digits: int = 200) -> RationalPoly:
    data = load_case(case)
    conj = gamma_conjugates(data["quartic"], data["gamma"], digits)
    return minpoly_sqrt_gamma(conj, c, digits, quartic=data["quartic"], gamma=data["gamma"])


# --------------------------------------------------------------------------
# field-equality certificates in the basis x1^a x2^b s^k, s = sqrt(gamma)

CERT_BASIS = tuple((k, a, b) for k in range(2) for a in range(4) for b in range(3))


def find_field_certificate(quartic: RationalPoly, gamma: GammaExpression, target: RationalPoly,
                           digits: int = 400, maxcoeff: int = 10 ** 60) -> dict | None:
    """Search a root of ``target`` of the form sum c_kab x1^a x2^b s^k / den.

    Works in a real embedding (x1, x2 real, gamma(x1, x2) > 0) by integer
    relation search; the result still has to pass verify_field_certificate.
    """
    f = quartic.monic()
    with mpmath.workdps(digits + 50):
        tol = mpmath.mpf(10) ** (-digits)
        xs = [r.real for r in complex_roots(f, digits + 50) if abs(r.imag) < tol]
        ys = [r.real for r in complex_roots(target, digits + 50) if abs(r.imag) < tol]
        for i, x1 in enumerate(xs):
            for j, x2 in enumerate(xs):
                g = gamma(x1, x2) if i != j else -1
                if g <= 0:
                    continue
                s = mpmath.sqrt(g)
                basis = [x1 ** a * x2 ** b * s ** k for k, a, b in CERT_BASIS]
                for y in ys:
                    rel = mpmath.pslq(basis + [-y], tol=tol * 10 ** 20, maxcoeff=maxcoeff,
                                      maxsteps=10 ** 6)
                    if rel and rel[-1]:
                        cert = {"denominator": int(rel[-1]), "coefficients": [int(c) for c in rel[:-1]]}
                        if verify_field_certificate(quartic, gamma, target, cert):
                            return cert
    return None


def verify_field_certificate(quartic: RationalPoly, gamma: GammaExpression, target: RationalPoly,
                             cert: dict) -> bool:
    """Exact check that target(r) = 0 for r = sum c x1^a x2^b s^k / den in
    Q[x1, x2, s] / (P(x1), (P(x2) - P(x1)) / (x2 - x1), s^2 - gamma(x1, x2))."""
    import sympy as sp
    x1, x2, s = sp.symbols("x1 x2 s")
    P = [sp.Rational(c.numerator, c.denominator) for c in quartic.monic().coeffs]

    def Px(x):
        return sum(c * x ** i for i, c in enumerate(P))

    sc = gamma.scalar
    gam = sp.Rational(sc.numerator, sc.denominator) * sum(c * x1 ** i * x2 ** j for c, i, j in gamma.terms)
    G = sp.groebner([Px(x1), sp.cancel((Px(x2) - Px(x1)) / (x2 - x1)), sp.expand(s ** 2 - gam)],
                    s, x2, x1, order="lex")
    den = int(cert["denominator"])
    if den == 0 or len(cert["coefficients"]) != len(CERT_BASIS):
        return False
    r = sum(sp.Rational(int(c), den) * x1 ** a * x2 ** b * s ** k
            for c, (k, a, b) in zip(cert["coefficients"], CERT_BASIS))
    acc = sp.Integer(0)
    for c in reversed(target.coeffs):
        acc = G.reduce(sp.expand(acc * r + sp.Rational(c.numerator, c.denominator)))[1]
    return acc == 0


def load_field_certificate(case: int) -> dict | None:
    path = DATA / "field_certificates.json"
    if not path.exists():
        return None
    return json.loads(path.read_text()).get(str(case))


def is_irreducible_over_Q(f: RationalPoly) -> bool:
    import sympy as sp
    t = sp.symbols("t")
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], t).is_irreducible
