"""Exact arithmetic kernel.

Rational polynomials, residue and local symbols, squarefree parts,
factorization patterns modulo a prime and high precision complex roots.
Everything here is pure and works on immutable values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import mpmath
import sympy

INF = "inf"
Place = Union[int, str]

Rational = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


# --------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


def factor_int(n: int) -> dict[int, int]:
    """Factor ``|n|`` by trial division up to 10**6, then sympy for the rest."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n and d <= 10**6:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        for q, e in sympy.factorint(n).items():
            out[int(q)] = out.get(int(q), 0) + int(e)
    return out


def valuation(x: Rational, p: int) -> int:
    x = _frac(x)
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    a, b = x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def _squarefree_part_int(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    core = 1
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            core *= p
    d = 5
    while d * d <= n and d <= 10**6:
        for q in (d, d + 2):
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            if e % 2:
                core *= q
        d += 6
    if n > 1:
        r = math.isqrt(n)
        if r * r != n:
            for q, e in sympy.factorint(n).items():
                if e % 2:
                    core *= int(q)
    return sign * core


def squarefree_part(r: Rational) -> int:
    """The squarefree integer in the class of ``r`` modulo squares."""
    r = _frac(r)
    if r == 0:
        raise ValueError("squarefree part of 0 is undefined")
    # a/b = a*b / b^2
    return _squarefree_part_int(r.numerator * r.denominator)


def primes_up_to(n: int) -> list[int]:
    return [int(p) for p in sympy.primerange(2, n + 1)]


# --------------------------------------------------------------------------
# symbols


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extended to n even, negative and zero."""
    a, n = int(a), int(n)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _split_unit(x: Fraction, p: int) -> tuple[int, Fraction]:
    v = valuation(x, p)
    return v, x / Fraction(p) ** v


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """Hilbert symbol (a, b)_v over Q_v.

    Write a = p^alpha u, b = p^beta w with u, w units.  For odd p
        (a, b)_p = (-1)^(alpha beta eps(p)) (u/p)^beta (w/p)^alpha,
    with eps(p) = (p-1)/2.  For p = 2
        (a, b)_2 = (-1)^(eps(u) eps(w) + alpha omega(w) + beta omega(u)),
    with eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 taken mod 2.
    At the real place the symbol is -1 exactly when a < 0 and b < 0.
    """
    a, b = _frac(a), _frac(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(v)
    alpha, u = _split_unit(a, p)
    beta, w = _split_unit(b, p)
    if p == 2:
        # units are odd/odd; reduce to odd integers mod 8
        uu = (u.numerator * u.denominator) % 8
        ww = (w.numerator * w.denominator) % 8
        eps_u = ((uu - 1) // 2) % 2
        eps_w = ((ww - 1) // 2) % 2
        om_u = ((uu * uu - 1) // 8) % 2
        om_w = ((ww * ww - 1) // 8) % 2
        e = (eps_u * eps_w + alpha * om_w + beta * om_u) % 2
        return -1 if e else 1
    uu = (u.numerator * pow(u.denominator, -1, p)) % p
    ww = (w.numerator * pow(w.denominator, -1, p)) % p
    s = 1
    if (alpha * beta) % 2 and p % 4 == 3:
        s = -s
    if beta % 2:
        s *= kronecker_symbol(uu, p)
    if alpha % 2:
        s *= kronecker_symbol(ww, p)
    return s


def relevant_places(*values: Rational) -> list[Place]:
    """inf, 2 and every prime dividing a numerator or denominator."""
    primes = {2}
    for x in values:
        x = _frac(x)
        for n in (x.numerator, x.denominator):
            if n not in (0, 1, -1):
                primes.update(factor_int(n))
    return [INF] + sorted(primes)


# --------------------------------------------------------------------------
# polynomials over Q


class RationalPoly:
    """Dense polynomial with exact rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly is immutable")

    def __reduce__(self):
        return (RationalPoly, (self.coeffs,))

    @classmethod
    def from_descending(cls, coeffs: Iterable[Rational]) -> "RationalPoly":
        return cls(list(coeffs)[::-1])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                s = mono
            elif mono:
                s = f"{abs(c)}*{mono}"
            else:
                s = str(abs(c))
            terms.append(("-" if c < 0 else "+", s))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x):
        """Evaluate at an mpmath/complex number."""
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RationalPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RationalPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - other.degree, 1)
        while len(r) - 1 >= other.degree and r:
            k = len(r) - 1 - other.degree
            c = r[-1] / other.lc
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[i + k] -= c * b
            while r and r[-1] == 0:
                r.pop()
        return RationalPoly(q), RationalPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "RationalPoly":
        return RationalPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "RationalPoly":
        return RationalPoly(c / self.lc for c in self.coeffs)

    def compose(self, other: "RationalPoly") -> "RationalPoly":
        acc = RationalPoly([])
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def is_squarefree(self) -> bool:
        return poly_gcd(self, self.derivative()).degree == 0

    def integral_model(self) -> list[int]:
        """Coefficients scaled by the lcm of denominators (ascending)."""
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        return [int(c * den) for c in self.coeffs]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def rational_roots(self) -> list[Fraction]:
        ints = self.integral_model()
        while ints and ints[0] == 0:
            ints = ints[1:]
        roots = {Fraction(0)} if ints != self.integral_model() else set()
        if not ints:
            return sorted(roots)
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in sympy.divisors(a0):
            for q in sympy.divisors(an):
                for s in (1, -1):
                    r = Fraction(s * p, q)
                    if self(r) == 0:
                        roots.add(r)
        return sorted(roots)


def _as_poly(x) -> RationalPoly:
    return x if isinstance(x, RationalPoly) else RationalPoly([x])


def poly_gcd(f: RationalPoly, g: RationalPoly) -> RationalPoly:
    while g.coeffs:
        f, g = g, f % g
    return f.monic() if f.coeffs else f


def resultant(f: RationalPoly, g: RationalPoly) -> Fraction:
    """Resultant by the Euclidean recurrence."""
    if not f.coeffs or not g.coeffs:
        return Fraction(0)
    m, n = f.degree, g.degree
    if n == 0:
        return g.lc ** m
    if m == 0:
        return f.lc ** n
    r = f % g
    if not r.coeffs:
        return Fraction(0)
    s = -1 if (m * n) % 2 else 1
    return s * g.lc ** (m - r.degree) * resultant(g, r)


def poly_discriminant(f: RationalPoly) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * resultant(f, f.derivative()) / f.lc


# --------------------------------------------------------------------------
# polynomials over F_p; ascending lists of ints, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod(a: Sequence[int], p: int) -> list[int]:
    return _trim([x % p for x in a])


def pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return pmod(out, p)


def pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 1)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] * inv % p
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] = (r[i + k] - c * y) % p
        _trim(r)
    return _trim(q), r


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a: Sequence[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def pgcd(a, b, p) -> list[int]:
    a, b = pmod(a, p), pmod(b, p)
    while b:
        a, b = b, prem(a, b, p)
    return pmonic(a, p) if a else a


def psub(a, b, p):
    n = max(len(a), len(b))
    return pmod([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def ppowmod(base, e: int, f, p) -> list[int]:
    result = [1]
    base = prem(base, f, p)
    while e:
        if e & 1:
            result = prem(pmul(result, base, p), f, p)
        base = prem(pmul(base, base, p), f, p)
        e >>= 1
    return result


def pderiv(a, p):
    return pmod([k * a[k] for k in range(1, len(a))], p)


def _squarefree_decomposition(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic f over F_p -> [(g_i, e_i)] with f = prod g_i^e_i, g_i squarefree coprime."""
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out
    d = pderiv(f, p)
    if not d:
        # f is a p-th power
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, e * p) for g, e in _squarefree_decomposition(root, p)]
    c = pgcd(f, d, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((pmonic(z, p), i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        root = [c[k] for k in range(0, len(c), p)]
        out.extend((g, e * p) for g, e in _squarefree_decomposition(root, p))
    return out


def _distinct_degree(f: list[int], p: int) -> list[int]:
    """Degrees of irreducible factors of a squarefree monic f over F_p."""
    degrees: list[int] = []
    x = [0, 1]
    h = x
    d = 0
    g = f
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, g, p)
        common = pgcd(g, psub(h, x, p), p)
        k = len(common) - 1
        if k:
            degrees += [d] * (k // d)
            g = pdivmod(g, common, p)[0]
            h = prem(h, g, p)
    if len(g) > 1:
        degrees.append(len(g) - 1)
    return sorted(degrees)


def factor_degrees_mod_p(f: RationalPoly, p: int) -> list[tuple[int, int]]:
    """Sorted (degree, multiplicity) of the irreducible factors of f mod p."""
    ints = f.integral_model()
    if ints[-1] % p == 0:
        raise ValueError(f"bad reduction at {p}")
    g = pmonic(pmod(ints, p), p)
    out = []
    for part, e in _squarefree_decomposition(g, p):
        out += [(d, e) for d in _distinct_degree(part, p)]
    return sorted(out)


def factorization_pattern_mod_p(f: RationalPoly, p: int) -> tuple[tuple[int, ...], bool]:
    """Factor degrees of the squarefree part of f mod p, and a squarefree flag."""
    facs = factor_degrees_mod_p(f, p)
    degrees = tuple(sorted(d for d, _ in facs))
    return degrees, all(e == 1 for _, e in facs)


def is_p_maximal(f: RationalPoly, p: int) -> bool:
    """Dedekind's criterion: does p fail to divide the index [O_K : Z[x]] for K = Q[x]/(f)?"""
    ints = f.integral_model()
    if ints[-1] != 1:
        raise ValueError("Dedekind's criterion needs a monic integral polynomial")
    fbar = pmod(ints, p)
    parts = _squarefree_decomposition(fbar, p)
    g = [1]
    h = [1]
    for z, e in parts:
        g = pmul(g, z, p)
        for _ in range(e - 1):
            h = pmul(h, z, p)
    gh = [0] * (len(g) + len(h) - 1)
    for i, a in enumerate(g):
        for j, b in enumerate(h):
            gh[i + j] += a * b
    diff = [(ints[i] if i < len(ints) else 0) - (gh[i] if i < len(gh) else 0)
            for i in range(max(len(ints), len(gh)))]
    if any(c % p for c in diff):
        raise AssertionError("lift mismatch")
    F = pmod([c // p for c in diff], p)
    t = pgcd(pgcd(F, g, p), h, p) if F else pgcd(g, h, p)
    return len(t) <= 1


# --------------------------------------------------------------------------
# numerics


def complex_roots(f: RationalPoly, digits: int = 200) -> list:
    """All roots of a squarefree f to ``digits`` decimal digits, sorted."""
    if not f.is_squarefree():
        raise ValueError("complex_roots needs a squarefree polynomial")
    with mpmath.workdps(digits + 20):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in f.coeffs[::-1]]
        roots = mpmath.polyroots(coeffs, maxsteps=400 + 20 * f.degree, extraprec=4 * digits)
        roots = [mpmath.mpc(r) for r in roots]
        # clean tiny imaginary parts on real roots
        tol = mpmath.mpf(10) ** (-digits)
        roots = [mpmath.mpc(r.real, 0) if abs(r.imag) < tol else r for r in roots]
        roots.sort(key=lambda r: (r.real, r.imag))
    return roots


def is_embedding(f: RationalPoly, g: RationalPoly, h: RationalPoly) -> bool:
    """Exact check that x -> h(x) maps a root of g into Q[x]/(f), i.e. g(h) = 0 mod f."""
    f = f.monic()
    acc = RationalPoly([0])
    hm = h % f
    for c in g.coeffs[::-1]:
        acc = (acc * hm + RationalPoly([c])) % f
    return acc.degree < 0 or all(c == 0 for c in acc.coeffs)


def find_embedding(f: RationalPoly, g: RationalPoly, digits: int | None = None,
                   maxcoeff: int = 10 ** 60) -> RationalPoly | None:
    """h in Q[x] of degree < deg f with g(h(x)) = 0 mod f, or None.

    Candidates come from integer relations between a root y of g and powers
    of a root r of f; every candidate is verified exactly by is_embedding.
    """
    n = f.degree
    if digits is None:
        digits = max(60, 34 * n)
    rf = complex_roots(f.monic(), digits)
    rg = complex_roots(g.monic(), digits)
    tol = mpmath.mpf(10) ** (-digits // 2)
    real_f = [x.real for x in rf if abs(x.imag) < tol]
    with mpmath.workdps(digits):
        if real_f:
            r = real_f[-1]
            ys = [y.real for y in rg if abs(y.imag) < tol]
            split = False
        else:
            r = rf[-1]
            ys = list(rg)
            split = True
        for y in ys:
            if split:
                # a real relation on Re + alpha Im, alpha a fixed irrational
                alpha = mpmath.sqrt(2) + mpmath.pi
                vec = [(z.real + alpha * z.imag) for z in [y] + [r ** k for k in range(n)]]
            else:
                vec = [y] + [r ** k for k in range(n)]
            rel = mpmath.pslq(vec, maxcoeff=maxcoeff, maxsteps=10 ** 6)
            if not rel or rel[0] == 0:
                continue
            h = RationalPoly([Fraction(-a, rel[0]) for a in rel[1:]])
            if is_embedding(f, g, h):
                return h
    return None


def same_field(f: RationalPoly, g: RationalPoly, certificate: RationalPoly | None = None) -> bool:
    """True iff Q[x]/(f) and Q[x]/(g) are isomorphic (f, g irreducible, same degree).

    With a certificate h the check is purely exact; otherwise one is searched for.
    """
    if f.degree != g.degree:
        return False
    h = certificate if certificate is not None else find_embedding(f, g)
    return h is not None and is_embedding(f, g, h)
