"""Finite groups around 2+S4 = GL2(F3).

Groups are small (at most 96 elements) and stored with full multiplication
tables, so every structural claim is checked by exhaustion.  Cohomology with
trivial F2 coefficients is plain linear algebra over F2, done with Python
integers as bit rows.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np


# --------------------------------------------------------------------------
# finite groups


class FiniteGroup:
    """Elements 0..n-1 with a multiplication table; ``elements`` keeps the originals."""

    def __init__(self, elements: Sequence[Hashable], mul: Callable | None = None,
                 table: np.ndarray | None = None, labels: Sequence[str] | None = None,
                 name: str = ""):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        n = len(self.elements)
        if table is None:
            table = np.empty((n, n), dtype=np.int32)
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    try:
                        table[i, j] = self.index[mul(a, b)]
                    except KeyError:
                        raise ValueError("set is not closed under multiplication") from None
        self.table = np.asarray(table, dtype=np.int32)
        self.labels = list(labels) if labels else [str(e) for e in self.elements]
        self.name = name
        self._validate()
        self._classes = None

    def _validate(self):
        T = self.table
        n = self.order
        if T.shape != (n, n) or T.min() < 0 or T.max() >= n:
            raise ValueError("malformed multiplication table")
        if not np.array_equal(T[T, :], T[:, T]):
            raise ValueError("multiplication is not associative")
        ids = [e for e in range(n) if np.array_equal(T[e], np.arange(n))
               and np.array_equal(T[:, e], np.arange(n))]
        if len(ids) != 1:
            raise ValueError("no two-sided identity")
        self.identity = ids[0]
        inv = np.full(n, -1, dtype=np.int32)
        for a in range(n):
            hits = np.nonzero(T[a] == self.identity)[0]
            if len(hits) != 1 or T[hits[0], a] != self.identity:
                raise ValueError("element without inverse")
            inv[a] = hits[0]
        self.inverse = inv

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def conjugate(self, a: int, g: int) -> int:
        """g a g^-1."""
        return self.mul(self.mul(g, a), int(self.inverse[g]))

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, S: Iterable[int]) -> bool:
        S = set(S)
        return self.identity in S and all(self.mul(a, int(self.inverse[b])) in S for a in S for b in S)

    def is_normal(self, S: Iterable[int]) -> bool:
        S = set(S)
        return all(self.conjugate(a, g) in S for a in S for g in range(self.order))

    def conjugacy_classes(self) -> list[list[int]]:
        if self._classes is None:
            seen = set()
            classes = []
            for a in range(self.order):
                if a in seen:
                    continue
                cl = sorted({self.conjugate(a, g) for g in range(self.order)})
                seen.update(cl)
                classes.append(cl)
            self._classes = classes
        return self._classes

    def class_of(self, a: int) -> int:
        for k, cl in enumerate(self.conjugacy_classes()):
            if a in cl:
                return k
        raise KeyError(a)

    def center(self) -> list[int]:
        return [a for a in range(self.order) if all(self.mul(a, g) == self.mul(g, a)
                                                    for g in range(self.order))]

    def subgroups_of_order(self, k: int) -> set[frozenset[int]]:
        """All subgroups of order k generated by at most two elements."""
        out = set()
        cands = [a for a in range(self.order) if k % self.element_order(a) == 0]
        for a in cands:
            for b in cands:
                if b < a:
                    continue
                H = self.generated([a, b])
                if len(H) == k:
                    out.add(H)
        return out


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a in range(G.order) for b in range(G.order))


def compose_perm(s: tuple, t: tuple) -> tuple:
    """(s o t)(i) = s(t(i))."""
    return tuple(s[i] for i in t)


def permutation_group(gens: Sequence[tuple], limit: int | None = None, name: str = "") -> FiniteGroup | None:
    """Closure of permutation tuples; None if it grows beyond ``limit``."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose_perm(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if limit is not None and len(seen) > limit:
                        return None
        frontier = nxt
    return FiniteGroup(sorted(seen), compose_perm, name=name)


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        out.append(k)
    return tuple(sorted(out))


def symmetric_group(n: int) -> FiniteGroup:
    return FiniteGroup(list(itertools.permutations(range(n))), compose_perm, name=f"S{n}")


# --------------------------------------------------------------------------
# GL2(F3) and its projection to S4


def _mat_mul(A: tuple, B: tuple) -> tuple:
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)


def _mat_det(A: tuple) -> int:
    return (A[0] * A[3] - A[1] * A[2]) % 3


P1_F3 = [(1, 0), (0, 1), (1, 1), (1, 2)]


def _normalize_p1(v: tuple) -> tuple:
    x, y = v[0] % 3, v[1] % 3
    s = pow(x, -1, 3) if x else pow(y, -1, 3)
    return ((x * s) % 3, (y * s) % 3)


def _act_p1(A: tuple, k: int) -> int:
    x, y = P1_F3[k]
    return P1_F3.index(_normalize_p1((A[0] * x + A[1] * y, A[2] * x + A[3] * y)))


@dataclass
class GL2F3:
    group: FiniteGroup
    s4: FiniteGroup
    projection: list[int]          # element index -> S4 index

    def matrix(self, M) -> int:
        a, b, c, d = (int(x) % 3 for row in M for x in row)
        return self.group.index[(a, b, c, d)]

    @property
    def minus_identity(self) -> int:
        return self.group.index[(2, 0, 0, 2)]

    def kernel(self) -> list[int]:
        e = self.s4.identity
        return [g for g in range(self.group.order) if self.projection[g] == e]

    def lifts(self, s: int) -> list[int]:
        return [g for g in range(self.group.order) if self.projection[g] == s]


def build_gl2f3() -> GL2F3:
    mats = [m for m in itertools.product(range(3), repeat=4) if _mat_det(m)]
    G = FiniteGroup(mats, _mat_mul, name="GL2(F3)")
    S4 = symmetric_group(4)
    proj = [S4.index[tuple(_act_p1(A, k) for k in range(4))] for A in G.elements]
    if not is_homomorphism(G, S4, proj):
        raise AssertionError("P1 action is not a homomorphism")
    return GL2F3(G, S4, proj)


def lifting_orders(gl: GL2F3) -> dict[str, set[int]]:
    """Orders of the lifts of transpositions and of double transpositions."""
    out = {"transposition": set(), "double_transposition": set()}
    for s, perm in enumerate(gl.s4.elements):
        ct = cycle_type(perm)
        key = {(1, 1, 2): "transposition", (2, 2): "double_transposition"}.get(ct)
        if key:
            out[key].update(gl.group.element_order(g) for g in gl.lifts(s))
    return out


def has_section(gl: GL2F3) -> bool:
    """Is there a homomorphic section S4 -> GL2(F3)?  Tries every lift of two generators."""
    S4 = gl.s4
    t = S4.index[(1, 0, 2, 3)]
    c = S4.index[(1, 2, 3, 0)]
    for a in gl.lifts(t):
        for b in gl.lifts(c):
            H = gl.group.generated([a, b])
            if len(H) == 24 and len({gl.projection[h] for h in H}) == 24:
                return True
    return False


def s3_subgroup_check(gens=(((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 2), (0, 2)))) -> bool:
    gl = build_gl2f3()
    H = gl.group.generated([gl.matrix(M) for M in gens])
    if len(H) != 6:
        return False
    return any(gl.group.mul(a, b) != gl.group.mul(b, a) for a in H for b in H)


def subgroup_order(gens: Sequence) -> int:
    gl = build_gl2f3()
    return len(gl.group.generated([gl.matrix(M) for M in gens]))


# --------------------------------------------------------------------------
# G = S3 x| (Z/2)^4 and its three projections to S4

_V_NONZERO = [(1, 0), (0, 1), (1, 1)]
# P_i <-> double transposition pairing i with 3
_KLEIN = {(0, 0): (0, 1, 2, 3), (1, 0): (3, 2, 1, 0), (0, 1): (2, 3, 0, 1), (1, 1): (1, 0, 3, 2)}


def _s3_act(sigma: tuple, v: tuple) -> tuple:
    if v == (0, 0):
        return v
    return _V_NONZERO[sigma[_V_NONZERO.index(v)]]


def _vadd(u: tuple, v: tuple) -> tuple:
    return tuple((a + b) % 2 for a, b in zip(u, v))


@dataclass
class Semidirect:
    group: FiniteGroup
    s4: FiniteGroup
    projections: list[list[int]]   # Pi_1, Pi_2, Pi_3 as index maps G -> S4

    def element(self, sigma, x, y, z, w) -> int:
        return self.group.index[(tuple(sigma), (x, y, z, w))]

    def kernel_vectors(self) -> dict[tuple, int]:
        e = (0, 1, 2)
        return {u: i for i, (s, u) in enumerate(self.group.elements) if s == e}


def _s3v_to_s4(sigma: tuple, u: tuple) -> tuple:
    s = tuple(sigma) + (3,)
    return compose_perm(_KLEIN[u], s)


def build_semidirect() -> Semidirect:
    S3 = list(itertools.permutations(range(3)))
    V4 = list(itertools.product(range(2), repeat=4))

    def mul(a, b):
        (s, u), (t, v) = a, b
        sv = _s3_act(s, v[:2]) + _s3_act(s, v[2:])
        return (compose_perm(s, t), _vadd(u, sv))

    G = FiniteGroup([(s, u) for s in S3 for u in V4], mul, name="S3 x| (Z/2)^4")
    S4 = symmetric_group(4)
    maps = [
        lambda u: (u[0], u[1]),
        lambda u: (u[2], u[3]),
        lambda u: ((u[0] + u[2]) % 2, (u[1] + u[3]) % 2),
    ]
    projections = [[S4.index[_s3v_to_s4(s, m(u))] for (s, u) in G.elements] for m in maps]
    return Semidirect(G, S4, projections)


def projections_are_homomorphisms(sd: Semidirect) -> bool:
    return all(is_homomorphism(sd.group, sd.s4, P) and len(set(P)) == 24 for P in sd.projections)


def projection_sum_vanishes(sd: Semidirect) -> bool:
    """The three Klein components add to zero on the normal (Z/2)^4."""
    for (s, u) in sd.group.elements:
        a = (u[0], u[1])
        b = (u[2], u[3])
        c = _vadd(a, b)
        if _vadd(_vadd(a, b), c) != (0, 0):
            return False
    return True


def normal_subgroups_of_order(G: FiniteGroup, k: int) -> list[frozenset[int]]:
    return sorted((H for H in G.subgroups_of_order(k) if G.is_normal(H)), key=sorted)


def s3_orbits_on_v4() -> list[list[tuple]]:
    S3 = list(itertools.permutations(range(3)))
    seen = set()
    orbits = []
    for u in itertools.product(range(2), repeat=4):
        if u in seen:
            continue
        orb = sorted({_s3_act(s, u[:2]) + _s3_act(s, u[2:]) for s in S3})
        seen.update(orb)
        orbits.append(orb)
    return orbits


def _v4_subgroups_order4() -> list[frozenset]:
    vecs = list(itertools.product(range(2), repeat=4))
    out = set()
    for a in vecs[1:]:
        for b in vecs[1:]:
            if a != b:
                out.add(frozenset({(0, 0, 0, 0), a, b, _vadd(a, b)}))
    return sorted(out, key=sorted)


def _trivially_meeting(subs) -> bool:
    return all(len(A & B) == 1 for A, B in itertools.combinations(subs, 2))


def named_order4_subgroups() -> dict[str, frozenset]:
    def span(*gens):
        return frozenset({(0, 0, 0, 0)} | set(gens) | {_vadd(gens[0], gens[1])})
    return {
        "H1": span((1, 0, 0, 0), (0, 1, 0, 0)),
        "H2": span((0, 0, 1, 0), (0, 0, 0, 1)),
        "H3": span((1, 0, 1, 0), (0, 1, 0, 1)),
        "H4": frozenset({(0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 1, 1), (1, 1, 1, 0)}),
        "H5": frozenset({(0, 0, 0, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 0)}),
    }


def completions(triple: Sequence[frozenset]) -> list[tuple[frozenset, frozenset]]:
    """Pairs (A, B) of order-4 subgroups making the five pairwise trivially intersecting."""
    subs = _v4_subgroups_order4()
    out = []
    rest = [S for S in subs if S not in triple and all(len(S & T) == 1 for T in triple)]
    for A, B in itertools.combinations(rest, 2):
        if len(A & B) == 1:
            out.append((A, B))
    return out


def five_subgroup_check() -> bool:
    named = named_order4_subgroups()
    if not _trivially_meeting(named.values()):
        return False
    for H in named.values():
        if len(H) != 4 or any(_vadd(a, b) not in H for a in H for b in H):
            return False
    subs = _v4_subgroups_order4()
    for triple in itertools.combinations(subs, 3):
        if _trivially_meeting(triple) and not completions(triple):
            return False
    return True


# --------------------------------------------------------------------------
# F2 linear algebra on bit rows


class F2System:
    """Incremental row echelon basis; rows are ints, bit ``nvars`` is the right-hand side."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rhs_bit = 1 << nvars
        self.pivots: dict[int, int] = {}
        self.consistent = True

    def add(self, row: int) -> bool:
        """Insert a row; returns True if it increased the rank."""
        mask = self.rhs_bit - 1
        while row & mask:
            top = (row & mask).bit_length() - 1
            piv = self.pivots.get(top)
            if piv is None:
                self.pivots[top] = row
                return True
            row ^= piv
        if row & self.rhs_bit:
            self.consistent = False
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: int) -> bool:
        mask = self.rhs_bit - 1
        row &= mask
        while row:
            top = row.bit_length() - 1
            piv = self.pivots.get(top)
            if piv is None:
                return False
            row ^= piv & mask
        return True


@dataclass
class Cocycle2:
    group: FiniteGroup
    values: np.ndarray   # n x n array of 0/1

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.uint8) % 2

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.group, self.values ^ other.values)

    def is_cocycle(self) -> bool:
        T = self.group.table
        c = self.values
        # c(g,h) + c(gh,k) == c(h,k) + c(g,hk) for all g,h,k
        lhs = c[:, :, None] ^ c[T][:, :, :]
        rhs = c[None, :, :] ^ c[np.arange(len(T))[:, None, None], T[None, :, :]]
        return bool(np.array_equal(lhs, rhs))

    def pullback(self, G: FiniteGroup, f: Sequence[int]) -> "Cocycle2":
        f = np.asarray(f)
        return Cocycle2(G, self.values[f[:, None], f[None, :]])


def is_coboundary(G: FiniteGroup, c: Cocycle2) -> bool:
    """Is there b: G -> F2 with c(g,h) = b(g) + b(h) + b(gh)?"""
    if not c.is_cocycle():
        raise ValueError("input is not a 2-cocycle")
    n = G.order
    sys_ = F2System(n)
    T = G.table
    for g in range(n):
        for h in range(n):
            row = (1 << g) ^ (1 << h) ^ (1 << int(T[g, h]))
            if c.values[g, h]:
                row |= sys_.rhs_bit
            sys_.add(row)
            if not sys_.consistent:
                return False
    return True


def coboundary_of(G: FiniteGroup, b: Sequence[int]) -> Cocycle2:
    b = np.asarray(b, dtype=np.uint8) % 2
    return Cocycle2(G, b[:, None] ^ b[None, :] ^ b[G.table])


def _cocycle_rows(G: FiniteGroup):
    n = G.order
    T = G.table
    for g in range(n):
        for h in range(n):
            gh = int(T[g, h])
            for k in range(n):
                yield ((1 << (g * n + h)) ^ (1 << (gh * n + k)) ^ (1 << (h * n + k))
                       ^ (1 << (g * n + int(T[h, k]))))


def _hom_rank(G: FiniteGroup) -> int:
    s = F2System(G.order)
    for g in range(G.order):
        for h in range(G.order):
            s.add((1 << g) ^ (1 << h) ^ (1 << int(G.table[g, h])))
    return s.rank


def h2_dimension(G: FiniteGroup) -> int:
    """dim_F2 H^2(G, F2) with trivial action, as dim Z^2 - dim B^2."""
    if G.order > 96:
        raise ValueError("group too large")
    n = G.order
    s = F2System(n * n)
    for row in _cocycle_rows(G):
        s.add(row)
    dim_z2 = n * n - s.rank
    # B^2 is the image of C^1; its kernel is Hom(G, F2)
    dim_b2 = _hom_rank(G)
    return dim_z2 - dim_b2


def _nullspace(system: F2System, nvars: int) -> list[int]:
    """Basis of solutions of the homogeneous system (rows given by ``system``)."""
    # bring to reduced form
    piv = dict(system.pivots)
    cols = sorted(piv, reverse=True)
    for c in cols:
        r = piv[c]
        for c2 in cols:
            if c2 != c and (piv[c2] >> c) & 1:
                piv[c2] ^= r
    free = [v for v in range(nvars) if v not in piv]
    basis = []
    for f in free:
        vec = 1 << f
        for c, r in piv.items():
            if (r >> f) & 1:
                vec |= 1 << c
        basis.append(vec)
    return basis


def h2_class_representatives(G: FiniteGroup) -> list[Cocycle2]:
    """Cocycles whose classes form a basis of H^2(G, F2)."""
    n = G.order
    s = F2System(n * n)
    for row in _cocycle_rows(G):
        s.add(row)
    z2 = _nullspace(s, n * n)
    span = F2System(n * n)
    for g in range(n):
        b = [0] * n
        b[g] = 1
        v = coboundary_of(G, b).values.reshape(-1)
        span.add(int("".join(str(int(x)) for x in v[::-1]), 2))
    reps = []
    for z in z2:
        if span.add(z):
            arr = np.array([(z >> i) & 1 for i in range(n * n)], dtype=np.uint8).reshape(n, n)
            reps.append(Cocycle2(G, arr))
    return reps


def central_extension(c: Cocycle2) -> FiniteGroup:
    G = c.group
    elems = [(g, a) for g in range(G.order) for a in (0, 1)]

    def mul(x, y):
        return (G.mul(x[0], y[0]), (x[1] + y[1] + int(c.values[x[0], y[0]])) % 2)

    return FiniteGroup(elems, mul, name="extension")


def extension_lifting_profile(c: Cocycle2, s4: FiniteGroup) -> dict[str, set[int]]:
    E = central_extension(c)
    out = {"transposition": set(), "double_transposition": set()}
    for i, (g, a) in enumerate(E.elements):
        key = {(1, 1, 2): "transposition", (2, 2): "double_transposition"}.get(
            cycle_type(s4.elements[g]))
        if key:
            out[key].add(E.element_order(i))
    return out


def s4plus_cocycle(gl: GL2F3 | None = None, seed: int | None = None) -> Cocycle2:
    """c(g,h) = 0 or 1 as s(g)s(h)s(gh)^-1 is I or -I, for a section s of GL2(F3) -> S4."""
    gl = gl or build_gl2f3()
    rng = random.Random(seed)
    section = []
    for s in range(gl.s4.order):
        lifts = gl.lifts(s)
        section.append(lifts[0] if seed is None else rng.choice(lifts))
    G = gl.group
    n = gl.s4.order
    vals = np.zeros((n, n), dtype=np.uint8)
    for g in range(n):
        for h in range(n):
            prod = G.mul(section[g], section[h])
            gh = gl.s4.mul(g, h)
            vals[g, h] = 0 if prod == section[gh] else 1
    return Cocycle2(gl.s4, vals)


def pullback_sum_is_coboundary(seed: int | None = None) -> bool:
    sd = build_semidirect()
    gl = build_gl2f3()
    c = s4plus_cocycle(gl, seed)
    total = None
    for P in sd.projections:
        pb = c.pullback(sd.group, P)
        total = pb if total is None else total + pb
    return is_coboundary(sd.group, total)


def group_checks(table=None) -> list[tuple[str, bool, str]]:
    """Every group-theoretic verification as (name, passed, detail), in a fixed order.

    ``table`` replaces the multiplication table of GL2(F3) (element order as
    in build_gl2f3); a malformed table fails the first check and stops.
    """
    out = []
    gl = build_gl2f3()
    if table is not None:
        try:
            G = FiniteGroup(gl.group.elements, table=np.asarray(table), name="GL2(F3)")
            if not is_homomorphism(G, gl.s4, gl.projection):
                raise ValueError("projection to S4 is not a homomorphism")
        except ValueError as exc:
            return [("GL2(F3) table", False, str(exc))]
        gl = GL2F3(G, gl.s4, gl.projection)
    kernel = sorted(gl.kernel())
    ok = gl.group.order == 48 and kernel == sorted([gl.group.identity, gl.minus_identity])
    out.append(("GL2(F3) table", ok, f"order {gl.group.order}, kernel of size {len(kernel)}"))
    lo = lifting_orders(gl)
    out.append(("lifting orders", lo == {"transposition": {2}, "double_transposition": {4}},
                f"transpositions {sorted(lo['transposition'])}, "
                f"double transpositions {sorted(lo['double_transposition'])}"))
    out.append(("S3 inside GL2(F3)", s3_subgroup_check(), "generated subgroup is non-abelian of order 6"))
    sd = build_semidirect()
    normal = normal_subgroups_of_order(sd.group, 4)
    out.append(("normal subgroups of order 4", len(normal) == 3,
                f"{len(normal)} in a group of order {sd.group.order}"))
    sizes = sorted(len(o) for o in s3_orbits_on_v4())
    out.append(("S3 orbits on (Z/2)^4", sizes == [1, 3, 3, 3, 6], f"sizes {sizes}"))
    out.append(("projections onto S4", projections_are_homomorphisms(sd), "three surjective homomorphisms"))
    out.append(("five-subgroup completion", five_subgroup_check(), "exhaustive over triples"))
    c = s4plus_cocycle(gl)
    out.append(("s4+ not a coboundary on S4", not is_coboundary(gl.s4, c), "cocycle from a section"))
    h2 = h2_dimension(gl.s4)
    out.append(("dim H^2(S4, F2)", h2 == 2, f"dimension {h2}"))
    out.append(("pullback sum is a coboundary", pullback_sum_is_coboundary(),
                "sum of the three pullbacks of s4+ to S3 x| (Z/2)^4"))
    return out


# --------------------------------------------------------------------------
# characters


def _round_zsqrt2(v: complex, tol: float = 1e-6) -> tuple[int, int]:
    """Nearest a + b sqrt(-2)."""
    a = round(v.real)
    b = round(v.imag / np.sqrt(2))
    if abs(v - complex(a, b * np.sqrt(2))) > tol:
        raise ValueError(f"character value {v} is not in Z[sqrt(-2)]")
    return int(a), int(b)


def character_table(G: FiniteGroup, seed: int = 1) -> tuple[list[list[int]], np.ndarray]:
    """Burnside's algorithm: simultaneous eigenvectors of the class matrices.

    Returns the classes and an (r x r) complex array, row i = character i.
    """
    classes = G.conjugacy_classes()
    r = len(classes)
    cls_of = np.empty(G.order, dtype=int)
    for k, cl in enumerate(classes):
        cls_of[cl] = k
    sizes = np.array([len(cl) for cl in classes], dtype=float)
    # M_i[j, k] = #{(x, y) in C_i x C_j : x y = z_k}
    M = np.zeros((r, r, r))
    for i, Ci in enumerate(classes):
        for j, Cj in enumerate(classes):
            for x in Ci:
                for y in Cj:
                    M[i, j, cls_of[G.mul(x, y)]] += 1
        M[i] /= sizes[None, :]
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(r)
    A = np.tensordot(coeffs, M, axes=1)
    _, vecs = np.linalg.eig(A)
    e = cls_of[G.identity]
    chars = []
    for v in vecs.T:
        w = v / v[e]
        norm = np.sum(np.abs(w) ** 2 / sizes)
        deg = np.sqrt(G.order / norm)
        chars.append(w * deg / sizes)
    chars = np.array(chars)
    order = np.lexsort((chars[:, 0].real.round(6), ))
    return classes, chars[order]


def faithful_2dim_characters(G: FiniteGroup, central: int) -> list[dict[int, tuple[int, int]]]:
    """Characters of degree 2 with chi(central) = -2, as class index -> (a, b) = a + b sqrt(-2)."""
    classes, chars = character_table(G)
    cz = G.class_of(central)
    ce = G.class_of(G.identity)
    out = []
    for row in chars:
        if abs(row[ce] - 2) < 1e-6 and abs(row[cz] + 2) < 1e-6:
            out.append({k: _round_zsqrt2(row[k]) for k in range(len(classes))})
    return out


# --------------------------------------------------------------------------
# Frobenius table


ORDER8_PAIR = frozenset({(0, 1), (0, -1)})


@dataclass
class FrobeniusClass:
    label: str
    size: int
    order: int
    quartic_pattern: tuple[int, ...]
    sextic4_pattern: tuple[int, ...]   # cycle type on the 24 cosets
    trace: tuple[int, int]             # a + b sqrt(-2) under one fixed faithful character


@dataclass
class FrobeniusTable:
    classes: list[FrobeniusClass]
    entries: dict = field(default_factory=dict)   # (quartic, deg24) -> (a, b) or ORDER8_PAIR

    def lookup(self, quartic_pattern, deg24_pattern):
        key = (tuple(sorted(quartic_pattern)), tuple(sorted(deg24_pattern)))
        if key not in self.entries:
            raise KeyError(key)
        return self.entries[key]

    def to_json(self) -> str:
        rows = []
        for c in self.classes:
            rows.append({
                "class": c.label, "size": c.size, "order": c.order,
                "quartic_pattern": list(c.quartic_pattern),
                "degree24_pattern": list(c.sextic4_pattern),
                "trace": _format_trace(c.trace) if c.order != 8 else "+-sqrt(-2)",
            })
        return json.dumps(rows, indent=1)


def _format_trace(t: tuple[int, int]) -> str:
    a, b = t
    if b == 0:
        return str(a)
    s = f"{b}*sqrt(-2)" if abs(b) != 1 else ("sqrt(-2)" if b == 1 else "-sqrt(-2)")
    return s if a == 0 else f"{a}+{s}".replace("+-", "-")


def reference_involution(gl: GL2F3) -> int:
    """Noncentral involution [[0,1],[1,0]] lifting a transposition."""
    return gl.matrix(((0, 1), (1, 0)))


def coset_action(G: FiniteGroup, H: Sequence[int]) -> list[tuple[int, ...]]:
    """Permutation of the left cosets xH induced by each g."""
    H = sorted(H)
    cosets = []
    where = {}
    for x in range(G.order):
        if x in where:
            continue
        c = frozenset(G.mul(x, h) for h in H)
        for y in c:
            where[y] = len(cosets)
        cosets.append(min(c))
    return [tuple(where[G.mul(g, x)] for x in cosets) for g in range(G.order)]


def frobenius_table(gl: GL2F3 | None = None) -> FrobeniusTable:
    gl = gl or build_gl2f3()
    G = gl.group
    s = reference_involution(gl)
    perms24 = coset_action(G, [G.identity, s])
    chars = faithful_2dim_characters(G, gl.minus_identity)
    if len(chars) != 2:
        raise AssertionError("expected two faithful characters of degree 2")
    chi = chars[0]
    classes = []
    entries: dict = {}
    for k, cl in enumerate(G.conjugacy_classes()):
        g = cl[0]
        order = G.element_order(g)
        q = cycle_type(gl.s4.elements[gl.projection[g]])
        c24 = cycle_type(perms24[g])
        label = f"{order}{chr(ord('A') + sum(1 for c in classes if c.order == order))}"
        fc = FrobeniusClass(label, len(cl), order, q, c24, chi[k])
        classes.append(fc)
        key = (q, c24)
        val = ORDER8_PAIR if order == 8 else chi[k]
        if key in entries and entries[key] != val:
            raise AssertionError(f"pattern {key} does not determine the trace")
        entries[key] = val
    allowed = {(2, 0), (-2, 0), (0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}
    if not all(c.trace in allowed for c in classes):
        raise AssertionError("unexpected trace values")
    return FrobeniusTable(classes, entries)


# --------------------------------------------------------------------------
# the 2+S4 field attached to a quartic and an explicit gamma
#
# Roots of the degree-24 polynomial are labelled k = q + 12 s where q indexes
# the ordered pair (i, j) of quartic roots and s = 0 / 1 picks +sqrt / -sqrt of
# gamma(x_i, x_j).  The Galois group is found as a permutation group on these
# labels; Frobenius classes are then identified with resolvents
#     Gamma_C(X) = prod_{g in C} (X - sum_k h(a_k) a_{g(k)})
# evaluated at Tr(h(t) t^p) in F_p[t]/(F), F any defining polynomial whose
# roots a_k carry the same labels.


class FrobeniusError(RuntimeError):
    pass


def _pairs():
    return [(i, j) for i in range(4) for j in range(4) if i != j]


def _lift(sigma: tuple, eps: Sequence[int]) -> tuple:
    pairs = _pairs()
    where = {pq: n for n, pq in enumerate(pairs)}
    out = [0] * 24
    for q, (i, j) in enumerate(pairs):
        q2 = where[(sigma[i], sigma[j])]
        for s in (0, 1):
            out[q + 12 * s] = q2 + 12 * (s ^ eps[q])
    return tuple(out)


def _orbits(perm: tuple, n: int) -> list[list[int]]:
    seen, out = set(), []
    for i in range(n):
        if i in seen:
            continue
        orb, j = [], i
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = perm[j]
        out.append(orb)
    return out


def _sign_vectors(sigma: tuple, parity: int) -> list[list[int]]:
    """Sign choices with product of signs along each orbit on pairs equal to ``parity``,
    modulo the global sign (first entry fixed to 0)."""
    pairs = _pairs()
    where = {pq: n for n, pq in enumerate(pairs)}
    on_pairs = tuple(where[(sigma[i], sigma[j])] for i, j in pairs)
    orbits = _orbits(on_pairs, 12)
    choices = []
    for orb in orbits:
        k = len(orb)
        opts = []
        for bits in itertools.product((0, 1), repeat=k):
            # fixed pairs of an involution are unconstrained
            if k == 1 or sum(bits) % 2 == parity:
                opts.append(bits)
        choices.append((orb, opts))
    out = []
    for combo in itertools.product(*(opts for _, opts in choices)):
        eps = [0] * 12
        for (orb, _), bits in zip(choices, combo):
            for q, b in zip(orb, bits):
                eps[q] = b
        if eps[0] == 0:
            out.append(eps)
    return out


NEGATION = tuple((k + 12) % 24 for k in range(24))


def _mp_int(x, tol):
    import mpmath
    n = mpmath.nint(x.real)
    return abs(x - n) < tol


def _is_galois_candidate(H: FiniteGroup, roots, tol) -> bool:
    import mpmath
    for mono in _GALOIS_TESTS:
        total = mpmath.mpc(0)
        for g in H.elements:
            term = mpmath.mpc(1)
            for k in mono:
                term *= roots[g[k]]
            total += term
        if not _mp_int(total, tol):
            return False
    return True


_GALOIS_TESTS = [(0, 1), (0, 0, 5), (0, 13, 7), (2, 2, 9, 20)]


def find_galois_group(roots, digits: int = 60, generators=None) -> FiniteGroup:
    """The Galois group of prod (t - roots[k]) as a permutation group on labels.

    Candidates are generated by lifts of (0 1) and (0 1 2 3) together with
    negation; the true group is the unique order-48 candidate whose orbit sums
    of test monomials in the roots are rational integers.  Known generators
    skip the search but are still checked.
    """
    import mpmath
    tau = (1, 0, 2, 3)
    cyc = (1, 2, 3, 0)
    tol = mpmath.mpf(10) ** (-digits // 3)
    found = []
    with mpmath.workdps(digits):
        if generators is not None:
            H = permutation_group([tuple(g) for g in generators] + [NEGATION], limit=48)
            if H is None or H.order != 48 or not _is_galois_candidate(H, roots, tol):
                raise FrobeniusError("supplied generators do not give the Galois group")
            H.generators = tuple(tuple(g) for g in generators)
            return H
        for e1 in _sign_vectors(tau, 0):
            t = _lift(tau, e1)
            if compose_perm(t, t) != tuple(range(24)):
                continue
            for e2 in _sign_vectors(cyc, 1):
                c = _lift(cyc, e2)
                H = permutation_group([t, c, NEGATION], limit=48)
                if H is None or H.order != 48:
                    continue
                if _is_galois_candidate(H, roots, tol) and H.elements not in [F.elements for F in found]:
                    found.append(H)
                    gens = (t, c)
    if len(found) != 1:
        raise FrobeniusError(f"expected a unique Galois group, found {len(found)}")
    found[0].generators = gens
    return found[0]


def _power_sums_mod_p(F: Sequence[int], n: int, p: int) -> list[int]:
    """p_0..p_{n-1} of the roots of monic F (ascending coefficients) mod p (any modulus)."""
    d = len(F) - 1
    c = [x % p for x in F]      # F = t^d + c_{d-1} t^{d-1} + ...
    ps = [d % p]
    for k in range(1, n):
        s = k * c[d - k] if k <= d else 0
        for i in range(1, min(k, d + 1)):
            s += c[d - i] * ps[k - i]
        ps.append((-s) % p)
    return ps


@dataclass
class DefiningPolynomial:
    """Monic integral polynomial of the degree-24 field with labelled complex roots."""

    name: str
    coeffs: list[int]          # ascending, monic
    roots: list                # roots[k] for label k
    resolvents: dict = field(default_factory=dict)   # (h, class) -> int coefficients

    def squarefree_mod(self, p: int) -> bool:
        from .arith import pderiv, pgcd, pmod
        f = pmod(self.coeffs, p)
        return len(f) == len(self.coeffs) and len(pgcd(f, pderiv(f, p), p)) == 1


def _ring_eval(poly: Sequence[int], x: list[int], F: list[int], N: int) -> list[int]:
    """poly(x) in (Z/N)[t]/F by Horner."""
    from .arith import pmul, prem, psub
    acc: list[int] = []
    for c in reversed(poly):
        acc = psub(prem(pmul(acc, x, N), F, N), [-c], N)
    return acc


def _inverse_mod(a: list[int], F: list[int], p: int, N: int) -> list[int]:
    """Inverse of a in (Z/N)[t]/F, N a power of p, from the extended gcd over F_p."""
    from .arith import pdivmod, pmod, pmul, prem, psub
    r0, r1 = pmod(F, p), prem(pmod(a, p), F, p)
    s0, s1 = [], [1]
    while r1 and len(r1) > 1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
    if not r1:
        raise FrobeniusError("element is not invertible modulo p")
    v = pmod([c * pow(r1[0], -1, p) for c in s1], p)
    M = p
    while M < N:
        M = min(M * M, N)
        av = prem(pmul(a, v, M), F, M)
        v = prem(pmul(v, psub([2], av, M), M), F, M)
    return v


def _frobenius_lift(F: list[int], p: int, N: int) -> list[int]:
    """phi(t) in (Z/N)[t]/F with F(phi) = 0 and phi = t^p mod p; F squarefree mod p."""
    from .arith import pderiv, pmod, pmul, ppowmod, prem, psub
    phi = ppowmod([0, 1], p, F, N)
    dF = pderiv(F, N)
    M = p
    while True:
        val = _ring_eval(F, phi, F, N)
        if not val:
            return phi
        if M >= N:
            raise FrobeniusError("Hensel lifting of Frobenius did not converge")
        M = min(M * M, N)
        inv = _inverse_mod(_ring_eval(dF, phi, F, N), F, p, N)
        phi = psub(phi, prem(pmul(val, inv, N), F, N), N)


_H_CHOICES = ([(0, 0, 1), (0, 1), (0, 0, 0, 1), (1, 1, 1), (0, 0, 0, 0, 1), (2, 0, 1, 1)]
              + [tuple([0] * k + [1]) for k in range(5, 12)]
              + [(1, 1, 0, 1), (0, 1, 1, 0, 1), (1, 0, 0, 1, 1), (0, 1, 0, 1, 0, 1)])   # ascending coefficients of h


def _eval_int_poly(h: Sequence[int], x):
    acc = 0
    for c in reversed(h):
        acc = acc * x + c
    return acc


class OctahedralField:
    """Numerical model of the degree-48 2+S4 field cut out by sqrt(gamma)."""

    def __init__(self, quartic, gamma, digits: int = 120,
                 shifts: Sequence[tuple[int, int]] = ((0, 0), (1, 0), (0, 1), (1, 1), (1, -1),
                                                     (-1, 0), (0, -1), (2, 1), (1, 2), (3, 1)),
                 galois_generators=None, two_adic_recipe: dict | None = None):
        import mpmath
        from . import embed
        from .arith import RationalPoly, complex_roots
        self.quartic = quartic.monic()
        self.gamma = gamma
        self.digits = digits
        with mpmath.workdps(digits + 30):
            xs = complex_roots(self.quartic, digits + 30)
            gam = embed.gamma_conjugates(self.quartic, gamma, digits + 30)
            base = [mpmath.sqrt(g) for g in gam] + [-mpmath.sqrt(g) for g in gam]
            self.x_roots = xs
            self.base_roots = base
            self.galois = find_galois_group(base, digits=min(digits, 80),
                                            generators=galois_generators)
            pairs = _pairs()
            self.polys: list[DefiningPolynomial] = []
            # theta = sqrt(gamma_ij) + m x_i + n x_j
            for m, n in shifts:
                roots = [base[k] + m * xs[pairs[k % 12][0]] + n * xs[pairs[k % 12][1]]
                         for k in range(24)]
                coeffs = self._integral_poly(roots)
                if coeffs is None:
                    continue
                poly = DefiningPolynomial(f"theta({m:+d},{n:+d})", coeffs, roots)
                if RationalPoly(coeffs).is_squarefree():
                    self.polys.append(poly)
        G = self.galois
        self.negation = G.index[NEGATION]
        self.classes = G.conjugacy_classes()
        chars = faithful_2dim_characters(G, self.negation)
        if len(chars) != 2:
            raise FrobeniusError("Galois group does not have two faithful degree-2 characters")
        self._chars = chars
        self.chi = chars[0]
        self._two_adic_tried = False
        self.two_adic_recipe = two_adic_recipe

    def _integral_poly(self, roots):
        import mpmath
        poly = [mpmath.mpc(1)]
        for r in roots:
            new = [mpmath.mpc(0)] * (len(poly) + 1)
            for k, v in enumerate(poly):
                new[k] += -r * v
                new[k + 1] += v
            poly = new
        out = []
        tol = mpmath.mpf(10) ** (-self.digits // 2)
        for v in poly:
            n = int(mpmath.nint(v.real))
            if abs(v - n) > tol:
                return None
            out.append(n)
        return out

    # ---- resolvents

    def _resolvent(self, poly: DefiningPolynomial, h: tuple, k: int) -> list[int]:
        import mpmath
        key = (h, k)
        if key not in poly.resolvents:
            G = self.galois
            with mpmath.workdps(self.digits + 30):
                hr = [_eval_int_poly(h, a) for a in poly.roots]
                vals = []
                for g in self.classes[k]:
                    perm = G.elements[g]
                    vals.append(sum(hr[i] * poly.roots[perm[i]] for i in range(24)))
                coeffs = self._integral_poly(vals)
            if coeffs is None:
                raise FrobeniusError("resolvent coefficients are not integral; raise precision")
            poly.resolvents[key] = coeffs
        return poly.resolvents[key]

    def frobenius_class(self, p: int) -> int:
        """Index of the conjugacy class of Frobenius at an unramified prime p.

        For a model F squarefree mod p, the Frobenius lift phi of Z_p[t]/F gives
        T = Tr(h(t) phi(t)) = sum_k h(a_k) Frob(a_k) exactly, so the true class C
        has Gamma_C(T) = 0 mod p^m.  Other models only give T = Tr(h(t) t^p) mod p,
        still a root of Gamma_C mod p.  Candidates are intersected until one is left.
        """
        from .arith import pmod, pmul, ppowmod, prem
        candidates = set(range(len(self.classes)))
        ordered = sorted(self.polys, key=lambda P: not P.squarefree_mod(p))
        for poly in ordered:
            if poly.squarefree_mod(p):
                N = p ** max(1, -(-64 // p.bit_length()))
                F = pmod(poly.coeffs, N)
                phi = _frobenius_lift(F, p, N)
            else:
                N = p
                F = pmod(poly.coeffs, p)
                phi = ppowmod([0, 1], p, F, p)
            ps = _power_sums_mod_p(poly.coeffs, 24, N)
            for h in _H_CHOICES:
                elt = prem(pmul(pmod(list(h), N), phi, N), F, N)
                T = sum(c * ps[i] for i, c in enumerate(elt)) % N
                try:
                    hits = {k for k in candidates
                            if _eval_int_poly(self._resolvent(poly, h, k), T) % N == 0}
                except FrobeniusError:
                    break
                candidates &= hits
                if len(candidates) == 1:
                    return candidates.pop()
        if p == 2 and not self._two_adic_tried:
            self._two_adic_tried = True
            extra = self._two_maximal_model(self.two_adic_recipe)
            if extra is not None:
                self.polys.append(extra)
                return self.frobenius_class(p)
        raise FrobeniusError(f"cannot identify Frobenius at p = {p}: "
                             f"{len(candidates)} classes remain")

    def _is_integral(self, vals) -> bool:
        import mpmath
        tol = mpmath.mpf(10) ** (-self.digits // 2)
        for k in (1, 2):
            s = sum(v ** k for v in vals)
            if abs(s - mpmath.nint(s.real)) > tol:
                return False
        return self._integral_poly(vals) is not None

    def _two_maximal_model(self, recipe: dict | None = None):
        """A model (w + z)/2 squarefree mod 2, or None; sets ``two_adic_recipe``.

        A Z-basis of the degree-12 subfield is enlarged by integral halves of
        0/1 combinations until none is left; w is sqrt(gamma) divided by the
        largest power of 2 keeping it integral, and z runs over 0/1
        combinations of the enlarged basis.  A stored recipe replays the
        choices; every step is still checked for integrality.
        """
        import mpmath
        pairs = _pairs()
        xs = self.x_roots
        n = 12

        def half_sum(basis, mask):
            return [sum(basis[k][q] for k in range(n) if mask >> k & 1) / 2 for q in range(12)]

        def grow_once(basis, masks):
            for mask in masks:
                e = half_sum(basis, mask)
                if self._is_integral(e):
                    basis[mask.bit_length() - 1] = e
                    return mask
            return None

        with mpmath.workdps(self.digits + 30):
            basis = [[xs[i] ** a * xs[j] ** b for i, j in pairs]
                     for a in range(4) for b in range(3)]
            grown = []
            if recipe is None:
                while (m := grow_once(basis, range(1, 1 << n))) is not None:
                    grown.append(m)
            else:
                for m in recipe["grow"]:
                    if grow_once(basis, [m]) is None:
                        raise FrobeniusError("stored 2-adic recipe does not replay")
                    grown.append(m)
            w = list(self.base_roots)
            halvings = 0
            while self._is_integral([b / 2 for b in w]):
                w = [b / 2 for b in w]
                halvings += 1
            if recipe is not None and halvings != recipe["halve"]:
                raise FrobeniusError("stored 2-adic recipe does not replay")
            finals = range(1 << n) if recipe is None else [recipe["bits"]]
            for bits in finals:
                roots = [(w[k] + sum(basis[m][k % 12] for m in range(n) if bits >> m & 1)) / 2
                         for k in range(24)]
                if not self._is_integral(roots):
                    continue
                poly = DefiningPolynomial("two-adic", self._integral_poly(roots), roots)
                if poly.squarefree_mod(2):
                    self.two_adic_recipe = {"grow": grown, "halve": halvings, "bits": bits}
                    return poly
        return None

    def trace(self, k: int) -> tuple[int, int]:
        return self.chi[k]

    def fix_convention(self, p0: int):
        """Choose the faithful character with chi(Frob_p0) = +sqrt(-2) (p0 an order-8 prime)."""
        k = self.frobenius_class(p0)
        for chi in self._chars:
            if chi[k] == (0, 1):
                self.chi = chi
                return
        raise FrobeniusError(f"Frobenius at {p0} is not of order 8")

    def class_order(self, k: int) -> int:
        return self.galois.element_order(self.classes[k][0])

    # ---- ramified primes

    def ramified_trace(self, p: int, level: int) -> int:
        """0 if p^2 | level; otherwise +1 / -1 for residue degree 1 / 2 of the unramified
        primes above p in the degree-24 field."""
        from .arith import factor_degrees_mod_p, is_p_maximal, RationalPoly
        if level % (p * p) == 0:
            return 0
        if level % p:
            raise ValueError(f"{p} does not divide the level")
        for poly in self.polys:
            f = RationalPoly(poly.coeffs)
            if not is_p_maximal(f, p):
                continue
            facs = factor_degrees_mod_p(f, p)
            unram = {d for d, e in facs if e == 1}
            if unram == {1}:
                return 1
            if unram == {2}:
                return -1
        raise FrobeniusError(f"no p-maximal model decides the residue degree at {p}")


def classify_by_patterns(table: FrobeniusTable, quartic, poly24, p: int):
    """Trace (or the order-8 pair marker) read from the two factorization patterns."""
    from .arith import factorization_pattern_mod_p
    q, q_ok = factorization_pattern_mod_p(quartic, p)
    d, d_ok = factorization_pattern_mod_p(poly24, p)
    if not (q_ok and d_ok):
        raise KeyError(p)
    return table.lookup(q, d)


# ---- weight-1 coefficients


def zs_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """(a + b sqrt(-2)) (c + d sqrt(-2))."""
    return (x[0] * y[0] - 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def zs_sub(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return (x[0] - y[0], x[1] - y[1])


def zs_conj(x: tuple[int, int]) -> tuple[int, int]:
    return (x[0], -x[1])


def _load_case_data(name: str, case: int):
    from pathlib import Path
    path = Path(__file__).with_name("data") / name
    if not path.exists():
        return None
    return json.loads(path.read_text()).get(str(case))


def _load_galois_generators(case: int):
    return _load_case_data("galois.json", case)


def octahedral_field(case: int, digits: int = 120) -> OctahedralField:
    """OctahedralField for a shipped case; the stored Galois generators are re-verified."""
    from . import embed
    data = embed.load_case(case)
    return OctahedralField(data["quartic"], data["gamma"], digits=digits,
                           galois_generators=_load_galois_generators(case),
                           two_adic_recipe=_load_case_data("two_adic.json", case))


@dataclass
class Weight1Form:
    """a_p at primes, with the order-8 primes whose sign is not yet fixed."""

    level: int
    disc_char: int
    prime_values: dict            # p -> (a, b) meaning a + b sqrt(-2)
    ambiguous: set                # primes with a_p = +-sqrt(-2), sign unresolved
    bound: int

    def chi(self, p: int) -> int:
        from .arith import kronecker_symbol
        return 0 if self.level % p == 0 else kronecker_symbol(self.disc_char, p)

    def with_signs(self, signs: dict) -> "Weight1Form":
        """Resolve ambiguous primes: signs[p] = +1 means a_p = +sqrt(-2)."""
        vals = dict(self.prime_values)
        for p, s in signs.items():
            if p not in self.ambiguous:
                raise ValueError(f"{p} is not an ambiguous prime")
            vals[p] = (0, s)
        return Weight1Form(self.level, self.disc_char, vals, self.ambiguous - set(signs), self.bound)

    def coefficients(self, B: int | None = None) -> list[tuple[int, int]]:
        """a_0 .. a_B (a_0 = 0).  Unresolved primes are taken as +sqrt(-2);
        ``marked(B)`` lists the indices that depend on them."""
        from .arith import factor_int
        B = self.bound if B is None else B
        if B > self.bound:
            raise ValueError(f"coefficients were computed up to {self.bound}")
        out = [(0, 0)] * (B + 1)
        if B >= 1:
            out[1] = (1, 0)
        for n in range(2, B + 1):
            acc = (1, 0)
            for p, e in factor_int(n).items():
                acc = zs_mul(acc, self._prime_power(p, e))
            out[n] = acc
        return out

    def _prime_power(self, p: int, e: int) -> tuple[int, int]:
        ap = self.prime_values[p]
        prev, cur = (1, 0), ap
        for _ in range(e - 1):
            prev, cur = cur, zs_sub(zs_mul(ap, cur), (self.chi(p) * prev[0], self.chi(p) * prev[1]))
        return cur if e else (1, 0)

    def marked(self, B: int | None = None) -> list[int]:
        from .arith import factor_int
        B = self.bound if B is None else B
        return [n for n in range(2, B + 1)
                if any(p in self.ambiguous for p in factor_int(n))]


def weight1_coefficients(quartic, poly24, disc_char: int, ramified_rules: dict, B: int,
                         resolver: OctahedralField | None = None, level: int | None = None,
                         table: FrobeniusTable | None = None) -> Weight1Form:
    """Prime data of the weight-1 form attached to the 2+S4 field.

    Unramified p: trace read from the two factorization patterns; without a
    resolver, order-8 primes stay ambiguous.  With a resolver, its Frobenius
    class is used when the patterns are silent (index divisors) and fixes the
    order-8 signs; where both apply they must agree.  Ramified p: the value in
    ``ramified_rules`` (an integer, or "auto" to ask the resolver).
    """
    from .arith import RationalPoly, primes_up_to
    if B < 1 or B > 10 ** 5:
        raise ValueError("need 1 <= B <= 10^5")
    if level is None:
        level = 1
        for p in ramified_rules:
            level *= p
    table = table or frobenius_table()
    quartic = quartic.monic()
    poly24 = poly24 if isinstance(poly24, RationalPoly) else RationalPoly(poly24)
    values: dict = {}
    ambiguous: set = set()
    for p in primes_up_to(B):
        if p in ramified_rules or level % p == 0:
            rule = ramified_rules.get(p, "auto")
            if rule == "auto":
                if resolver is None:
                    raise FrobeniusError(f"no rule for the ramified prime {p}")
                rule = resolver.ramified_trace(p, level)
            values[p] = (int(rule), 0)
            continue
        try:
            t = classify_by_patterns(table, quartic, poly24, p)
        except KeyError:
            t = None
            if resolver is None:
                raise FrobeniusError(f"factorization patterns at p = {p} are not in the table; "
                                     "p ramifies or divides the index of the models") from None
        if resolver is not None and (t is None or t == ORDER8_PAIR):
            u = resolver.trace(resolver.frobenius_class(p))
            if t == ORDER8_PAIR and u[0] != 0:
                raise FrobeniusError(f"resolvent and pattern classes disagree at p = {p}")
            t = u
        if t == ORDER8_PAIR:
            ambiguous.add(p)
            t = (0, 1)
        values[p] = t
    return Weight1Form(level, disc_char, values, ambiguous, B)
