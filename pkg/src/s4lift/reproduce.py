"""End-to-end eigenform pipelines for the three worked cases.

Each case builds a span of weight-3/2 forms (theta series of the class
tables plus products of the weight-1 octahedral form with a unary theta),
finds the simultaneous T_{p^2}-eigenvector with eigenvalues a_p(E) for the
search primes, checks the eigenvalue equation at every good p up to a bound
and compares the expansion with the shipped golden vector.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import elliptic, halfint, octahedral, ternary
from .arith import RationalPoly, primes_up_to
from .halfint import QExpansion

DATA = Path(__file__).with_name("data")
SEARCH_PRIMES = (3, 5, 7)
CHECK_BOUND = 20
CHECK_TERMS = 50


@dataclass(frozen=True)
class CaseSetup:
    case: int
    level: int                          # level of the weight-3/2 space
    table_levels: tuple[int, ...]
    weight1_level: int
    ramified: dict
    targets: tuple[tuple[str, str, int], ...]   # (name, curve label, leading coefficient)


CASES = {
    43: CaseSetup(43, 344, (172, 344), 344, {2: 0, 43: "auto"},
                 (("G_43A", "43A", 1), ("G_172A", "172A", 1))),
    563: CaseSetup(563, 2252, (2252,), 563, {563: "auto"}, (("F_563A", "563A", -2),)),
    643: CaseSetup(643, 2572, (2572,), 643, {643: "auto"}, (("F_643A", "643A", 1),)),
}


class StageError(RuntimeError):
    """A pipeline stage failed; ``stage`` names it and ``cause`` is the original error."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"{stage}: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


def default_truncation(check_bound: int = CHECK_BOUND, terms: int = CHECK_TERMS) -> int:
    """Enough coefficients to test T_{p^2} on q^0..q^terms for every prime p <= check_bound."""
    p = max(primes_up_to(check_bound))
    return p * p * terms


def load_golden(name: str) -> QExpansion:
    d = json.loads((DATA / "golden_expansions.json").read_text())[name]
    return QExpansion.from_json(json.dumps(d))


def golden_names() -> list[str]:
    return list(json.loads((DATA / "golden_expansions.json").read_text()))


@dataclass
class Eigenform:
    name: str
    curve: str
    labels: list[str]
    combination: list[Fraction]
    expansion: QExpansion
    hecke: dict[int, bool]
    golden: QExpansion | None

    def diff(self) -> list[tuple[int, tuple, tuple]]:
        """(m, computed, expected) for every mismatching coefficient in the golden range."""
        if self.golden is None:
            return []
        B = min(self.golden.B, self.expansion.B)
        return [(m, self.expansion[m], self.golden[m]) for m in range(B + 1)
                if self.expansion[m] != self.golden[m]]

    @property
    def matches_golden(self) -> bool:
        return self.golden is not None and self.golden.B <= self.expansion.B and not self.diff()

    @property
    def hecke_ok(self) -> bool:
        return all(self.hecke.values())

    def to_dict(self, terms: int = CHECK_TERMS) -> dict:
        nz = [(lab, c) for lab, c in zip(self.labels, self.combination) if c]
        return {
            "name": self.name,
            "curve": self.curve,
            "combination": [[lab, _q(c)] for lab, c in nz],
            "expansion": [[_q(x), _q(y)] for x, y in zip(self.expansion.re[:terms + 1],
                                                       self.expansion.im[:terms + 1])],
            "hecke": {str(p): ok for p, ok in self.hecke.items()},
            "golden_match": self.matches_golden,
            "diff": [[m, [_q(a) for a in got], [_q(a) for a in want]]
                     for m, got, want in self.diff()],
        }


@dataclass
class CaseReport:
    case: int
    truncation: int
    labels: list[str]
    eigenforms: list[Eigenform]
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e.matches_golden and e.hecke_ok for e in self.eigenforms)

    def to_dict(self) -> dict:
        return {"case": self.case, "truncation": self.truncation, "basis": self.labels,
                "eigenforms": [e.to_dict() for e in self.eigenforms], "ok": self.ok}


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _theta(args):
    T, B = args
    return ternary.theta_series(T, B)


def theta_basis(setup: CaseSetup, B: int, jobs: int = 1) -> tuple[list[str], list[QExpansion]]:
    """All theta series of the shipped class tables, labelled by level and row."""
    labels, forms = [], []
    for N in setup.table_levels:
        rows = ternary.load_table(N)
        labels += [f"theta[{N}:Q{i + 1}]" for i in range(len(rows))]
        forms += rows
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            series = list(ex.map(_theta, [(T, B) for T in forms]))
    else:
        series = [ternary.theta_series(T, B) for T in forms]
    return labels, series


def weight1_form(setup: CaseSetup, B: int, digits: int = 120) -> QExpansion:
    """q-expansion of the weight-1 form attached to the case, coefficients in Z[sqrt(-2)]."""
    M = octahedral.octahedral_field(setup.case, digits=digits)
    for p in primes_up_to(200):
        if setup.weight1_level % p and M.class_order(M.frobenius_class(p)) == 8:
            M.fix_convention(p)
            break
    base = RationalPoly(M.polys[0].coeffs)
    W = octahedral.weight1_coefficients(M.quartic, base, -setup.case, setup.ramified, B,
                                        resolver=M, level=setup.weight1_level)
    c = W.coefficients()
    return QExpansion([a for a, _ in c], [b for _, b in c], weight=1,
                      level=setup.weight1_level, character=-setup.case)


def auxiliary_forms(setup: CaseSetup, B: int, digits: int = 120) -> list[tuple[str, QExpansion]]:
    """Products of the weight-1 form with the unary theta, as rational expansions."""
    if setup.weight1_level == setup.level:
        f = weight1_form(setup, B, digits)
        F = halfint.product_weight_3_2(f, setup.case, B)
        return [("F1", F.real_part()), ("F2", F.imag_part())]
    f = weight1_form(setup, B // 4 + 1, digits)
    F = halfint.product_weight_3_2(halfint.expand_4z(f, B), setup.case, B)
    return [(f"f{setup.case}", F.real_part())]


def good_check_primes(setup: CaseSetup, E, bound: int = CHECK_BOUND) -> list[int]:
    return [p for p in primes_up_to(bound) if setup.level % p and E.has_good_reduction(p)]


def run_case(case: int, truncation: int | None = None, digits: int = 120,
             search_primes=SEARCH_PRIMES, check_bound: int = CHECK_BOUND,
             check_terms: int = CHECK_TERMS, express: int = 50, jobs: int = 1) -> CaseReport:
    """Full pipeline for one case; failures are raised as StageError."""
    if case not in CASES:
        raise ValueError(f"unknown case {case}; choose from {sorted(CASES)}")
    setup = CASES[case]
    L = truncation or default_truncation(check_bound, check_terms)
    timings = {}

    def stage(name, fn):
        t = time.perf_counter()
        try:
            return fn()
        except (ArithmeticError, ValueError, RuntimeError) as exc:
            if isinstance(exc, StageError):
                raise
            raise StageError(name, exc) from exc
        finally:
            timings[name] = round(time.perf_counter() - t, 3)

    labels, thetas = stage("theta series", lambda: theta_basis(setup, L, jobs))
    _, idx = stage("theta rank", lambda: halfint.rank_and_basis(thetas, min(L, 400)))
    aux = stage("weight-1 product", lambda: auxiliary_forms(setup, L, digits))
    basis_labels = [labels[i] for i in idx] + [lab for lab, _ in aux]
    basis = [thetas[i] for i in idx] + [F for _, F in aux]
    out = []
    for name, label, lead in setup.targets:
        E = elliptic.curve(label)
        coeffs, G = stage(f"eigenform {name}", lambda: halfint.eigenform_search(
            basis, E, search_primes, B_express=express, leading=lead))
        G = QExpansion(G.re, G.im, weight=Fraction(3, 2), level=setup.level, character=1)
        hecke = stage(f"hecke check {name}", lambda: {
            p: halfint.is_eigenform(G, p, E.ap(p), min(check_terms, G.B // (p * p)))
            for p in good_check_primes(setup, E, check_bound)})
        try:
            golden = load_golden(name)
        except (KeyError, FileNotFoundError):
            golden = None
        out.append(Eigenform(name, label, basis_labels, coeffs, G, hecke, golden))
    return CaseReport(case, L, basis_labels, out, timings)
