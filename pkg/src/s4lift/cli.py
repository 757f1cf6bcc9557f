"""Command-line interface: ``python -m s4lift <command>``.

Exit codes: 0 success or match, 1 mathematical mismatch or failed check,
2 input error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
WORKSPACE_ENV = "S4LIFT_WORKSPACE"


class InputError(ValueError):
    pass


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# workspace cache


class Workspace:
    """Content-addressed JSON cache under a directory.

    Keys hash (operation, canonical input, version tag).  Each entry stores
    the digest of its payload; entries that fail to parse or verify are
    recomputed and overwritten.
    """

    def __init__(self, path: Path | str | None = None, enabled: bool = True, config: dict | None = None):
        default = Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "s4lift"
        self.path = Path(path or os.environ.get(WORKSPACE_ENV) or default)
        self.enabled = enabled
        self.config = dict(config or {})

    @staticmethod
    def key(operation: str, inputs) -> str:
        blob = json.dumps({"op": operation, "input": inputs, "version": __version__},
                          sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def _file(self, key: str) -> Path:
        return self.path / key[:2] / f"{key}.json"

    def load(self, key: str):
        if not self.enabled:
            return None
        f = self._file(key)
        try:
            entry = json.loads(f.read_text(encoding="utf-8"))
            payload = json.dumps(entry["payload"], sort_keys=True)
            if entry["key"] != key or hashlib.sha256(payload.encode()).hexdigest() != entry["digest"]:
                return None
            return entry["payload"]
        except (OSError, ValueError, KeyError, TypeError):
            return None

    def store(self, key: str, payload) -> None:
        if not self.enabled:
            return
        digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        f = self._file(key)
        try:
            f.parent.mkdir(parents=True, exist_ok=True)
            tmp = f.with_suffix(".tmp")
            tmp.write_text(json.dumps({"key": key, "digest": digest, "payload": payload},
                                      sort_keys=True), encoding="utf-8")
            tmp.replace(f)
        except OSError:
            pass

    def cached(self, operation: str, inputs, compute):
        key = self.key(operation, inputs)
        hit = self.load(key)
        if hit is not None:
            return hit
        # round-trip so cold and warm runs render identical objects
        value = json.loads(json.dumps(compute(), sort_keys=True))
        self.store(key, value)
        return value


# --------------------------------------------------------------------------
# commands; each returns (payload, exit code)


def cmd_enumerate(ws: Workspace, level: int, square_disc: bool = True, kohnen: bool = False):
    from . import ternary
    if level <= 0 or level % 4:
        raise InputError("level must be a positive multiple of 4")

    def compute():
        forms = ternary.enumerate_classes(level, require_square_disc=square_disc, kohnen=kohnen)
        return [{"label": f"Q{i + 1}", "coefficients": list(T.coefficients),
                 "discriminant": ternary.discriminant(T), "level": ternary.level(T)}
                for i, T in enumerate(forms)]

    rows = ws.cached("enumerate", {"level": level, "square_disc": square_disc, "kohnen": kohnen},
                     compute)
    return rows, EXIT_OK


def _parse_quartic(text: str):
    from .arith import RationalPoly
    text = text.strip()
    try:
        coeffs = json.loads(text) if text.startswith("[") else text.replace(",", " ").split()
        coeffs = [Fraction(str(c)) for c in coeffs]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse quartic coefficients: {exc}") from None
    if len(coeffs) != 5 or coeffs[0] == 0:
        raise InputError("quartic file must list five coefficients, leading first")
    return RationalPoly.from_descending(coeffs)


def cmd_obstruction(ws: Workspace, curve: str | None = None, point=None, quartic_text: str | None = None):
    from . import elliptic, quadform
    from .arith import poly_discriminant
    if quartic_text is not None:
        f = _parse_quartic(quartic_text)
        source = {"quartic": [_q(c) for c in reversed(f.coeffs)]}
    else:
        try:
            E = elliptic.curve(curve)
        except KeyError:
            raise InputError(f"unknown curve label {curve!r}") from None
        try:
            P = elliptic.point(*(Fraction(c) for c in point))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad point: {exc}") from None
        if not E.contains(P):
            raise InputError(f"({point[0]}, {point[1]}) is not on {curve}")
        f = E.halving_quartic(P)
        source = {"curve": curve, "point": [_q(c) for c in (P.x, P.y)]}

    def compute():
        if not f.monic().is_squarefree():
            raise InputError("quartic is not squarefree")
        if poly_discriminant(f.monic()) > 0:
            raise InputError("positive discriminant: signature mismatch case is out of scope")
        cls = quadform.obstruction_class(f)
        return {**source, "halving_quartic": [_q(c) for c in reversed(f.monic().coeffs)],
                "support": [p for p in cls.sorted_places()],
                "verdict": "trivial" if cls.is_trivial else "nontrivial"}

    return ws.cached("obstruction", source, compute), EXIT_OK


def cmd_verify_group(ws: Workspace, table_text: str | None = None):
    from . import octahedral
    table = None
    if table_text is not None:
        try:
            table = json.loads(table_text)
        except ValueError as exc:
            raise InputError(f"cannot parse table: {exc}") from None
    checks = octahedral.group_checks(table)
    rows = [{"check": name, "passed": bool(ok), "detail": detail} for name, ok, detail in checks]
    return rows, EXIT_OK if all(r["passed"] for r in rows) else EXIT_MISMATCH


def cmd_reproduce(ws: Workspace, case: int):
    from . import reproduce
    if case not in reproduce.CASES:
        raise InputError(f"case must be one of {sorted(reproduce.CASES)}")
    cfg = ws.config
    inputs = {"case": case, "truncation": cfg.get("truncation"), "precision": cfg.get("precision")}

    def compute():
        r = reproduce.run_case(case, truncation=cfg.get("truncation"),
                               digits=cfg.get("precision") or 120, jobs=cfg.get("jobs") or 1)
        return r.to_dict()

    report = ws.cached("reproduce", inputs, compute)
    return report, EXIT_OK if report["ok"] else EXIT_MISMATCH


# --------------------------------------------------------------------------
# rendering


def _render_tsv(command: str, payload) -> str:
    lines = []
    if command == "enumerate":
        lines.append("label\ta1\ta2\ta3\ta23\ta13\ta12\tdisc\tlevel")
        for r in payload:
            lines.append("\t".join([r["label"], *map(str, r["coefficients"]),
                                    str(r["discriminant"]), str(r["level"])]))
    elif command == "obstruction":
        for k in ("curve", "point", "quartic", "halving_quartic", "support", "verdict"):
            if k in payload:
                v = payload[k]
                lines.append(f"{k}\t{' '.join(map(str, v)) if isinstance(v, list) else v}")
    elif command == "verify-group":
        for r in payload:
            lines.append(f"{r['check']}\t{'PASS' if r['passed'] else 'FAIL'}\t{r['detail']}")
    elif command == "reproduce":
        lines.append(f"case\t{payload['case']}")
        lines.append(f"truncation\t{payload['truncation']}")
        for e in payload["eigenforms"]:
            lines.append(f"eigenform\t{e['name']}\tcurve {e['curve']}")
            lines.append("expansion\t" + " ".join(
                x if y == "0" else f"{x}+{y}*sqrt(-2)" for x, y in e["expansion"]))
            for lab, c in e["combination"]:
                lines.append(f"combination\t{lab}\t{c}")
            lines.append("hecke\t" + " ".join(f"T{p}^2:{'ok' if ok else 'FAIL'}"
                                              for p, ok in sorted(e["hecke"].items(), key=lambda kv: int(kv[0]))))
            lines.append(f"golden\t{'match' if e['golden_match'] else 'MISMATCH'}")
            for m, got, want in e["diff"]:
                lines.append(f"diff\tq^{m}\tcomputed {got}\texpected {want}")
        lines.append(f"result\t{'match' if payload['ok'] else 'MISMATCH'}")
    return "\n".join(lines) + "\n"


def render(command: str, payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    return _render_tsv(command, payload)


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="working decimal digits for numerical stages (default 120)")
    common.add_argument("--truncation", type=int, default=None,
                        help="q-expansion length for reproduce (default 19^2*50 = 18050)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--no-cache", action="store_true",
                        help=f"bypass the workspace cache (location: ${WORKSPACE_ENV}, "
                             "default ~/.cache/s4lift)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv",
                        help="output encoding (default tsv)")

    parser = argparse.ArgumentParser(prog="s4lift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="classes of ternary forms of a level")
    p.add_argument("level", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--square-disc", dest="square_disc", action="store_true", default=True,
                   help="only square discriminants (default)")
    g.add_argument("--all-disc", dest="square_disc", action="store_false",
                   help="every discriminant")
    p.add_argument("--kohnen", action="store_true", help="only thetas in the Kohnen space")

    p = sub.add_parser("obstruction", parents=[common],
                       help="2+S4 embedding obstruction of a halving quartic")
    p.add_argument("curve", nargs="?", help="curve label, e.g. 643A")
    p.add_argument("--point", nargs=2, metavar=("X", "Y"))
    p.add_argument("--quartic", metavar="FILE", help="file with five coefficients, leading first")

    p = sub.add_parser("verify-group", parents=[common], help="group-theoretic verifications")
    p.add_argument("--table", metavar="FILE",
                   help="JSON multiplication table replacing GL2(F3)'s (for testing)")

    p = sub.add_parser("reproduce", parents=[common], help="end-to-end eigenform pipeline")
    p.add_argument("case", type=int, choices=(43, 563, 643))
    return parser


def main(argv=None) -> int:
    from .embed import PrecisionError
    from .halfint import InsufficientPrecision
    from .reproduce import StageError
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for name in ("precision", "truncation", "jobs"):
        v = getattr(args, name)
        if v is not None and v < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_INPUT
    ws = Workspace(enabled=not args.no_cache,
                   config={"precision": args.precision, "truncation": args.truncation,
                           "jobs": args.jobs})
    try:
        if args.command == "enumerate":
            payload, code = cmd_enumerate(ws, args.level, args.square_disc, args.kohnen)
        elif args.command == "obstruction":
            if args.quartic:
                try:
                    text = Path(args.quartic).read_text(encoding="utf-8")
                except OSError as exc:
                    raise InputError(str(exc)) from None
                payload, code = cmd_obstruction(ws, quartic_text=text)
            elif args.curve and args.point:
                payload, code = cmd_obstruction(ws, args.curve, args.point)
            else:
                raise InputError("give a curve label with --point X Y, or --quartic FILE")
        elif args.command == "verify-group":
            text = None
            if args.table:
                try:
                    text = Path(args.table).read_text(encoding="utf-8")
                except OSError as exc:
                    raise InputError(str(exc)) from None
            payload, code = cmd_verify_group(ws, text)
        else:
            payload, code = cmd_reproduce(ws, args.case)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InsufficientPrecision, PrecisionError) as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except StageError as exc:
        print(f"error: stage failed: {exc}", file=sys.stderr)
        if isinstance(exc.cause, (InsufficientPrecision, PrecisionError)):
            return EXIT_PRECISION
        return EXIT_MISMATCH
    sys.stdout.write(render(args.command, payload, args.format))
    return code
