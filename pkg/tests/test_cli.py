import json
import subprocess
import sys

import pytest

from s4lift import cli


@pytest.fixture
def run(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.WORKSPACE_ENV, str(tmp_path / "ws"))

    def go(*argv):
        code = cli.main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err
    return go


def test_enumerate_tsv_and_json(run):
    code, out, _ = run("enumerate", "172")
    assert code == cli.EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("label") and len(lines) == 15
    code, out, _ = run("enumerate", "172", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 14 and all(r["level"] == 172 for r in rows)


def test_cache_is_transparent(run, tmp_path):
    cold = run("enumerate", "344")
    warm = run("enumerate", "344")
    fresh = run("enumerate", "344", "--no-cache")
    assert cold == warm == fresh
    assert any((tmp_path / "ws").rglob("*.json"))


def test_corrupt_cache_entry_is_recomputed(run, tmp_path):
    first = run("enumerate", "172")
    for f in (tmp_path / "ws").rglob("*.json"):
        entry = json.loads(f.read_text())
        entry["payload"] = entry["payload"][:3]
        f.write_text(json.dumps(entry))
    assert run("enumerate", "172") == first
    for f in (tmp_path / "ws").rglob("*.json"):
        f.write_text("{not json")
    assert run("enumerate", "172") == first


def test_obstruction_verdicts(run):
    verdicts = {}
    for x, y in (("1", "0"), ("2", "1"), ("-1", "3")):
        code, out, _ = run("obstruction", "643A", "--point", x, y, "--format", "json")
        assert code == 0
        verdicts[(x, y)] = json.loads(out)["verdict"]
    assert verdicts == {("1", "0"): "nontrivial", ("2", "1"): "nontrivial", ("-1", "3"): "trivial"}


def test_obstruction_from_quartic_file(run, tmp_path):
    f = tmp_path / "q.txt"
    f.write_text("1 0 0 -2 -1\n")
    code, out, _ = run("obstruction", "--quartic", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["halving_quartic"] == ["1", "0", "0", "-2", "-1"]


@pytest.mark.parametrize("argv", [
    ("obstruction", "643A", "--point", "1", "1"),
    ("obstruction", "999Z", "--point", "1", "0"),
    ("obstruction", "643A"),
    ("obstruction", "--quartic", "/nonexistent/file"),
    ("enumerate", "10"),
    ("enumerate", "172", "--jobs", "0"),
    ("reproduce", "7"),
    ("frobnicate",),
])
def test_input_errors(run, argv):
    code, _, err = run(*argv)
    assert code == cli.EXIT_INPUT


def test_quartic_file_errors(run, tmp_path):
    f = tmp_path / "q.txt"
    for text in ("1 2 3", "0 1 2 3 4", "a b c d e", "1 0 -2 0 1"):
        f.write_text(text)
        assert run("obstruction", "--quartic", str(f))[0] == cli.EXIT_INPUT


def test_verify_group_reports_failing_claim(run):
    code, out, _ = run("verify-group", "--format", "json")
    rows = json.loads(out)
    assert code == cli.EXIT_MISMATCH
    assert [r["check"] for r in rows if not r["passed"]] == ["pullback sum is a coboundary"]


def test_verify_group_tampered_table(run, tmp_path):
    from s4lift import octahedral
    T = octahedral.build_gl2f3().group.table.tolist()
    T[1][2], T[1][3] = T[1][3], T[1][2]
    f = tmp_path / "t.json"
    f.write_text(json.dumps(T))
    code, out, _ = run("verify-group", "--table", str(f), "--format", "json")
    assert code == cli.EXIT_MISMATCH and not json.loads(out)[0]["passed"]
    f.write_text("[[")
    assert run("verify-group", "--table", str(f))[0] == cli.EXIT_INPUT


def test_reproduce_precision_exhausted(run):
    code, _, err = run("reproduce", "643", "--truncation", "200", "--no-cache")
    assert code == cli.EXIT_PRECISION and "InsufficientPrecision" in err


def test_reproduce_case_43(run):
    code, out, _ = run("reproduce", "43", "--format", "json")
    report = json.loads(out)
    assert code == cli.EXIT_OK and report["ok"]
    assert [e["name"] for e in report["eigenforms"]] == ["G_43A", "G_172A"]
    assert run("reproduce", "43", "--format", "json")[1] == out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "s4lift", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().endswith("0.1.0")
