from fractions import Fraction

import pytest

from s4lift import elliptic, reproduce
from s4lift.halfint import QExpansion


def test_default_truncation():
    assert reproduce.default_truncation() == 19 * 19 * 50
    assert reproduce.default_truncation(7, 10) == 490


def test_unknown_case():
    with pytest.raises(ValueError):
        reproduce.run_case(11)


def test_golden_data_shape():
    assert sorted(reproduce.golden_names()) == ["F_563A", "F_643A", "G_172A", "G_43A"]
    for name in reproduce.golden_names():
        G = reproduce.load_golden(name)
        assert G.B >= 50 and G.is_rational()


def test_good_check_primes_skip_level_and_bad_primes():
    setup = reproduce.CASES[43]
    assert reproduce.good_check_primes(setup, elliptic.curve("43A")) == [3, 5, 7, 11, 13, 17, 19]
    assert reproduce.good_check_primes(reproduce.CASES[563], elliptic.curve("563A"))[0] == 3


def test_eigenform_diff_reports_mismatch():
    golden = QExpansion([0, 1, 2])
    e = reproduce.Eigenform("x", "43A", ["a"], [Fraction(1)], QExpansion([0, 1, 3]), {3: True}, golden)
    assert e.diff() == [(2, (3, 0), (2, 0))]
    assert not e.matches_golden and e.hecke_ok
    assert e.to_dict()["diff"] == [[2, ["3", "0"], ["2", "0"]]]


def test_stage_error_wraps_cause():
    with pytest.raises(reproduce.StageError) as info:
        reproduce.run_case(643, truncation=200)
    assert info.value.stage.startswith("eigenform")
