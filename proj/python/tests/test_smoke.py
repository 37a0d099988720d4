import json
import os

import pytest

import decalage


def test_generated_h1_instance_passes():
    inst = decalage.generate("h1", 3, poset="builtin:pseudo-circle")
    report = decalage.check_theorem(inst)
    assert report["hypotheses"]["h1"] and report["hypotheses"]["h3"]
    assert report["pass"] and report["exit_code"] == 0
    assert {c["id"] for c in report["checks"]} >= {"bb.flag-equality", "degeneration.coker-equality"}


def test_generation_is_deterministic():
    assert decalage.generate("free", 42) == decalage.generate("free", 42)


def test_frozen_instance_matches_generator():
    with open(os.path.join(decalage.fixture_dir(), "golden_free_42.json")) as f:
        assert json.load(f) == decalage.generate("free", 42)


def test_witness_fails_hodge_tate_injectivity():
    report = decalage.check_theorem(decalage.ht_failure_witness())
    assert report["hypotheses"]["h1"] and not report["hypotheses"]["h3"]
    assert report["exit_code"] == 3


def test_run_exit_codes():
    assert decalage.run("validate", "fixture:valid_complex")[0] == 0
    assert decalage.run("validate", "fixture:d2_nonzero")[0] == 1
    assert decalage.run("validate", "fixture:malformed")[0] == 2
    assert decalage.run("check-theorem", "fixture:z_p_shell")[0] == 3
    assert decalage.run("check-theorem", "fixture:injected_bug")[0] == 1


def test_run_json_report():
    code, report, _ = decalage.run("check-lemmas", generate="free", seed=7, count=3, format="json")
    assert code == 0 and report["pass"]
    with open(os.path.join(decalage.fixture_dir(), "golden_lemmas.report.json")) as f:
        assert json.load(f) == report


def test_run_rejects_unknown_option():
    with pytest.raises(TypeError):
        decalage.run("validate", colour="blue")


def test_lattice_pair_over_polynomials():
    # L = t^-1 span(t e1, e2) = span(e1, t^-1 e2) against the standard lattice over F_5[t]
    basis = [["t", "0"], ["0", "1"]]
    ident = [[1, 0], [0, 1]]
    assert decalage.relative_position(basis, ident, shift=1, ring="fp-poly", xi="t") == [0, -1]
    flag = decalage.bb_filtration(basis, ident, shift=1, ring="fp-poly", xi="t")
    assert (flag["zero_below"], flag["full_from"]) == (-1, 0)
    assert flag["levels"] == [{"m": -1, "dim": 1, "basis": [["0"], ["1"]]}]


def test_relative_position_of_scaled_lattice():
    ident = [[1, 0], [0, 1]]
    assert decalage.relative_position(ident, ident) == [0, 0]
    assert decalage.relative_position([[2, 0], [0, 4]], ident, xi="2") == [2, 1]


def test_singular_basis_raises():
    with pytest.raises(decalage.DecalageError):
        decalage.relative_position([[1, 2], [2, 4]], [[1, 0], [0, 1]])
