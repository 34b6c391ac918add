"""Command-line interface behaviour and exit codes."""

import json

import pytest

from hodgecs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_zoo_listing(capsys):
    code, out, _ = run(capsys, "zoo")
    assert code == 0
    assert "blp4" in out and "quadric4" in out


def test_zoo_single_entry(capsys):
    code, out, _ = run(capsys, "zoo", "flag3", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["hodge"] == [1, 2, 2, 1]
    assert "note" in doc


def test_validate_flags_bogus_kahler_sample(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "zoo:blp4")
    doc = json.loads(out)
    doc["samples"] = [{"name": "fake", "flag": "kahler", "coeffs": ["0", "1"]}]
    path = tmp_path / "bad-sample.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    assert "fake" in out and "FAIL" in out


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", "zoo:blp4", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["hodge"] == [1, 2, 2, 2, 1]
    assert doc["samples"][0] == {"name": "omega", "flag": "kahler", "coeffs": ["2", "-1"]}


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "zoo:flag3")
    assert code == 0
    assert "all checks passed" in out


def test_validate_corrupted_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        '{"name": "bad", "n": 2, "hodge": [1, 1, 1],'
        ' "basis": [["1"], ["h"], ["hh"]],'
        ' "products": [{"da": 1, "ia": 0, "db": 1, "ib": 0, "out": ["1"]}],'
        ' "integral": ["0"], "samples": []}'
    )
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    assert "poincare-duality" in out


def test_syntax_error_is_usage_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "syntax" in err


def test_verify_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "zoo:p1xp1", "-p", "1",
                       "--samples", "50", "--seed", "1")
    assert code == 0
    assert "0 violations" in out


def test_counterexample_blp4_json(capsys):
    code, out, _ = run(capsys, "counterexample", "zoo:blp4", "-p", "2",
                       "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["found"] is True
    assert doc["g"] == "-900"
    assert doc["theta"]["coeffs"] == ["6", "9"]
    assert doc["witness"]["coeffs"] == ["1", "-8"]


def test_counterexample_none_when_condition_holds(capsys):
    code, out, _ = run(capsys, "counterexample", "zoo:p4", "-p", "2",
                       "--output", "json")
    assert code == 0
    assert json.loads(out)["found"] is False


def test_check_malformed_literal_is_exit_2(capsys):
    code, _, err = run(capsys, "check", "zoo:p1xp1", "-p", "1",
                       "--alpha", "3*zz+1*b", "--omega", "sample:omega")
    assert code == 2
    assert "zz" in err


def test_check_violation_is_exit_1(capsys):
    code, out, _ = run(capsys, "check", "zoo:p1xp1", "-p", "1",
                       "--alpha", "3*a+1*b", "--omega", "sample:omega",
                       "--direction", "cs", "--output", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["g"] == "-4" and doc["satisfied"] is False


def test_check_opposite_satisfied(capsys):
    code, out, _ = run(capsys, "check", "zoo:p1xp1", "-p", "1",
                       "--alpha", "3*a+1*b", "--omega", "sample:omega",
                       "--direction", "opposite", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["satisfied"] is True and doc["proportional"] is False


def test_g_command_two_routes(capsys):
    code, out, _ = run(capsys, "g", "zoo:blp4", "-p", "2",
                       "--alpha", "6*H^2+9*E^2", "--omega", "sample:omega",
                       "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["g"] == "-900" and doc["g_decomposed"] == "-900"
    assert doc["two_route_agreement"] is True


def test_decompose_command(capsys):
    code, out, _ = run(capsys, "decompose", "zoo:p1xp1", "-p", "1",
                       "--alpha", "3*a+1*b", "--omega", "sample:omega",
                       "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["lambda"] == "2"
    assert doc["components"][0]["coeffs"] == ["1", "-1"]
    assert doc["certificates_zero"] and doc["reconstruction_exact"]


def test_signature_reports_both_conventions(capsys):
    code, out, _ = run(capsys, "signature", "zoo:p4", "-p", "1", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["signed"]["inertia"] == [0, 1, 0]
    assert doc["unsigned"]["inertia"] == [1, 0, 0]


def test_kt_command(capsys):
    code, out, _ = run(capsys, "kt", "zoo:blp2", "--d1", "sample:hyperplane",
                       "--d2", "sample:omega", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["steps"][0]["lhs_squared"] == "4"
    assert doc["steps"][0]["rhs_product"] == "3"
    assert doc["mode"] == "boundary"


def test_kahler_gate_on_literal_omega(capsys):
    # E is not Kahler; using it as a bare literal omega must trip the gate.
    code, _, err = run(capsys, "g", "zoo:blp4", "-p", "2",
                       "--alpha", "1*H^2", "--omega", "0*H+1*E")
    assert code == 1
    assert "assertion failed" in err


def test_boundary_via_nef_flag(capsys):
    code, out, _ = run(capsys, "check", "zoo:p1xp1", "-p", "1",
                       "--alpha", "1*b", "--omega", "1*a", "--nef",
                       "--direction", "opposite", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "boundary" and doc["g"] == "-1"


def test_reports_byte_identical(capsys):
    args = ("verify", "zoo:blp2", "-p", "1", "--samples", "25", "--seed", "9",
            "--output", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_unknown_ring_exit_2(capsys):
    code, _, err = run(capsys, "info", "zoo:nothere")
    assert code == 2
    assert "unknown" in err.lower()


def test_missing_cone_samples_is_usage_error(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "zoo:p2")
    doc = json.loads(out)
    doc["samples"] = []
    path = tmp_path / "bare.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(path), "-p", "1", "--samples", "5")
    assert code == 2
    assert "samples" in err


def test_usage_error_exit_2(capsys):
    assert main(["signature", "zoo:p4"]) == 2  # missing -p


def test_export_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "zoo:quadric4")
    assert code == 0
    path = tmp_path / "q4.json"
    path.write_text(out)
    code2, out2, _ = run(capsys, "info", str(path), "--output", "json")
    assert code2 == 0
    assert json.loads(out2)["hodge"] == [1, 1, 2, 1, 1]
