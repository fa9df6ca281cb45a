"""
Tests for the verify command and its exit codes
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import pytest

from src.lrcheck import main, EXIT_PASS, EXIT_FAIL, EXIT_CONFIG


def verify(scenario_dir, *extra, name="s1.env"):
    return ["verify", "--scenario", os.path.join(scenario_dir, name), *extra]


def test_passing_run_writes_json(scenario_dir, tmp_path):
    out = tmp_path / "report.json"
    code = main(verify(scenario_dir, "--suite", "foliation", "--cases", "1",
                       "--format", "json", "--out", str(out)))
    assert code == EXIT_PASS
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["suite"] == "foliation"
    assert payload["seed"] == 0
    assert all(case["status"] == "pass" for case in payload["cases"])


def test_seed_override_is_reported(scenario_dir, tmp_path):
    out = tmp_path / "report.json"
    main(verify(scenario_dir, "--suite", "transfer", "--cases", "1", "--seed", "11",
                "--format", "json", "--out", str(out)))
    assert json.loads(out.read_text(encoding="utf-8"))["seed"] == 11


def test_reports_are_reproducible(scenario_dir, tmp_path):
    payloads = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        main(verify(scenario_dir, "--suite", "derived", "--cases", "1", "--format", "json", "--out", str(out)))
        payload = json.loads(out.read_text(encoding="utf-8"))
        payload.pop("elapsed_ms")
        payloads.append(payload)
    assert payloads[0] == payloads[1]


def test_mutation_fails(scenario_dir, tmp_path):
    out = tmp_path / "report.txt"
    code = main(verify(scenario_dir, "--suite", "jacobiator", "--cases", "3", "--max-arity", "3",
                       "--mutation", "binary-curvature-sign", "--out", str(out)))
    assert code == EXIT_FAIL
    assert "FAIL" in out.read_text(encoding="utf-8")


def test_missing_scenario(tmp_path):
    assert main(["verify", "--scenario", str(tmp_path / "missing.env"), "--suite", "fn"]) == EXIT_CONFIG


def test_malformed_scenario(tmp_path):
    path = tmp_path / "broken.env"
    path.write_text("LEAF=x\nTRANSVERSE=u1\nV.u1.x=u3\n", encoding="utf-8")
    assert main(["verify", "--scenario", str(path), "--suite", "fn"]) == EXIT_CONFIG


def test_missing_prerequisite(scenario_dir):
    assert main(verify(scenario_dir, "--suite", "splitting", name="flat.env")) == EXIT_CONFIG


def test_invalid_case_count(scenario_dir):
    assert main(verify(scenario_dir, "--suite", "fn", "--cases", "0")) == EXIT_CONFIG


def test_unknown_suite_is_a_usage_error(scenario_dir):
    with pytest.raises(SystemExit) as info:
        main(verify(scenario_dir, "--suite", "bogus"))
    assert info.value.code == 2


def test_unwritable_output(scenario_dir, tmp_path):
    out = tmp_path / "missing-dir" / "report.json"
    code = main(verify(scenario_dir, "--suite", "transfer", "--cases", "1", "--out", str(out)))
    assert code == EXIT_CONFIG


def test_all_suites_pass_on_flat_at_default_cases(scenario_dir):
    """Runs the full check set with the scenario's own CASES and MAX_ARITY."""
    assert main(verify(scenario_dir, "--suite", "all", name="flat.env")) == EXIT_PASS
