"""
Tests for case records and report rendering
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import pytest

from src.forms import Form
from src.fn_calculus import FormVector
from src.reports import (
    PASS, FAIL, CaseRecord, SuiteReport, residual_case, expectation_case, term_count, emit_report,
)


def test_zero_residual_passes(s1):
    case = residual_case("dbar^2#0", Form.zero(s1.splitting))
    assert case.passed
    assert case.witness is None
    assert case.to_dict() == {"id": "dbar^2#0", "status": PASS}


def test_nonzero_residual_has_witness(s1):
    case = residual_case("dbar^2#0", Form.generator(s1.splitting, 0))
    assert case.status == FAIL
    assert case.witness == "1 term: dx"


def test_nested_residuals(s1):
    s = s1.splitting
    residual = {"a": Form.zero(s), "b": (FormVector.zero(s), s1.leaf_vector(0, -2)), "c": 0}
    assert term_count(residual) == 1
    assert not residual_case("nested", residual).passed
    assert residual_case("clean", {"a": Form.zero(s), "b": [0, None]}).passed


def test_expectation_case():
    assert expectation_case("witness", True, "unused").passed
    failed = expectation_case("witness", False, "brackets agree")
    assert failed.witness == "brackets agree"


def test_empty_report_json():
    report = SuiteReport("fn", seed=0)
    assert report.passed
    assert json.loads(report.to_json()) == {"suite": "fn", "cases": [], "seed": 0, "elapsed_ms": 0}


def test_json_round_trip():
    report = SuiteReport("jacobiator", seed=3, elapsed_ms=12)
    report.add(CaseRecord("J1#0", PASS))
    report.add(CaseRecord("J2#0", FAIL, "2 terms: dx | du1"))
    assert SuiteReport.from_dict(json.loads(report.to_json())) == report
    assert report.stats() == {"cases": 2, "passed": 1, "failed": 1, "elapsed_ms": 12}


def test_extend_with_prefix():
    inner = SuiteReport("fn", seed=0, cases=[CaseRecord("f1#0", PASS)])
    outer = SuiteReport("all", seed=0)
    outer.extend(inner, prefix="fn")
    assert [case.id for case in outer.cases] == ["fn/f1#0"]


def test_text_report():
    report = SuiteReport("fn", seed=1, cases=[CaseRecord("f1#0", FAIL, "1 term: dx")])
    text = report.to_text()
    assert "FAIL: 0/1 cases passed" in text
    assert "1 term: dx" in text
    assert "PASS: 0/0 cases passed" in SuiteReport("fn", seed=1).to_text()


def test_emit_to_file(tmp_path):
    report = SuiteReport("fn", seed=0, cases=[CaseRecord("f1#0", PASS)])
    target = tmp_path / "report.json"
    emit_report(report, "json", str(target))
    assert json.loads(target.read_text(encoding="utf-8"))["cases"] == [{"id": "f1#0", "status": PASS}]


def test_emit_to_stdout(capsys):
    emit_report(SuiteReport("fn", seed=0), "text")
    assert "suite: fn" in capsys.readouterr().out


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(SuiteReport("fn", seed=0), "xml")
