"""
Tests for scenario file parsing and validation
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.polynomials import Polynomial
from src.forms import Form
from src.scenarios import ScenarioError, parse_scenario, load_scenario

BASE = "LEAF=x\nTRANSVERSE=u1,u2\n"


def test_load_s1(scenario_dir):
    scenario = load_scenario(os.path.join(scenario_dir, "s1.env"))
    assert scenario.name == "s1"
    assert scenario.chart.coords == ("x", "u1", "u2")
    u1 = Polynomial.variable(scenario.chart.coords, "u1")
    assert scenario.splitting.coefficient(1, 0) == u1
    assert scenario.alt_splitting.is_flat()
    assert not scenario.foliation.is_flat()
    assert scenario.omega_form() == Form.monomial(scenario.splitting, (1, 2))


def test_load_flat(scenario_dir):
    scenario = load_scenario(os.path.join(scenario_dir, "flat.env"))
    assert scenario.foliation.is_flat()
    assert scenario.alt_splitting is None
    with pytest.raises(ScenarioError):
        scenario.alt_foliation


def test_load_second_curved_splitting(scenario_dir):
    scenario = load_scenario(os.path.join(scenario_dir, "s1_alt.env"))
    assert (scenario.seed, scenario.cases, scenario.max_arity) == (3, 10, 4)
    assert not scenario.alt_foliation.is_flat()
    assert scenario.omega is None
    with pytest.raises(ScenarioError):
        scenario.omega_form()


def test_missing_file():
    with pytest.raises(ScenarioError):
        load_scenario("no/such/scenario.env")


def test_comments_and_defaults():
    scenario = parse_scenario("# product foliation\n" + BASE, name="bare")
    assert scenario.name == "bare"
    assert scenario.splitting.is_flat()
    assert scenario.cases >= 1


def test_unknown_coordinate_in_expression():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "V.u2.x=u3\n")
    assert info.value.field == "V.u2.x"
    assert info.value.line == 3


def test_unknown_transverse_coordinate():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "V.u3.x=1\n")
    assert info.value.field == "V.u3.x"


def test_expression_syntax_error():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "V.u2.x=u1 +\n")
    assert info.value.field == "V.u2.x"


def test_missing_leaf():
    with pytest.raises(ScenarioError) as info:
        parse_scenario("TRANSVERSE=u1\n")
    assert info.value.field == "LEAF"


def test_bad_integer():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "SEED=abc\n")
    assert info.value.field == "SEED"
    assert info.value.line == 3


def test_cases_must_be_positive():
    with pytest.raises(ScenarioError):
        parse_scenario(BASE + "CASES=0\n")


def test_unknown_key():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "COLOR=blue\n")
    assert info.value.field == "COLOR"


def test_duplicate_key():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "SEED=1\nSEED=2\n")
    assert info.value.field == "SEED"


def test_alt_splitting_conflict():
    with pytest.raises(ScenarioError):
        parse_scenario(BASE + "ALT_SPLITTING=flat\nALT.V.u1.x=u2\n")


def test_alt_splitting_must_be_flat():
    with pytest.raises(ScenarioError):
        parse_scenario(BASE + "ALT_SPLITTING=curved\n")


def test_bad_omega():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(BASE + "OMEGA=du1 ^ dv\n")
    assert info.value.field == "OMEGA"


def test_scenario_error_is_a_value_error():
    assert issubclass(ScenarioError, ValueError)


def test_overrides(scenario_dir):
    scenario = load_scenario(os.path.join(scenario_dir, "s1.env"))
    changed = scenario.with_overrides(seed=9, cases=2)
    assert (changed.seed, changed.cases, changed.max_arity) == (9, 2, scenario.max_arity)
    assert changed.splitting == scenario.splitting
