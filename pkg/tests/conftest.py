"""
Shared fixtures: the flat chart, Scenario S1 and a seeded generator
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.polynomials import Polynomial
from src.forms import Chart, Splitting
from src.foliation import FoliationStructure
from src.sampling import make_rng

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "scenarios")


@pytest.fixture
def chart():
    """Leaf coordinate x, transverse coordinates u1, u2."""
    return Chart(["x"], ["u1", "u2"])


@pytest.fixture
def flat(chart):
    return FoliationStructure(Splitting.flat(chart))


@pytest.fixture
def s1(chart):
    """V_2 = d/du2 + u1 d/dx, curvature du1 ^ du2 (x) d/dx."""
    u1 = Polynomial.variable(chart.coords, "u1")
    return FoliationStructure(Splitting(chart, {("u2", "x"): u1}, name="s1"))


@pytest.fixture
def s1_alt(chart):
    """Second curved splitting V'_1 = d/du1 - u2 d/dx."""
    u2 = Polynomial.variable(chart.coords, "u2")
    return FoliationStructure(Splitting(chart, {("u1", "x"): -u2}, name="s1-alt"))


@pytest.fixture
def rng():
    return make_rng(7)


@pytest.fixture
def scenario_dir():
    return SCENARIO_DIR
