"""
Tests for presymplectic data, homotopy Poisson brackets and the Hamiltonian tower
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.polynomials import Polynomial
from src.forms import Chart, Form, Splitting
from src.fn_calculus import insertion
from src.foliation import FoliationStructure, anchor
from src.expressions import parse_form
from src.linfty import is_null, jacobiator
from src import presymplectic as ps
from src.sampling import random_abar, random_q_element, random_form

COORDS = ("x", "u1", "u2")


def function(F, name):
    return Form.function(F.splitting, Polynomial.variable(COORDS, name))


@pytest.fixture(params=["flat", "s1"])
def data(request):
    F = request.getfixturevalue(request.param)
    return ps.validate_presymplectic(F, parse_form("du1 ^ du2", F.splitting))


def all_zero(residuals):
    return all(is_null(value) for value in residuals.values())


def test_inverse_matrix(data):
    assert data.inverse[0][1] == -1
    assert data.inverse[1][0] == 1
    assert data.inverse[0][0].is_zero()


def test_presymplectic_residuals(data):
    assert all_zero(ps.presymplectic_residuals(data))


def test_sharp_of_du1(data):
    F = data.F
    assert ps.sharp(data, Form.generator(F.splitting, F.n)) == F.frame_vector(1, -1)


def test_sharp_and_flat_are_inverse(data, rng):
    F = data.F
    w = random_form(rng, F.splitting, 1, 1)
    Z = random_q_element(rng, F, 1)
    assert all_zero(ps.sharp_flat_residuals(data, w, Z))


def test_binary_bracket_of_coordinates(data):
    F = data.F
    assert ps.op_bracket(data, function(F, "u1"), function(F, "u2")) == Form.function(F.splitting, 2)


def test_binary_bracket_counts_both_orderings(data):
    """Each ordering contributes 1, so swapping the odd coordinates flips the total 2."""
    F = data.F
    u1, u2 = function(F, "u1"), function(F, "u2")
    assert ps.op_bracket(data, u2, u1) == Form.function(F.splitting, -2)
    assert ps.hamiltonian_tower(data, [u2]) == F.frame_vector(0, -2)


def test_unary_bracket_is_dbar(data):
    F = data.F
    assert ps.op_bracket(data, function(F, "x")) == Form.generator(F.splitting, 0)


def test_op_bracket_needs_arguments(data):
    with pytest.raises(ValueError):
        ps.op_bracket(data)


def test_hamiltonian_field_of_u1(data):
    F = data.F
    assert ps.hamiltonian_tower(data, [function(F, "u1")]) == F.frame_vector(1, 2)


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_op_jacobiator(data, rng, arity):
    lams = [random_abar(rng, data.splitting, d % 2) for d in range(arity)]
    assert is_null(jacobiator(ps.OpOracle(data), *lams))


@pytest.mark.parametrize("arity", [1, 2])
def test_hamiltonian_action(data, rng, arity):
    lams = [random_abar(rng, data.splitting, 0) for _ in range(arity)]
    f = random_abar(rng, data.splitting, 0)
    assert is_null(ps.hamiltonian_action_residual(data, lams, f))


@pytest.mark.parametrize("arity", [1, 2])
def test_hamiltonian_tower_is_a_morphism(data, rng, arity):
    lams = [random_abar(rng, data.splitting, d % 2) for d in range(arity)]
    assert is_null(ps.kx_defect(data, lams))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_repeated_odd_argument(data, rng, k):
    lam = random_abar(rng, data.splitting, 1)
    assert is_null(ps.lemma22_residual(data, lam, k, random_abar(rng, data.splitting, 0)))


def test_strict_jacobi_when_flat(flat, rng):
    data = ps.validate_presymplectic(flat, parse_form("du1 ^ du2", flat.splitting))
    lams = [random_abar(rng, flat.splitting, 0) for _ in range(3)]
    assert is_null(ps.strict_jacobi_residual(data, *lams))


@pytest.mark.parametrize("text", ["0", "du1", "dx ^ du1", "x * du1 ^ du2", "u1 * du1 ^ du2"])
def test_invalid_presymplectic_forms(flat, text):
    with pytest.raises(ps.PresymplecticError):
        ps.validate_presymplectic(flat, parse_form(text, flat.splitting))


def test_presymplectic_error_is_a_value_error():
    assert issubclass(ps.PresymplecticError, ValueError)


# Two leaf coordinates, so the curvature term of the repeated-argument formula survives.
PLANE = ("x", "y", "u1", "u2")
THETA_X, THETA_Y, DU1, DU2 = 0, 1, 2, 3


@pytest.fixture
def plane():
    """V_2 = d/du2 + u1 d/dx on leaves (x, y); lambda = u1 theta^x + u2 theta^y."""
    chart = Chart(["x", "y"], ["u1", "u2"])
    u1 = Polynomial.variable(PLANE, "u1")
    F = FoliationStructure(Splitting(chart, {("u2", "x"): u1}, name="plane"))
    data = ps.validate_presymplectic(F, parse_form("du1 ^ du2", F.splitting))
    s = F.splitting
    lam = (Form.generator(s, THETA_X) * u1
           + Form.generator(s, THETA_Y) * Polynomial.variable(PLANE, "u2"))
    return data, lam


def test_curvature_sharp_is_twice_identity_on_plane(plane):
    data, _ = plane
    s = data.splitting
    table = ps._curvature_sharp_table(data)
    assert table[0][0] == Form.generator(s, DU1) * 2
    assert table[0][1] == Form.generator(s, DU2) * 2
    assert all(entry.is_zero() for entry in table[1])


def test_hamiltonian_towers_on_plane(plane):
    data, lam = plane
    F, s = data.F, data.splitting
    u1 = Polynomial.variable(PLANE, "u1")
    Z1 = F.frame_vector(0, Form.generator(s, THETA_Y) * -2) + F.frame_vector(1, Form.generator(s, THETA_X) * 2)
    assert ps.hamiltonian_tower(data, [lam]) == Z1
    assert ps.hamiltonian_tower(data, [lam, lam]) == Z1 * (u1 * 4)


def test_repeated_argument_curvature_term(plane):
    """{Z_2|theta^x} = 0 = {l, l, theta^x}^op + i_Z1 i_Z1 i_R theta^x = -8 + 8."""
    data, lam = plane
    F, s = data.F, data.splitting
    theta_x = Form.generator(s, THETA_X)
    area = Form.monomial(s, (THETA_X, THETA_Y))
    Z1 = ps.hamiltonian_tower(data, [lam])
    Z2 = ps.hamiltonian_tower(data, [lam, lam])
    assert anchor(F, Z2, theta_x).is_zero()
    assert ps.op_bracket(data, lam, lam, theta_x) == area * -8
    assert insertion(Z1, insertion(Z1, insertion(F.curvature, theta_x))) == area * 8


@pytest.mark.parametrize("k", [2, 3])
def test_repeated_argument_on_plane(plane, k):
    data, lam = plane
    assert is_null(ps.lemma22_residual(data, lam, k, Form.generator(data.splitting, THETA_X)))
