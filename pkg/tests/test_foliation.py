"""
Tests for the foliation structure: projectors, curvature, dbar, pairing, brackets and anchors
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.polynomials import Polynomial
from src.forms import Form
from src.fn_calculus import FormVector, nr_bracket
from src.linfty import is_null
from src.foliation import (
    dbar, evaluate_pairing, anchor, bracket, alt_bracket, shifted_degree,
    bracket_table_residuals, operator_relation_residuals, differential_residuals, dbar_residuals,
    bott_residual, leafwise_ce_residual, alt_binary_residuals, closure_residuals, lrp_residual,
    anchor_derivation_residual, anchor_linearity_residual, ce_residual,
)
from src.sampling import (
    random_abar, random_q_element, random_mixed_form, random_leaf_field, random_form,
)

COORDS = ("x", "u1", "u2")
THETA, DU1, DU2 = 0, 1, 2


def all_zero(residuals):
    return all(is_null(value) for value in residuals.values())


def test_s1_curvature(s1):
    s = s1.splitting
    assert s1.curvature == FormVector.frame(s, 0, Form.monomial(s, (DU1, DU2)))
    assert s1.curvature_component(0, 0, 1) == 1
    assert s1.curvature_component(0, 1, 0) == -1
    assert s1.frame_bracket_component(0, 0, 1) == 1
    assert not s1.is_flat()


def test_flat_curvature(flat):
    assert flat.is_flat()
    assert flat.curvature.is_zero()


def test_curvature_against_frame_vectors(s1):
    s = s1.splitting
    assert nr_bracket(s1.curvature, s1.frame_vector(1)) == s1.leaf_vector(0, -Form.generator(s, DU1))


@pytest.mark.parametrize("name", ["flat", "s1", "s1_alt"])
def test_bracket_table(request, name):
    assert all_zero(bracket_table_residuals(request.getfixturevalue(name)))


def test_operator_relations(s1, rng):
    forms = [random_mixed_form(rng, s1.splitting, degree) for degree in range(2)]
    assert all_zero(operator_relation_residuals(s1, forms))


def test_differential_decomposition(s1, rng):
    forms = [random_mixed_form(rng, s1.splitting, degree) for degree in range(3)]
    assert all_zero(differential_residuals(s1, forms))


def test_dbar_on_functions(s1):
    s = s1.splitting
    x = Polynomial.variable(COORDS, "x")
    u1 = Polynomial.variable(COORDS, "u1")
    assert dbar(s1, Form.function(s, x)) == Form.generator(s, THETA)
    assert dbar(s1, Form.function(s, u1)).is_zero()


def test_dbar_rejects_transverse_input(s1):
    s = s1.splitting
    with pytest.raises(ValueError):
        dbar(s1, Form.generator(s, DU1))
    with pytest.raises(ValueError):
        dbar(s1, s1.leaf_vector(0))


def test_dbar_squares_to_zero(s1, rng):
    lam = random_abar(rng, s1.splitting, 0)
    Z = random_q_element(rng, s1, 0)
    assert all_zero(dbar_residuals(s1, lam, Z))


def test_bott_connection(s1, rng):
    X = s1.leaf_vector(0, Form.function(s1.splitting, Polynomial.variable(COORDS, "u2")))
    Z = random_q_element(rng, s1, 0)
    assert is_null(bott_residual(s1, X, Z))


def test_leafwise_ce_formula(s1, rng, chart):
    lam = random_abar(rng, s1.splitting, 1)
    X1, X2 = random_leaf_field(rng, chart), random_leaf_field(rng, chart)
    assert is_null(leafwise_ce_residual(s1, lam, X1, X2))


def test_pairing_sign(s1):
    s = s1.splitting
    V1 = s1.frame_vector(0)
    assert shifted_degree(V1) == -1
    assert evaluate_pairing(Form.generator(s, DU1), [V1]) == Form.function(s, 1)


def test_pairing_needs_matching_transverse_degree(s1):
    s = s1.splitting
    with pytest.raises(ValueError):
        evaluate_pairing(Form.generator(s, DU1), [])


def test_unary_anchor_is_dbar(s1, rng):
    lam = random_abar(rng, s1.splitting, 0)
    assert anchor(s1, lam) == dbar(s1, lam)


def test_frame_vectors_commute_on_s1(s1):
    V1, V2 = s1.frame_vector(0), s1.frame_vector(1)
    assert bracket(s1, V1, V2).is_zero()
    assert alt_bracket(s1, V1, V2).is_zero()


def test_mutation_changes_binary_bracket(s1):
    V1, V2 = s1.frame_vector(0), s1.frame_vector(1)
    assert bracket(s1, V1, V2, mutation="binary-curvature-sign") == s1.leaf_vector(0, 2)


def test_bracket_needs_arguments(s1):
    with pytest.raises(ValueError):
        bracket(s1)


def test_brackets_vanish_above_three(s1, rng):
    zs = [random_q_element(rng, s1, 0) for _ in range(4)]
    assert bracket(s1, *zs).is_zero()


def test_alternative_formulas(s1, rng):
    Z1, Z2 = random_q_element(rng, s1, 0), random_q_element(rng, s1, 1)
    Z = random_q_element(rng, s1, 1)
    lam = random_abar(rng, s1.splitting, 1)
    assert all_zero(alt_binary_residuals(s1, Z1, Z2, Z, lam))


def test_closure(s1, rng):
    zs = [random_q_element(rng, s1, d) for d in (0, 1, 0)]
    lam = random_abar(rng, s1.splitting, 0)
    assert all_zero(closure_residuals(s1, zs, lam))


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_leibniz_rule(s1, rng, arity):
    zs = [random_q_element(rng, s1, 0) for _ in range(arity)]
    a = random_abar(rng, s1.splitting, 1)
    assert is_null(lrp_residual(s1, zs, a))


@pytest.mark.parametrize("arity", [0, 1, 2])
def test_anchor_is_a_derivation(s1, rng, arity):
    zs = [random_q_element(rng, s1, 1) for _ in range(arity)]
    lam1, lam2 = random_abar(rng, s1.splitting, 1), random_abar(rng, s1.splitting, 0)
    assert is_null(anchor_derivation_residual(s1, zs, lam1, lam2))


def test_anchor_is_linear(s1, rng):
    a = random_abar(rng, s1.splitting, 1)
    zs = [random_q_element(rng, s1, 0), random_q_element(rng, s1, 0)]
    lam = random_abar(rng, s1.splitting, 0)
    assert is_null(anchor_linearity_residual(s1, a, zs, lam))


def test_pairing_pulls_leaf_factors_out(s1):
    """<theta du1 du2|V1,V2> = theta <du1 du2|V1,V2> = -theta."""
    s = s1.splitting
    V1, V2 = s1.frame_vector(0), s1.frame_vector(1)
    assert evaluate_pairing(Form.monomial(s, (DU1, DU2)), [V1, V2]) == Form.function(s, -1)
    assert evaluate_pairing(Form.monomial(s, (THETA, DU1, DU2)), [V1, V2]) == -Form.generator(s, THETA)


def test_ce_with_x_dependent_arguments(flat, chart):
    s = flat.splitting
    x = Polynomial.variable(chart.coords, "x")
    omega = Form.monomial(s, (DU1, DU2), x)
    qs = [flat.frame_vector(0), flat.frame_vector(1, x)]
    assert is_null(ce_residual(flat, omega, 0, qs))


def test_ce_unary_anchor_on_leaf_factor(flat, chart):
    s = flat.splitting
    u2 = Polynomial.variable(chart.coords, "u2")
    omega = Form.monomial(s, (THETA, DU1), u2)
    qs = [flat.frame_vector(0), flat.frame_vector(1)]
    assert is_null(ce_residual(flat, omega, 1, qs))


@pytest.mark.parametrize("name", ["flat", "s1", "s1_alt"])
@pytest.mark.parametrize("r", [0, 1, 2])
@pytest.mark.parametrize("s", [0, 1])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_ce_evaluation(request, rng, name, r, s, k):
    F = request.getfixturevalue(name)
    for _ in range(12):
        omega = random_form(rng, F.splitting, r, s)
        qs = [random_q_element(rng, F, int(rng.integers(0, 2))) for _ in range(r + k)]
        assert is_null(ce_residual(F, omega, k, qs))
