"""
Tests for insertion, Lie derivative and the Nijenhuis-Richardson / Froelicher-Nijenhuis brackets
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.polynomials import Polynomial
from src.forms import Form, VectorField, exterior_d
from src.fn_calculus import (
    FormVector, identity_field, insertion, lie_derivative, nr_bracket, fn_bracket,
    commutator, d_operator, check_f1, check_f2, check_f3, check_f4, check_f5, check_f6,
    check_insertion_coherence, check_lie_coherence, check_nr_jacobi, check_fn_jacobi,
    check_fn_antisymmetry, check_decomposition,
)
from src.sampling import random_form_vector, random_mixed_form, random_form

COORDS = ("x", "u1", "u2")


def field(rng, F, r, s):
    return random_form_vector(rng, F.splitting, r, s)


def test_identity_counts_form_degree(s1, rng):
    I = identity_field(s1.splitting)
    for degree in range(3):
        a = random_form(rng, s1.splitting, 1, degree - 1) if degree else random_form(rng, s1.splitting, 0, 0)
        assert insertion(I, a) == a * degree


def test_lie_derivative_of_identity_is_d(s1, rng):
    I = identity_field(s1.splitting)
    a = random_mixed_form(rng, s1.splitting, 1)
    assert lie_derivative(I, a) == exterior_d(a)


def test_identity_is_fn_central(s1, rng):
    I = identity_field(s1.splitting)
    Z = field(rng, s1, 0, 1)
    assert fn_bracket(I, Z).is_zero()


def test_frame_vector_bracket(s1):
    """[V_1, V_2] = d/dx on S1."""
    s = s1.splitting
    V1, V2 = FormVector.frame(s, 1), FormVector.frame(s, 2)
    assert fn_bracket(V1, V2) == FormVector.frame(s, 0)


def test_from_vector_field(s1, chart):
    s = s1.splitting
    u1 = Polynomial.variable(COORDS, "u1")
    Z = FormVector.from_vector_field(VectorField.coordinate(chart, "u2"), s)
    assert Z == FormVector.frame(s, 2) - FormVector.frame(s, 0, Form.function(s, u1))


def test_q_element_detection(s1):
    s = s1.splitting
    assert FormVector.frame(s, 1, Form.generator(s, 0)).is_q_element()
    assert not FormVector.frame(s, 0).is_q_element()
    assert not FormVector.frame(s, 1, Form.generator(s, 2)).is_q_element()


def test_inhomogeneous_degree_raises(s1):
    s = s1.splitting
    Z = FormVector.frame(s, 1) + FormVector.frame(s, 2, Form.generator(s, 0))
    with pytest.raises(ValueError):
        Z.degree


def test_d_squared_commutator(s1, rng):
    d = d_operator()
    a = random_mixed_form(rng, s1.splitting, 1)
    assert commutator(d, d)(a).is_zero()


@pytest.mark.parametrize("degrees", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_coherence_identities(s1, rng, degrees):
    Z1 = field(rng, s1, degrees[0], 0)
    Z2 = field(rng, s1, 0, degrees[1])
    a = random_mixed_form(rng, s1.splitting, 1)
    assert check_insertion_coherence(Z1, Z2, a).is_zero()
    assert check_lie_coherence(Z1, Z2, a).is_zero()
    assert check_fn_antisymmetry(Z1, Z2).is_zero()


def test_module_identities(s1, rng):
    omega = random_form(rng, s1.splitting, 1, 0)
    Z = field(rng, s1, 0, 1)
    Y = field(rng, s1, 0, 0)
    a = random_mixed_form(rng, s1.splitting, 1)
    assert check_f4(omega, Z, a).is_zero()
    assert check_f5(Z, Y, a).is_zero()
    assert check_f6(omega, Z, Y).is_zero()
    assert check_f2(omega, Z, Y).is_zero()


def test_mixed_bracket_identities(s1, rng):
    X = field(rng, s1, 1, 0)
    Z = field(rng, s1, 0, 0)
    Y = field(rng, s1, 0, 1)
    assert check_f1(X, Z, Y).is_zero()
    assert check_f3(X, Z, Y).is_zero()


def test_jacobi_identities(s1, rng):
    Z1 = field(rng, s1, 0, 0)
    Z2 = field(rng, s1, 1, 0)
    Z3 = field(rng, s1, 0, 1)
    assert check_nr_jacobi(Z1, Z2, Z3).is_zero()
    assert check_fn_jacobi(Z1, Z2, Z3).is_zero()


def test_nr_bracket_of_vector_fields_vanishes(s1, rng):
    assert nr_bracket(field(rng, s1, 0, 0), field(rng, s1, 0, 0)).is_zero()


def test_decomposition_recovers_fields(s1, rng):
    Z = field(rng, s1, 1, 0)
    Y = field(rng, s1, 0, 0)
    residual_z, residual_y = check_decomposition(Z, Y)
    assert residual_z.is_zero()
    assert residual_y.is_zero()
