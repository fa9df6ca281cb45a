"""
Tests for the contraction onto Lambda-bar (x) X-bar and the transferred bracket
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.polynomials import Polynomial
from src.forms import Form
from src.linfty import is_null
from src.foliation import dbar
from src import contraction as ct
from src.sampling import random_abar, random_q_element

COORDS = ("x", "u1", "u2")


def random_derivation(rng, F, degree):
    s = F.splitting
    coords = [random_abar(rng, s, degree) if degree <= F.n else None for _ in COORDS]
    theta = [random_abar(rng, s, degree + 1) if degree + 1 <= F.n else None for _ in range(F.n)]
    return ct.LBarDerivation(s, degree, coords, theta)


def all_zero(residuals):
    return all(is_null(value) for value in residuals.values())


def test_dbar_derivation_on_coordinates(s1):
    s = s1.splitting
    D = ct.dbar_derivation(s1)
    assert D(Form.function(s, Polynomial.variable(COORDS, "x"))) == Form.generator(s, 0)
    assert D(Form.function(s, Polynomial.variable(COORDS, "u2"))).is_zero()


def test_dbar_derivation_matches_dbar(s1, rng):
    lam = random_abar(rng, s1.splitting, 1) + random_abar(rng, s1.splitting, 0)
    assert ct.dbar_derivation(s1)(lam) == dbar(s1, lam)


def test_dbar_squares_to_zero(s1):
    D = ct.dbar_derivation(s1)
    assert D.commutator(D).is_zero()


def test_derivation_rejects_transverse_forms(s1):
    with pytest.raises(ValueError):
        ct.dbar_derivation(s1)(Form.generator(s1.splitting, 1))


def test_derivation_needs_one_value_per_generator(s1):
    with pytest.raises(ValueError):
        ct.LBarDerivation(s1.splitting, 0, [Form.zero(s1.splitting)])


def test_inclusion_needs_q_element(s1):
    with pytest.raises(ValueError):
        ct.inclusion(s1, s1.leaf_vector(0))


def test_projection_inverts_inclusion(s1):
    V2 = s1.frame_vector(1)
    assert ct.projection(s1, ct.inclusion(s1, V2)) == V2


@pytest.mark.parametrize("degree", [0, 1])
def test_contraction_identities(s1, rng, degree):
    Z = random_q_element(rng, s1, degree)
    D = random_derivation(rng, s1, degree)
    assert all_zero(ct.contraction_residuals(s1, Z, D))


@pytest.mark.parametrize("degrees", [(0, 0), (0, 1), (1, 0)])
def test_transferred_bracket(s1, rng, degrees):
    Z1, Z2 = random_q_element(rng, s1, degrees[0]), random_q_element(rng, s1, degrees[1])
    assert is_null(ct.transferred_bracket_residual(s1, Z1, Z2))


def test_transferred_bracket_of_frame_vectors(s1):
    assert ct.transferred_bracket(s1, s1.frame_vector(0), s1.frame_vector(1)).is_zero()
