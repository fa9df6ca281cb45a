"""
Tests for Jacobiators, decalage and morphism defects
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.linfty import (
    is_null, BracketOracle, DirectSumOracle, SkewOracle, SymmetricOracle, decalage_convert,
    jacobiator, module_jacobiator, skew_jacobiator, MorphismFamily, morphism_defect,
    compose_morphisms,
)
from src.foliation import FoliationOracle
from src.sampling import random_q_element, random_abar


class ShiftOracle(BracketOracle):
    """Integers with a unary bracket v -> v; not nilpotent, so J^1 is v."""
    max_arity = 1

    def degree(self, v):
        return 0

    def bracket(self, *args):
        return args[0] if len(args) == 1 else 0


def test_is_null():
    assert is_null(None)
    assert is_null(0)
    assert not is_null(3)


def test_jacobiator_sees_a_non_nilpotent_differential():
    assert jacobiator(ShiftOracle(), 5) == 5


def test_jacobiator_needs_arguments(flat):
    with pytest.raises(ValueError):
        jacobiator(FoliationOracle(flat))


def test_foliation_brackets_stop_at_three(s1, rng):
    oracle = FoliationOracle(s1)
    zs = [random_q_element(rng, s1, 0) for _ in range(4)]
    assert not oracle.arity_allowed(4)
    assert is_null(oracle.bracket(*zs))


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_jacobiator_vanishes_on_s1(s1, rng, arity):
    oracle = FoliationOracle(s1)
    zs = [random_q_element(rng, s1, degree % 2) for degree in range(arity)]
    assert is_null(jacobiator(oracle, *zs))


def test_module_jacobiator_vanishes_on_s1(s1, rng):
    oracle = FoliationOracle(s1)
    zs = [random_q_element(rng, s1, 0), random_q_element(rng, s1, 1)]
    lam = random_abar(rng, s1.splitting, 0)
    assert is_null(module_jacobiator(oracle, *zs, lam))


def test_skew_jacobiator_after_decalage(s1, rng):
    skew = decalage_convert(FoliationOracle(s1))
    assert isinstance(skew, SkewOracle)
    zs = [random_q_element(rng, s1, 0), random_q_element(rng, s1, 0)]
    assert is_null(skew_jacobiator(skew, *zs))


def test_decalage_round_trip(s1, rng):
    base = FoliationOracle(s1)
    back = SymmetricOracle(SkewOracle(base))
    zs = [random_q_element(rng, s1, 1), random_q_element(rng, s1, 0)]
    assert back.bracket(*zs) == base.bracket(*zs)
    assert decalage_convert(decalage_convert(base)) is base


def test_direct_sum_anchor_sign(s1, rng):
    oracle = DirectSumOracle(FoliationOracle(s1))
    Z = random_q_element(rng, s1, 1)
    lam = random_abar(rng, s1.splitting, 1)
    forward = oracle.bracket(Z, lam)
    backward = oracle.bracket(lam, Z)
    # degrees: Z-bar = 0, lambda = 1
    assert forward == backward
    assert is_null(oracle.bracket(lam, lam))


def test_identity_morphism_has_no_defect(s1, rng):
    oracle = FoliationOracle(s1)
    identity = MorphismFamily.identity()
    zs = [random_q_element(rng, s1, 0), random_q_element(rng, s1, 1)]
    assert is_null(morphism_defect(identity, oracle, oracle, *zs))


def test_identity_into_mutated_brackets(s1):
    """The curvature term of {V1, V2} is -d/dx, so flipping it leaves -2 d/dx."""
    V1, V2 = s1.frame_vector(0), s1.frame_vector(1)
    mutated = FoliationOracle(s1, mutation="binary-curvature-sign")
    defect = morphism_defect(MorphismFamily.identity(), FoliationOracle(s1), mutated, V1, V2)
    assert defect == s1.leaf_vector(0, -2)


def test_compose_identities(s1, rng):
    oracle = FoliationOracle(s1)
    identity = MorphismFamily.identity()
    composite = compose_morphisms(identity, identity, oracle.degree)
    Z1, Z2 = random_q_element(rng, s1, 0), random_q_element(rng, s1, 1)
    assert composite(Z1) == Z1
    assert is_null(composite(Z1, Z2))


def test_morphism_components_vanish_above_max_arity():
    f = MorphismFamily(lambda *args: 1, max_arity=2)
    assert f(1, 1) == 1
    assert f(1, 1, 1) == 0


def test_unknown_mutation(flat):
    with pytest.raises(ValueError):
        FoliationOracle(flat, mutation="no-such-mutation")
