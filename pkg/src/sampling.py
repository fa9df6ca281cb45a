"""
Reproducible random samples: polynomials, forms, leafwise forms and Q-elements
All draws come from one numpy Generator so a seed fixes a whole suite run
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from itertools import combinations, product

import numpy as np

from src.polynomials import Polynomial
from src.forms import Form, VectorField
from src.fn_calculus import FormVector

COEFF_RANGE = (-2, 2)
MAX_POLY_DEGREE = 2


def make_rng(seed):
    return np.random.default_rng(int(seed))


def _monomials(nvars, max_degree):
    return [e for e in product(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]


def random_coefficient(rng, nonzero=True):
    low, high = COEFF_RANGE
    while True:
        value = int(rng.integers(low, high + 1))
        if value or not nonzero:
            return value


def random_polynomial(rng, coords, max_degree=MAX_POLY_DEGREE, max_terms=2):
    """Sum of up to max_terms monomials of total degree <= max_degree, integer coefficients in [-2, 2]."""
    pool = _monomials(len(coords), max_degree)
    count = int(rng.integers(1, max_terms + 1))
    picks = rng.choice(len(pool), size=min(count, len(pool)), replace=False)
    return Polynomial(coords, {pool[int(p)]: random_coefficient(rng) for p in picks})


def random_form(rng, splitting, r, s, max_terms=2, max_degree=MAX_POLY_DEGREE):
    """Homogeneous form with r du-factors and s d^C x-factors."""
    chart = splitting.chart
    n, m = chart.n, chart.m
    if r > m or s > n:
        return Form.zero(splitting)
    shapes = [tuple(sorted(t + u)) for t in combinations(range(n), s)
              for u in combinations(range(n, n + m), r)]
    count = int(rng.integers(1, max_terms + 1))
    picks = rng.choice(len(shapes), size=min(count, len(shapes)), replace=False)
    terms = {shapes[int(p)]: random_polynomial(rng, chart.coords, max_degree) for p in picks}
    return Form(splitting, terms)


def random_abar(rng, splitting, degree, **kwargs):
    return random_form(rng, splitting, 0, degree, **kwargs)


def random_q_element(rng, F, form_degree, **kwargs):
    """Element of Lambda-bar (x) X-bar with leafwise form factors of the given degree."""
    n = F.n
    parts = [None] * n + [random_abar(rng, F.splitting, form_degree, **kwargs) for _ in range(F.m)]
    return FormVector(F.splitting, parts)


def random_form_vector(rng, splitting, r, s, **kwargs):
    """General form-valued field whose parts all have bidegree (r, s)."""
    size = len(splitting.chart.coords)
    return FormVector(splitting, [random_form(rng, splitting, r, s, **kwargs) for _ in range(size)])


def random_mixed_form(rng, splitting, degree, **kwargs):
    """Sum of random homogeneous pieces over every bidegree of the given total degree."""
    result = Form.zero(splitting)
    for r in range(0, degree + 1):
        result = result + random_form(rng, splitting, r, degree - r, **kwargs)
    return result


def random_leaf_field(rng, chart, **kwargs):
    coeffs = [random_polynomial(rng, chart.coords, **kwargs) for _ in range(chart.n)]
    return VectorField(chart, coeffs + [0] * chart.m)


def random_degree(rng, low, high):
    return int(rng.integers(low, high + 1))
