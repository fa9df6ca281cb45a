"""
Contraction data from derivations of Lambda-bar onto Lambda-bar (x) X-bar
and the binary bracket transferred along it
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.forms import Form, overline
from src.fn_calculus import FormVector, lie_derivative, coordinate_function
from src.foliation import dbar, bracket
from src.signs import parity_sign


class LBarDerivation:
    """
    Graded derivation of Lambda-bar fixed by its values on the coordinate
    functions and on the leafwise coframe d^C x^i.
    """
    __slots__ = ("splitting", "degree", "on_coords", "on_theta")

    def __init__(self, splitting, degree, on_coords=None, on_theta=None):
        chart = splitting.chart
        self.splitting = splitting
        self.degree = degree
        self.on_coords = _pad(splitting, on_coords, len(chart.coords))
        self.on_theta = _pad(splitting, on_theta, chart.n)

    def __call__(self, a):
        if a.is_zero():
            return Form.zero(self.splitting)
        if not overline(a) == a:
            raise ValueError(f"Derivations of Lambda-bar act on leafwise forms, got {a.pretty()}")
        return _apply(self, a)

    def is_zero(self):
        return all(v.is_zero() for v in self.on_coords + self.on_theta)

    def _combine(self, other, sign):
        return LBarDerivation(
            self.splitting, self.degree,
            [a + b * sign for a, b in zip(self.on_coords, other.on_coords)],
            [a + b * sign for a, b in zip(self.on_theta, other.on_theta)],
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, factor):
        return LBarDerivation(self.splitting, self.degree,
                              [v * factor for v in self.on_coords], [v * factor for v in self.on_theta])

    def __eq__(self, other):
        if not isinstance(other, LBarDerivation):
            return NotImplemented
        return self.on_coords == other.on_coords and self.on_theta == other.on_theta

    __hash__ = None

    def commutator(self, other):
        """[D1, D2] = D1 D2 - (-1)^(d1 d2) D2 D1, computed on generators."""
        sign = parity_sign(self.degree * other.degree)
        return _from_action(self.splitting, self.degree + other.degree,
                            lambda a: self(other(a)) - other(self(a)) * sign)

    def pretty(self):
        coords = self.splitting.chart.coords
        pieces = [f"{c} -> {v.pretty()}" for c, v in zip(coords, self.on_coords) if not v.is_zero()]
        pieces += [f"dx^{i} -> {v.pretty()}" for i, v in enumerate(self.on_theta) if not v.is_zero()]
        return "; ".join(pieces) or "0"

    def __repr__(self):
        return f"LBarDerivation(degree={self.degree}, {self.pretty()})"


def _pad(splitting, values, size):
    if values is None:
        return [Form.zero(splitting)] * size
    values = [Form.zero(splitting) if v is None else v for v in values]
    if len(values) != size:
        raise ValueError(f"Expected {size} generator values, got {len(values)}")
    return values


def _apply(D, a):
    s = D.splitting
    result = Form.zero(s)
    for gens, coeff in a.terms.items():
        monomial = Form.monomial(s, gens)
        for c, value in enumerate(D.on_coords):
            if value.is_zero():
                continue
            derivative = coeff.derivative(c)
            if not derivative.is_zero():
                result = result + value * Form.function(s, derivative) * monomial
        for j, g in enumerate(gens):
            image = D.on_theta[g]
            if image.is_zero():
                continue
            piece = Form.monomial(s, gens[:j], coeff) * image * Form.monomial(s, gens[j + 1:])
            result = result + piece * parity_sign(D.degree * j)
    return result


def _from_action(splitting, degree, action):
    """Read a derivation off an operator by evaluating it on generators."""
    chart = splitting.chart
    coords = [action(Form.function(splitting, coordinate_function(splitting, c)))
              for c in range(len(chart.coords))]
    theta = [action(Form.generator(splitting, i)) for i in range(chart.n)]
    return LBarDerivation(splitting, degree, coords, theta)


# ==========================================
# CONTRACTION DATA
# ==========================================

def dbar_derivation(F):
    """d-bar on Lambda-bar: x^i -> d^C x^i, u^a -> 0, d^C x^i -> 0."""
    s = F.splitting
    coords = [Form.generator(s, i) for i in range(F.n)] + [None] * F.m
    return LBarDerivation(s, 1, coords)


def differential(F, D):
    """Delta D = [d-bar, D]."""
    return dbar_derivation(F).commutator(D)


def inclusion(F, Z):
    """j(Z) = overline(L_Z .) restricted to Lambda-bar."""
    if not Z.is_q_element():
        raise ValueError(f"j expects an element of Lambda-bar (x) X-bar, got {Z.pretty()}")
    return _from_action(F.splitting, Z.degree, lambda a: overline(lie_derivative(Z, a)))


def projection(F, D):
    """p(D) = D(u^a) V-bar_a."""
    return FormVector(F.splitting, [None] * F.n + list(D.on_coords[F.n:]))


def homotopy(F, D):
    """h(D): d^C x^i -> (-1)^|D| (D - j p D)(x^i), zero on coordinates."""
    s = F.splitting
    rest = D - inclusion(F, projection(F, D))
    sign = parity_sign(D.degree)
    theta = [rest.on_coords[i] * sign for i in range(F.n)]
    return LBarDerivation(s, D.degree - 1, None, theta)


def transferred_bracket(F, Z1, Z2):
    """(-1)^|Z1| p[j Z1, j Z2]."""
    value = projection(F, inclusion(F, Z1).commutator(inclusion(F, Z2)))
    return value * parity_sign(Z1.degree)


# ==========================================
# IDENTITY CHECKS (residuals must vanish)
# ==========================================

def contraction_residuals(F, Z, D):
    """p j = id, p and j are chain maps, id - j p = Delta h + h Delta, h h = 0."""
    residuals = {}
    residuals["p j Z = Z"] = projection(F, inclusion(F, Z)) - Z
    residuals["p Delta D = dbar p D"] = projection(F, differential(F, D)) - dbar(F, projection(F, D))
    residuals["j dbar Z = Delta j Z"] = inclusion(F, dbar(F, Z)) - differential(F, inclusion(F, Z))
    jp = inclusion(F, projection(F, D))
    h = homotopy(F, D)
    residuals["D - j p D = Delta h D + h Delta D"] = (
        D - jp - differential(F, h) - homotopy(F, differential(F, D))
    )
    residuals["h h D = 0"] = homotopy(F, h)
    return residuals


def transferred_bracket_residual(F, Z1, Z2):
    """The transferred binary bracket against the binary foliation bracket."""
    return transferred_bracket(F, Z1, Z2) - bracket(F, Z1, Z2)
