"""
Graded commutative algebra of differential forms on a chart
Forms are stored in the adapted coframe {d^C x^i, du^a} of a splitting
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import re
from numbers import Rational

from src.polynomials import Polynomial, ChartMismatchError

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Chart:
    """Leaf coordinates x^i followed by transverse coordinates u^a."""
    __slots__ = ("leaf", "transverse")

    def __init__(self, leaf, transverse):
        self.leaf = tuple(leaf)
        self.transverse = tuple(transverse)
        names = self.coords
        for name in names:
            if not _IDENTIFIER.match(name):
                raise ValueError(f"Invalid coordinate name '{name}'")
        if len(set(names)) != len(names):
            raise ValueError(f"Coordinate names must be distinct: {names}")
        clashes = [name for name in names if f"d{name}" in names]
        if clashes:
            raise ValueError(f"Differential of '{clashes[0]}' collides with coordinate 'd{clashes[0]}'")

    @property
    def coords(self):
        return self.leaf + self.transverse

    @property
    def n(self):
        return len(self.leaf)

    @property
    def m(self):
        return len(self.transverse)

    @property
    def generator_names(self):
        return tuple(f"d{name}" for name in self.coords)

    def index(self, name):
        try:
            return self.coords.index(name)
        except ValueError:
            raise ValueError(f"Unknown coordinate '{name}'") from None

    def __eq__(self, other):
        if not isinstance(other, Chart):
            return NotImplemented
        return self.leaf == other.leaf and self.transverse == other.transverse

    def __hash__(self):
        return hash((self.leaf, self.transverse))

    def __repr__(self):
        return f"Chart(leaf={list(self.leaf)}, transverse={list(self.transverse)})"


class Splitting:
    """
    Complementary distribution V spanned by V_a = d/du^a + V_a^i d/dx^i.
    v[a][i] holds the coefficient V_a^i; missing entries are zero.
    """
    __slots__ = ("chart", "v", "name", "_d_generators")

    def __init__(self, chart, v_coeffs=None, name=""):
        self.chart = chart
        self.name = name
        coords = chart.coords
        table = [[Polynomial.zero(coords) for _ in range(chart.n)] for _ in range(chart.m)]
        for (alpha, i), value in (v_coeffs or {}).items():
            a = chart.transverse.index(alpha) if isinstance(alpha, str) else alpha
            b = chart.leaf.index(i) if isinstance(i, str) else i
            if isinstance(value, (int, Rational)):
                value = Polynomial.constant(coords, value)
            if value.coords != coords:
                raise ChartMismatchError(f"Coefficient V[{alpha},{i}] is not on chart {coords}")
            table[a][b] = value
        self.v = tuple(tuple(row) for row in table)
        # d(theta^i) = -sum_b d(V_b^i) ^ du^b, written once
        self._d_generators = {}
        for i in range(chart.n):
            total = Form.zero(self)
            for beta in range(chart.m):
                coeff = self.v[beta][i]
                if not coeff.is_zero():
                    total = total - self.d_function(coeff) * Form.generator(self, chart.n + beta)
            self._d_generators[i] = total

    @classmethod
    def flat(cls, chart, name="flat"):
        return cls(chart, {}, name=name)

    def coefficient(self, alpha, i):
        return self.v[alpha][i]

    def is_flat(self):
        return all(c.is_zero() for row in self.v for c in row)

    def frame_derivative(self, alpha, f):
        """V_a f = d f/du^a + V_a^i d f/dx^i."""
        n = self.chart.n
        result = f.derivative(n + alpha)
        for i in range(n):
            if not self.v[alpha][i].is_zero():
                result = result + self.v[alpha][i] * f.derivative(i)
        return result

    def d_function(self, f):
        n = self.chart.n
        terms = {(i,): f.derivative(i) for i in range(n)}
        for alpha in range(self.chart.m):
            terms[(n + alpha,)] = self.frame_derivative(alpha, f)
        return Form(self, terms)

    def d_generator(self, g):
        if g < self.chart.n:
            return self._d_generators[g]
        return None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Splitting):
            return NotImplemented
        return self.chart == other.chart and self.v == other.v

    def __hash__(self):
        return hash((self.chart, self.v))

    def __repr__(self):
        label = self.name or "V"
        return f"Splitting({label}, {self.chart!r})"


def _same_splitting(a, b):
    if a is not b and a != b:
        raise ChartMismatchError(f"Splitting mismatch: {a!r} vs {b!r}")


def _merge(left, right):
    """Sign and sorted union of two generator tuples, (0, None) on repetition."""
    if set(left) & set(right):
        return 0, None
    inversions = sum(1 for x in left for y in right if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(left + right))


class Form:
    """
    Differential form as a map from sorted generator tuples to Polynomials.
    Generator g < n is d^C x^g, generator n + a is du^a.
    """
    __slots__ = ("splitting", "terms")

    def __init__(self, splitting, terms=None):
        self.splitting = splitting
        coords = splitting.chart.coords
        clean = {}
        for gens, coeff in (terms or {}).items():
            if isinstance(coeff, (int, Rational)):
                coeff = Polynomial.constant(coords, coeff)
            if not coeff.is_zero():
                clean[tuple(gens)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, splitting):
        return cls(splitting)

    @classmethod
    def function(cls, splitting, f):
        return cls(splitting, {(): f})

    @classmethod
    def generator(cls, splitting, g):
        return cls(splitting, {(g,): 1})

    @classmethod
    def monomial(cls, splitting, gens, coeff=1):
        return cls(splitting, {tuple(gens): coeff})

    @property
    def chart(self):
        return self.splitting.chart

    def is_zero(self):
        return not self.terms

    def du_count(self, gens):
        n = self.splitting.chart.n
        return sum(1 for g in gens if g >= n)

    def degrees(self):
        return sorted({len(gens) for gens in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError(f"Form is not homogeneous (degrees {degrees})")
        return degrees[0] if degrees else 0

    def homogeneous_components(self):
        parts = {}
        for gens, coeff in self.terms.items():
            parts.setdefault(len(gens), {})[gens] = coeff
        return {deg: Form(self.splitting, terms) for deg, terms in sorted(parts.items())}

    def bidegrees(self):
        return sorted({(self.du_count(gens), len(gens) - self.du_count(gens)) for gens in self.terms})

    def coefficient(self, gens):
        return self.terms.get(tuple(gens), Polynomial.zero(self.chart.coords))

    # Arithmetic

    def _combine(self, other, sign):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, Form):
            return NotImplemented
        _same_splitting(self.splitting, other.splitting)
        terms = dict(self.terms)
        for gens, coeff in other.terms.items():
            terms[gens] = terms[gens] + coeff * sign if gens in terms else coeff * sign
        return Form(self.splitting, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return Form(self.splitting, {gens: -c for gens, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Polynomial)):
            return Form(self.splitting, {gens: c * other for gens, c in self.terms.items()})
        if not isinstance(other, Form):
            return NotImplemented
        _same_splitting(self.splitting, other.splitting)
        terms = {}
        for left, ca in self.terms.items():
            for right, cb in other.terms.items():
                sign, gens = _merge(left, right)
                if not sign:
                    continue
                product = ca * cb if sign > 0 else -(ca * cb)
                terms[gens] = terms[gens] + product if gens in terms else product
        return Form(self.splitting, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, Polynomial)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result = Form.function(self.splitting, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Form):
            return NotImplemented
        return self.splitting == other.splitting and self.terms == other.terms

    __hash__ = None

    def pretty(self):
        if not self.terms:
            return "0"
        names = self.chart.generator_names
        pieces = []
        ordered = sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))
        for gens, coeff in ordered:
            wedge = "^".join(names[g] for g in gens)
            pieces.append(_signed_piece(coeff, wedge))
        negative, body = pieces[0]
        text = ("-" if negative else "") + body
        for negative, body in pieces[1:]:
            text += (" - " if negative else " + ") + body
        return text

    def __repr__(self):
        return f"Form({self.pretty()})"


def _signed_piece(coeff, wedge):
    if not wedge:
        if len(coeff.terms) == 1:
            ((_, c),) = coeff.terms.items()
            if c < 0:
                return True, (-coeff).pretty()
        return False, coeff.pretty() if len(coeff.terms) == 1 else f"({coeff.pretty()})"
    if len(coeff.terms) > 1:
        return False, f"({coeff.pretty()})*{wedge}"
    ((_, c),) = coeff.terms.items()
    negative = c < 0
    magnitude = -coeff if negative else coeff
    if magnitude == 1:
        return negative, wedge
    return negative, f"{magnitude.pretty()}*{wedge}"


class VectorField:
    """Degree-zero vector field with coefficients on d/dx^i and d/du^a."""
    __slots__ = ("chart", "coefficients")

    def __init__(self, chart, coefficients):
        self.chart = chart
        coords = chart.coords
        values = []
        for c in coefficients:
            values.append(Polynomial.constant(coords, c) if isinstance(c, (int, Rational)) else c)
        if len(values) != len(coords):
            raise ValueError(f"Expected {len(coords)} coefficients, got {len(values)}")
        self.coefficients = tuple(values)

    @classmethod
    def coordinate(cls, chart, name):
        index = chart.index(name)
        return cls(chart, [1 if k == index else 0 for k in range(len(chart.coords))])

    def apply(self, f):
        result = Polynomial.zero(self.chart.coords)
        for index, coeff in enumerate(self.coefficients):
            if not coeff.is_zero():
                result = result + coeff * f.derivative(index)
        return result

    def __repr__(self):
        parts = [f"({c.pretty()})*d/d{name}" for c, name in zip(self.coefficients, self.chart.coords)
                 if not c.is_zero()]
        return f"VectorField({' + '.join(parts) or '0'})"


def apply_derivation(a, degree, on_function=None, on_generator=None):
    """
    Extend a graded derivation of the given degree from its values on
    functions and coframe generators to the whole form a.
    Callbacks return a Form or None for zero.
    """
    s = a.splitting
    result = Form.zero(s)
    images = {}
    for gens, coeff in a.terms.items():
        if on_function is not None:
            df = on_function(coeff)
            if df is not None and not df.is_zero():
                result = result + df * Form.monomial(s, gens)
        if on_generator is None:
            continue
        for j, g in enumerate(gens):
            if g not in images:
                images[g] = on_generator(g)
            image = images[g]
            if image is None or image.is_zero():
                continue
            piece = Form.monomial(s, gens[:j], coeff) * image * Form.monomial(s, gens[j + 1:])
            result = result - piece if (degree * j) % 2 else result + piece
    return result


def wedge(a, b):
    return a * b


def exterior_d(a):
    s = a.splitting
    return apply_derivation(a, 1, on_function=s.d_function, on_generator=s.d_generator)


def bidegree_project(a, r=None, s=None):
    """Keep monomials with r du-factors and s d^C x-factors (None means any)."""
    terms = {}
    for gens, coeff in a.terms.items():
        du = a.du_count(gens)
        if (r is None or du == r) and (s is None or len(gens) - du == s):
            terms[gens] = coeff
    return Form(a.splitting, terms)


def overline(a):
    """Drop every monomial containing a du-factor."""
    return bidegree_project(a, r=0)


def contract_vector(X, a):
    """Insertion i_X of a degree-zero vector field."""
    s = a.splitting
    if X.chart != s.chart:
        raise ChartMismatchError(f"Vector field chart {X.chart!r} differs from form chart {s.chart!r}")
    n = s.chart.n

    def on_generator(g):
        if g >= n:
            return Form.function(s, X.coefficients[g])
        value = X.coefficients[g]
        for alpha in range(s.chart.m):
            value = value - s.v[alpha][g] * X.coefficients[n + alpha]
        return Form.function(s, value)

    return apply_derivation(a, -1, on_generator=on_generator)


def reframe(a, new_splitting):
    """Re-express a in the adapted coframe of new_splitting."""
    old = a.splitting
    if old.chart != new_splitting.chart:
        raise ChartMismatchError(f"Cannot reframe between {old.chart!r} and {new_splitting.chart!r}")
    if old == new_splitting:
        return Form(new_splitting, a.terms)
    chart = old.chart
    n = chart.n
    images = {}
    for g in range(len(chart.coords)):
        image = Form.generator(new_splitting, g)
        if g < n:
            for alpha in range(chart.m):
                shift = new_splitting.v[alpha][g] - old.v[alpha][g]
                if not shift.is_zero():
                    image = image + Form.monomial(new_splitting, (n + alpha,), shift)
        images[g] = image
    result = Form.zero(new_splitting)
    for gens, coeff in a.terms.items():
        term = Form.function(new_splitting, coeff)
        for g in gens:
            term = term * images[g]
        result = result + term
    return result


def relabel(a, new_splitting):
    """Same components, read in another splitting's coframe."""
    if a.splitting.chart != new_splitting.chart:
        raise ChartMismatchError(f"Cannot relabel between {a.chart!r} and {new_splitting.chart!r}")
    return Form(new_splitting, a.terms)


def transport(a, new_splitting):
    """Leafwise transport: reframe, then drop the du-components."""
    return overline(reframe(a, new_splitting))
