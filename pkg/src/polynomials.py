"""
Exact multivariate polynomials over the rationals
Coefficient ring for every form, field and bracket in lrcheck
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction
from numbers import Rational


class ChartMismatchError(ValueError):
    """Operands live on different charts or splittings."""


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


class Polynomial:
    """
    Polynomial in the coordinates of a chart.
    terms maps an exponent tuple (one entry per coordinate) to a Fraction.
    Zero coefficients are never stored, so equality is structural.
    """
    __slots__ = ("coords", "terms")

    def __init__(self, coords, terms=None):
        self.coords = tuple(coords)
        clean = {}
        for exponents, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff:
                if len(exponents) != len(self.coords):
                    raise ValueError(f"Exponent {exponents} does not match coordinates {self.coords}")
                clean[tuple(exponents)] = coeff
        self.terms = clean

    # Constructors

    @classmethod
    def zero(cls, coords):
        return cls(coords)

    @classmethod
    def constant(cls, coords, value):
        return cls(coords, {(0,) * len(coords): value})

    @classmethod
    def variable(cls, coords, name):
        coords = tuple(coords)
        index = coords.index(name) if isinstance(name, str) else name
        exponents = [0] * len(coords)
        exponents[index] = 1
        return cls(coords, {tuple(exponents): 1})

    # Queries

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(exp) for exp in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("Polynomial is not constant")
        return self.terms.get((0,) * len(self.coords), Fraction(0))

    def degree(self):
        return max((sum(exp) for exp in self.terms), default=0)

    def depends_on(self, index):
        return any(exp[index] for exp in self.terms)

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.coords != self.coords:
                raise ChartMismatchError(f"Chart mismatch: {self.coords} vs {other.coords}")
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.coords, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            terms[exp] = terms.get(exp, 0) + coeff
        return Polynomial(self.coords, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.coords, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for exp_a, ca in self.terms.items():
            for exp_b, cb in other.terms.items():
                exp = tuple(a + b for a, b in zip(exp_a, exp_b))
                terms[exp] = terms.get(exp, 0) + ca * cb
        return Polynomial(self.coords, terms)

    __rmul__ = __mul__

    def scale(self, factor):
        factor = _as_fraction(factor)
        return Polynomial(self.coords, {exp: c * factor for exp, c in self.terms.items()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.constant(self.coords, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Polynomial) else other
        if other is None:
            return NotImplemented
        return self.coords == other.coords and self.terms == other.terms

    def __hash__(self):
        return hash((self.coords, frozenset(self.terms.items())))

    def derivative(self, coord):
        """Formal partial derivative along a coordinate name or index."""
        index = self._index(coord)
        terms = {}
        for exp, coeff in self.terms.items():
            if exp[index]:
                lowered = exp[:index] + (exp[index] - 1,) + exp[index + 1:]
                terms[lowered] = coeff * exp[index]
        return Polynomial(self.coords, terms)

    def _index(self, coord):
        if isinstance(coord, int):
            if not 0 <= coord < len(self.coords):
                raise ValueError(f"Unknown coordinate index {coord}")
            return coord
        try:
            return self.coords.index(coord)
        except ValueError:
            raise ValueError(f"Unknown coordinate '{coord}' for chart {self.coords}") from None

    # Printing

    def pretty(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, coeff in self.sorted_terms():
            monomial = "*".join(
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(self.coords, exp) if power
            )
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            pieces.append((coeff < 0, body))
        first_negative, first_body = pieces[0]
        text = ("-" if first_negative else "") + first_body
        for negative, body in pieces[1:]:
            text += (" - " if negative else " + ") + body
        return text

    def __repr__(self):
        return f"Polynomial({self.pretty()})"


def differentiate(p, coord):
    """Formal partial derivative of p along coord."""
    return p.derivative(coord)
