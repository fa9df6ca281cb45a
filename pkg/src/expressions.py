"""
Expression grammar for polynomial and form literals
Used by scenario files and by the pretty-printer round trip
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

from arpeggio import ParserPython, PTNodeVisitor, visit_parse_tree, ZeroOrMore, Optional, EOF, NoMatch
from arpeggio import RegExMatch as _

from src.polynomials import Polynomial
from src.forms import Form


class ExpressionSyntaxError(ValueError):
    """Text does not conform to the expression grammar."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class UnknownCoordinateError(ValueError):
    """Symbol is neither a coordinate nor the differential of one."""

    def __init__(self, name):
        super().__init__(f"Unknown coordinate '{name}'")
        self.name = name


# ==========================================
# GRAMMAR
# ==========================================

def rational():
    return _(r'\d+(/\d+)?')

def symbol():
    return _(r'[A-Za-z_][A-Za-z0-9_]*')

def sign():
    return _(r'[+-]')

def add_op():
    return _(r'[+-]')

def mul_op():
    return _(r'\*')

def caret():
    return _(r'\^')

def group():
    return "(", expression, ")"

def primary():
    return [rational, symbol, group]

def power():
    # '^' is a power when the right operand is an integer literal, a wedge otherwise
    return primary, ZeroOrMore(caret, primary)

def term():
    return power, ZeroOrMore(mul_op, power)

def expression():
    return Optional(sign), term, ZeroOrMore(add_op, term)

def statement():
    return expression, EOF


_PARSER = None

def _get_parser():
    global _PARSER
    if _PARSER is None:
        _PARSER = ParserPython(statement, skipws=True)
    return _PARSER


# ==========================================
# EVALUATION
# ==========================================

class _ScalarAlgebra:
    """Values are Polynomials over a coordinate list."""

    def __init__(self, coords):
        self.coords = tuple(coords)

    def lift(self, value):
        return Polynomial.constant(self.coords, value)

    def symbol(self, name):
        if name in self.coords:
            return Polynomial.variable(self.coords, name)
        raise UnknownCoordinateError(name)

    def wedge(self, left, right):
        raise ValueError("Wedge '^' needs a form context")


class _FormAlgebra:
    """Values are Forms; 'd<coord>' names a coframe generator."""

    def __init__(self, splitting):
        self.splitting = splitting
        self.coords = splitting.chart.coords

    def lift(self, value):
        return Form.function(self.splitting, value)

    def symbol(self, name):
        if name in self.coords:
            return Form.function(self.splitting, Polynomial.variable(self.coords, name))
        if name.startswith("d") and name[1:] in self.coords:
            return Form.generator(self.splitting, self.coords.index(name[1:]))
        raise UnknownCoordinateError(name)

    def wedge(self, left, right):
        return left * right


class ExpressionEvaluator(PTNodeVisitor):

    def __init__(self, algebra, parser, **kwargs):
        super().__init__(**kwargs)
        self.algebra = algebra
        self.parser = parser

    def _error(self, node, message):
        line, col = self.parser.pos_to_linecol(node.position)
        return ExpressionSyntaxError(message, line, col)

    def _value(self, child):
        if isinstance(child, Fraction):
            return self.algebra.lift(child)
        return child

    def visit_rational(self, node, children):
        numerator, _, denominator = node.value.partition("/")
        if denominator and int(denominator) == 0:
            raise self._error(node, "Zero denominator")
        return Fraction(int(numerator), int(denominator) if denominator else 1)

    def visit_symbol(self, node, children):
        return self.algebra.symbol(node.value)

    def visit_sign(self, node, children):
        return node.value

    def visit_add_op(self, node, children):
        return node.value

    def visit_mul_op(self, node, children):
        return node.value

    def visit_caret(self, node, children):
        return node.value

    def visit_group(self, node, children):
        return [c for c in children if not isinstance(c, str)][0]

    def visit_power(self, node, children):
        operands = [c for c in children if not isinstance(c, str)]
        result = operands[0]
        for operand in operands[1:]:
            if isinstance(operand, Fraction):
                if operand.denominator != 1:
                    raise self._error(node, "Exponent must be a non-negative integer")
                result = self._value(result) if isinstance(result, Fraction) else result
                result = result ** int(operand)
            else:
                try:
                    result = self.algebra.wedge(self._value(result), operand)
                except ValueError as e:
                    raise self._error(node, str(e)) from None
        return result

    def visit_term(self, node, children):
        operands = [self._value(c) for c in children if not isinstance(c, str)]
        result = operands[0]
        for operand in operands[1:]:
            result = result * operand
        return result

    def visit_expression(self, node, children):
        items = list(children)
        negate = False
        if items and isinstance(items[0], str):
            negate = items.pop(0) == "-"
        result = self._value(items[0])
        if negate:
            result = -result
        for op, operand in zip(items[1::2], items[2::2]):
            operand = self._value(operand)
            result = result - operand if op == "-" else result + operand
        return result

    def visit_statement(self, node, children):
        return [c for c in children if not isinstance(c, str)][0]


def _evaluate(text, algebra):
    parser = _get_parser()
    try:
        tree = parser.parse(text)
    except NoMatch as e:
        line = getattr(e, "line", None)
        col = getattr(e, "col", None)
        if line is None:
            line, col = parser.pos_to_linecol(e.position)
        raise ExpressionSyntaxError(f"Cannot parse '{text}'", line, col) from None
    return visit_parse_tree(tree, ExpressionEvaluator(algebra, parser))


def parse_expression(text, coords):
    """Parse a scalar expression into a Polynomial over coords."""
    return _evaluate(text, _ScalarAlgebra(coords))


def parse_form(text, splitting):
    """Parse a form literal such as 'u1 * dx ^ du2' in the coframe of splitting."""
    return _evaluate(text, _FormAlgebra(splitting))


def pretty_print(value):
    return value.pretty()
