"""
Form-valued vector fields and the Froelicher-Nijenhuis calculus
Insertion, Lie derivative, Nijenhuis-Richardson and Froelicher-Nijenhuis brackets
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from numbers import Rational

from src.polynomials import Polynomial, ChartMismatchError
from src.forms import Form, apply_derivation, exterior_d, overline as overline_form, reframe as reframe_form
from src.forms import relabel as relabel_form
from src.signs import parity_sign


class FormVector:
    """
    Element of Lambda(M) (x) X(M) in the adapted frame {d/dx^i, V_a}.
    parts[i] is the form coefficient of d/dx^i, parts[n + a] the one of V_a.
    """
    __slots__ = ("splitting", "parts")

    def __init__(self, splitting, parts=None):
        self.splitting = splitting
        size = len(splitting.chart.coords)
        parts = list(parts) if parts is not None else [None] * size
        if len(parts) != size:
            raise ValueError(f"Expected {size} frame components, got {len(parts)}")
        clean = []
        for part in parts:
            if part is None:
                part = Form.zero(splitting)
            elif part.splitting is not splitting and part.splitting != splitting:
                raise ChartMismatchError("Frame component lives in another splitting")
            clean.append(part)
        self.parts = tuple(clean)

    @classmethod
    def zero(cls, splitting):
        return cls(splitting)

    @classmethod
    def frame(cls, splitting, index, form=None):
        """form (x) e_index, where e_i = d/dx^i and e_{n+a} = V_a."""
        parts = [None] * len(splitting.chart.coords)
        parts[index] = form if form is not None else Form.function(splitting, 1)
        return cls(splitting, parts)

    @classmethod
    def from_vector_field(cls, X, splitting):
        """Rewrite a^c d/dc in the adapted frame: d/du^a = V_a - V_a^i d/dx^i."""
        n = splitting.chart.n
        coeffs = X.coefficients
        parts = []
        for i in range(n):
            value = coeffs[i]
            for alpha in range(splitting.chart.m):
                value = value - splitting.v[alpha][i] * coeffs[n + alpha]
            parts.append(Form.function(splitting, value))
        parts.extend(Form.function(splitting, coeffs[n + alpha]) for alpha in range(splitting.chart.m))
        return cls(splitting, parts)

    @property
    def chart(self):
        return self.splitting.chart

    def is_zero(self):
        return all(part.is_zero() for part in self.parts)

    def degrees(self):
        return sorted({d for part in self.parts for d in part.degrees()})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError(f"FormVector is not homogeneous (degrees {degrees})")
        return degrees[0] if degrees else 0

    def homogeneous_components(self):
        result = {}
        for deg in self.degrees():
            result[deg] = FormVector(self.splitting, [
                Form(self.splitting, {g: c for g, c in part.terms.items() if len(g) == deg})
                for part in self.parts
            ])
        return result

    def is_q_element(self):
        """No d/dx^i components and no du-factors: an element of Lambda-bar (x) X-bar."""
        n = self.chart.n
        if any(not part.is_zero() for part in self.parts[:n]):
            return False
        return all(part == overline_form(part) for part in self.parts[n:])

    def overline(self):
        n = self.chart.n
        return FormVector(self.splitting, [None] * n + [overline_form(p) for p in self.parts[n:]])

    def apply(self, f):
        """Z(f) = d_i f Z^(i) + (V_a f) Z^(n+a) for a function f."""
        s = self.splitting
        n = s.chart.n
        result = Form.zero(s)
        for i in range(n):
            if not self.parts[i].is_zero():
                result = result + self.parts[i] * f.derivative(i)
        for alpha in range(s.chart.m):
            if not self.parts[n + alpha].is_zero():
                result = result + self.parts[n + alpha] * s.frame_derivative(alpha, f)
        return result

    def reframe(self, new_splitting):
        """Re-express in the frame of new_splitting: V_a = V'_a - (V'-V)_a^i d/dx^i."""
        old = self.splitting
        chart = old.chart
        n = chart.n
        moved = [reframe_form(part, new_splitting) for part in self.parts]
        parts = list(moved)
        for i in range(n):
            for alpha in range(chart.m):
                shift = new_splitting.v[alpha][i] - old.v[alpha][i]
                if not shift.is_zero() and not moved[n + alpha].is_zero():
                    parts[i] = parts[i] - moved[n + alpha] * shift
        return FormVector(new_splitting, parts)

    def relabel(self, new_splitting):
        return FormVector(new_splitting, [relabel_form(p, new_splitting) for p in self.parts])

    def transport(self, new_splitting):
        return self.reframe(new_splitting).overline()

    # Arithmetic

    def _combine(self, other, sign):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, FormVector):
            return NotImplemented
        if other.splitting is not self.splitting and other.splitting != self.splitting:
            raise ChartMismatchError("FormVectors live in different splittings")
        if sign > 0:
            return FormVector(self.splitting, [a + b for a, b in zip(self.parts, other.parts)])
        return FormVector(self.splitting, [a - b for a, b in zip(self.parts, other.parts)])

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return FormVector(self.splitting, [-p for p in self.parts])

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Polynomial)):
            return FormVector(self.splitting, [p * other for p in self.parts])
        return NotImplemented

    def __rmul__(self, other):
        """Left multiplication by a scalar, a Polynomial or a Form."""
        if isinstance(other, (int, Rational, Polynomial)):
            return self * other
        if isinstance(other, Form):
            return FormVector(self.splitting, [other * p for p in self.parts])
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, FormVector):
            return NotImplemented
        return self.splitting == other.splitting and self.parts == other.parts

    __hash__ = None

    def pretty(self):
        chart = self.chart
        labels = [f"d/d{name}" for name in chart.leaf] + [f"V_{name}" for name in chart.transverse]
        pieces = [f"({part.pretty()})*{label}" for part, label in zip(self.parts, labels) if not part.is_zero()]
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self):
        return f"FormVector({self.pretty()})"


def identity_field(splitting):
    """The identity I = d^C x^i (x) d/dx^i + du^a (x) V_a."""
    return FormVector(splitting, [Form.generator(splitting, g) for g in range(len(splitting.chart.coords))])


def field_from_values(splitting, values):
    """
    The unique form-valued field W with W(c) = values[c] on every coordinate c:
    W^(n+b) = W(u^b), W^(j) = W(x^j) - V_a^j W(u^a).
    """
    n = splitting.chart.n
    parts = list(values)
    for j in range(n):
        for alpha in range(splitting.chart.m):
            coeff = splitting.v[alpha][j]
            if not coeff.is_zero():
                parts[j] = parts[j] - values[n + alpha] * coeff
    return FormVector(splitting, parts)


def coordinate_function(splitting, index):
    return Polynomial.variable(splitting.chart.coords, index)


def _check_pair(a, b):
    if a.splitting is not b.splitting and a.splitting != b.splitting:
        raise ChartMismatchError("Operands live in different splittings")


def insertion(Z, target):
    """i_Z: degree |Z|-1 derivation with i_Z(generator g) = Z^(g); acts on FormVector parts."""
    if isinstance(target, FormVector):
        return FormVector(target.splitting, [insertion(Z, part) for part in target.parts])
    _check_pair(Z, target)
    result = Form.zero(target.splitting)
    for p, component in Z.homogeneous_components().items():
        parts = component.parts
        result = result + apply_derivation(target, p - 1, on_generator=lambda g: parts[g])
    return result


def lie_derivative(Z, a):
    """L_Z = i_Z d - (-1)^(|Z|-1) d i_Z."""
    _check_pair(Z, a)
    result = Form.zero(a.splitting)
    for p, component in Z.homogeneous_components().items():
        first = insertion(component, exterior_d(a))
        second = exterior_d(insertion(component, a))
        result = result + first - second * parity_sign(p - 1)
    return result


def nr_bracket(Z1, Z2):
    """[Z1,Z2]_nr = i_Z1 Z2 - (-1)^((|Z1|-1)(|Z2|-1)) i_Z2 Z1."""
    _check_pair(Z1, Z2)
    result = FormVector.zero(Z1.splitting)
    for p1, c1 in Z1.homogeneous_components().items():
        for p2, c2 in Z2.homogeneous_components().items():
            result = result + insertion(c1, c2) - insertion(c2, c1) * parity_sign((p1 - 1) * (p2 - 1))
    return result


def fn_bracket(Z1, Z2):
    """
    [[Z1,Z2]] reconstructed from the derivation
    f -> L_Z1 L_Z2 f - (-1)^(|Z1||Z2|) L_Z2 L_Z1 f on coordinate functions.
    """
    _check_pair(Z1, Z2)
    s = Z1.splitting
    size = len(s.chart.coords)
    result = FormVector.zero(s)
    for p1, c1 in Z1.homogeneous_components().items():
        for p2, c2 in Z2.homogeneous_components().items():
            sign = parity_sign(p1 * p2)
            values = []
            for c in range(size):
                f = coordinate_function(s, c)
                forward = lie_derivative(c1, c2.apply(f))
                backward = lie_derivative(c2, c1.apply(f))
                values.append(forward - backward * sign)
            result = result + field_from_values(s, values)
    return result


class Operator:
    """Homogeneous graded operator on forms."""
    __slots__ = ("degree", "action", "label")

    def __init__(self, degree, action, label=""):
        self.degree = degree
        self.action = action
        self.label = label

    def __call__(self, a):
        return self.action(a)

    def __add__(self, other):
        return Operator(self.degree, lambda a: self(a) + other(a), f"{self.label} + {other.label}")

    def __sub__(self, other):
        return Operator(self.degree, lambda a: self(a) - other(a), f"{self.label} - {other.label}")

    def __neg__(self):
        return Operator(self.degree, lambda a: -self(a), f"-{self.label}")

    def __rmul__(self, scalar):
        return Operator(self.degree, lambda a: self(a) * scalar, f"{scalar}*{self.label}")

    def __matmul__(self, other):
        return Operator(self.degree + other.degree, lambda a: self(other(a)), f"{self.label}{other.label}")

    def __repr__(self):
        return f"Operator({self.label or '?'}, degree={self.degree})"


def commutator(A, B):
    """[A,B] = AB - (-1)^(ab) BA."""
    sign = parity_sign(A.degree * B.degree)
    return Operator(A.degree + B.degree, lambda a: A(B(a)) - B(A(a)) * sign, f"[{A.label},{B.label}]")


def d_operator(splitting=None):
    return Operator(1, exterior_d, "d")


def insertion_operator(Z, label="i_Z"):
    return Operator(Z.degree - 1, lambda a: insertion(Z, a), label)


def lie_operator(Z, label="L_Z"):
    return Operator(Z.degree, lambda a: lie_derivative(Z, a), label)


def multiplication_operator(omega, label="w"):
    return Operator(omega.degree, lambda a: omega * a, label)


def zero_operator(degree=0):
    return Operator(degree, lambda a: Form.zero(a.splitting), "0")


def decompose_derivation(op, splitting):
    """
    Recover (Z, Y) with op = i_Z + L_Y: Y from the action on functions,
    Z from op - L_Y on the differentials of the coordinates.
    """
    size = len(splitting.chart.coords)
    functions = [Form.function(splitting, coordinate_function(splitting, c)) for c in range(size)]
    Y = field_from_values(splitting, [op(f) for f in functions])
    differentials = [exterior_d(f) for f in functions]
    Z = field_from_values(splitting, [op(df) - lie_derivative(Y, df) for df in differentials])
    return Z, Y


# ==========================================
# IDENTITY CHECKS (residuals must vanish)
# ==========================================

def check_f4(omega, Z, a):
    """L_{wZ} = w L_Z + (-1)^(w+Z) dw i_Z, evaluated on a."""
    w, z = omega.degree, Z.degree
    lhs = lie_derivative(omega * Z, a)
    rhs = omega * lie_derivative(Z, a) + exterior_d(omega) * insertion(Z, a) * parity_sign(w + z)
    return lhs - rhs


def check_f5(Z, Y, a):
    """[i_Z, L_Y] = L_{i_Z Y} + (-1)^|Y| i_[[Z,Y]], evaluated on a."""
    left = commutator(insertion_operator(Z), lie_operator(Y))(a)
    right = lie_derivative(insertion(Z, Y), a) + insertion(fn_bracket(Z, Y), a) * parity_sign(Y.degree)
    return left - right


def check_f6(omega, Z, Y):
    """[wZ,Y]_nr = w[Z,Y]_nr - (-1)^((w+Z-1)(Y-1)) (i_Y w) Z."""
    w, z, y = omega.degree, Z.degree, Y.degree
    lhs = nr_bracket(omega * Z, Y)
    rhs = omega * nr_bracket(Z, Y) - insertion(Y, omega) * Z * parity_sign((w + z - 1) * (y - 1))
    return lhs - rhs


def check_f2(omega, Z, Y):
    """[[wZ,Y]] = w[[Z,Y]] - (-1)^((w+Z)Y) (L_Y w) Z + (-1)^(w+Z) dw i_Z Y."""
    w, z, y = omega.degree, Z.degree, Y.degree
    lhs = fn_bracket(omega * Z, Y)
    rhs = (omega * fn_bracket(Z, Y)
           - lie_derivative(Y, omega) * Z * parity_sign((w + z) * y)
           + exterior_d(omega) * insertion(Z, Y) * parity_sign(w + z))
    return lhs - rhs


def check_f3(X, Z, Y):
    """i_X[[Z,Y]] expanded through brackets of insertions."""
    x, z, y = X.degree, Z.degree, Y.degree
    lhs = insertion(X, fn_bracket(Z, Y))
    rhs = (fn_bracket(insertion(X, Z), Y)
           + fn_bracket(Z, insertion(X, Y)) * parity_sign((x - 1) * z)
           + insertion(fn_bracket(X, Z), Y) * parity_sign(z)
           - insertion(fn_bracket(X, Y), Z) * parity_sign(y * (z - 1)))
    return lhs - rhs


def check_f1(X, Z, Y):
    """[[X,[Z,Y]_nr]] expanded through mixed brackets."""
    x, z, y = X.degree, Z.degree, Y.degree
    lhs = fn_bracket(X, nr_bracket(Z, Y))
    inner = nr_bracket(Z, fn_bracket(X, Y)) - fn_bracket(insertion(Z, X), Y)
    rhs = (nr_bracket(fn_bracket(X, Z), Y)
           + inner * parity_sign(x * (z - 1))
           + fn_bracket(insertion(Y, X), Z) * parity_sign((x + z - 1) * (y - 1)))
    return lhs - rhs


def check_insertion_coherence(Z1, Z2, a):
    """[i_Z1, i_Z2] = i_[Z1,Z2]_nr on a."""
    left = commutator(insertion_operator(Z1), insertion_operator(Z2))(a)
    return left - insertion(nr_bracket(Z1, Z2), a)


def check_lie_coherence(Z1, Z2, a):
    """[L_Z1, L_Z2] = L_[[Z1,Z2]] on a."""
    left = commutator(lie_operator(Z1), lie_operator(Z2))(a)
    return left - lie_derivative(fn_bracket(Z1, Z2), a)


def check_nr_jacobi(Z1, Z2, Z3):
    d1, d2 = Z1.degree - 1, Z2.degree - 1
    lhs = nr_bracket(Z1, nr_bracket(Z2, Z3))
    rhs = nr_bracket(nr_bracket(Z1, Z2), Z3) + nr_bracket(Z2, nr_bracket(Z1, Z3)) * parity_sign(d1 * d2)
    return lhs - rhs


def check_fn_jacobi(Z1, Z2, Z3):
    d1, d2 = Z1.degree, Z2.degree
    lhs = fn_bracket(Z1, fn_bracket(Z2, Z3))
    rhs = fn_bracket(fn_bracket(Z1, Z2), Z3) + fn_bracket(Z2, fn_bracket(Z1, Z3)) * parity_sign(d1 * d2)
    return lhs - rhs


def check_fn_antisymmetry(Z1, Z2):
    return fn_bracket(Z1, Z2) + fn_bracket(Z2, Z1) * parity_sign(Z1.degree * Z2.degree)


def check_decomposition(Z, Y):
    """i_Z + L_Y decomposes back into (Z, Y); returns the two residuals."""
    op = Operator(Z.degree - 1, lambda a: insertion(Z, a) + lie_derivative(Y, a), "i_Z + L_Y")
    recovered_z, recovered_y = decompose_derivation(op, Z.splitting)
    return recovered_z - Z, recovered_y - Y
