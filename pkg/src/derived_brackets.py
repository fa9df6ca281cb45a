"""
Higher derived brackets from first order differential operators on forms
Operators i_Z + L_Y + (w ^ .), the embedding of Q + A and its left inverse
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.forms import Form, overline
from src.fn_calculus import (
    FormVector, insertion, lie_derivative, nr_bracket, fn_bracket, identity_field,
)
from src.linfty import BracketOracle, DirectSumOracle, is_null
from src.foliation import FoliationOracle, shifted_degree
from src.signs import parity_sign


class FirstOrderOperator:
    """
    The operator a -> i_Z a + L_Y a + scalar ^ a of a fixed degree.
    Z has form degree degree + 1, Y and scalar have form degree degree.
    """
    __slots__ = ("splitting", "Z", "Y", "scalar", "degree")

    def __init__(self, splitting, degree, Z=None, Y=None, scalar=None):
        self.splitting = splitting
        self.degree = degree
        self.Z = Z if Z is not None else FormVector.zero(splitting)
        self.Y = Y if Y is not None else FormVector.zero(splitting)
        self.scalar = scalar if scalar is not None else Form.zero(splitting)

    def __call__(self, a):
        return insertion(self.Z, a) + lie_derivative(self.Y, a) + self.scalar * a

    def is_zero(self):
        return self.Z.is_zero() and self.Y.is_zero() and self.scalar.is_zero()

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return FirstOrderOperator(self.splitting, self.degree, self.Z + other.Z, self.Y + other.Y,
                                  self.scalar + other.scalar)

    __radd__ = __add__

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, factor):
        return FirstOrderOperator(self.splitting, self.degree, self.Z * factor, self.Y * factor,
                                  self.scalar * factor)

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, FirstOrderOperator):
            return NotImplemented
        return self.Z == other.Z and self.Y == other.Y and self.scalar == other.scalar

    __hash__ = None

    def commutator(self, other):
        """Graded commutator computed on the (Z, Y, scalar) data."""
        d1, d2 = self.degree, other.degree
        Z1, Y1, w1 = self.Z, self.Y, self.scalar
        Z2, Y2, w2 = other.Z, other.Y, other.scalar
        # [i_Z1, i_Z2] = i_[Z1,Z2]_nr
        Z = nr_bracket(Z1, Z2)
        # [i_Z1, L_Y2] = L_{i_Z1 Y2} + (-1)^|Y2| i_[[Z1,Y2]]
        Y = insertion(Z1, Y2)
        Z = Z + fn_bracket(Z1, Y2) * parity_sign(d2)
        # [L_Y1, i_Z2] = -(-1)^(|Y1|(|Z2|-1)) [i_Z2, L_Y1]
        swap = -parity_sign(d1 * d2)
        Y = Y + insertion(Z2, Y1) * swap
        Z = Z + fn_bracket(Z2, Y1) * (swap * parity_sign(d1))
        Y = Y + fn_bracket(Y1, Y2)
        scalar = _derivation_part(self)(w2) - _derivation_part(other)(w1) * parity_sign(d1 * d2)
        return FirstOrderOperator(self.splitting, d1 + d2, Z, Y, scalar)

    def __repr__(self):
        return (f"FirstOrderOperator(degree={self.degree}, Z={self.Z.pretty()}, "
                f"Y={self.Y.pretty()}, scalar={self.scalar.pretty()})")


def _derivation_part(op):
    return FirstOrderOperator(op.splitting, op.degree, op.Z, op.Y)


def operator_commutator_residual(op1, op2, a):
    """Symbolic commutator against op1 op2 - (-1)^(d1 d2) op2 op1 evaluated on a."""
    direct = op1(op2(a)) - op2(op1(a)) * parity_sign(op1.degree * op2.degree)
    return op1.commutator(op2)(a) - direct


# ==========================================
# V-DATA
# ==========================================

def exterior_operator(F):
    """D = L_I, the exterior differential."""
    return FirstOrderOperator(F.splitting, 1, Y=identity_field(F.splitting))


def embed(F, x):
    """i(q) = i_q for q in Q, i(a) = multiplication by -a for a leafwise form."""
    if isinstance(x, FormVector):
        return FirstOrderOperator(F.splitting, shifted_degree(x), Z=x)
    return FirstOrderOperator(F.splitting, x.degree, scalar=-x)


def project(F, op):
    """(P_Q op, P_A op) with P_Q op = sum_b overline(op du^b) V-bar_b and P_A op = -overline(scalar)."""
    n = F.n
    parts = [None] * n
    for beta in range(F.m):
        parts.append(overline(op(Form.generator(F.splitting, n + beta))))
    return FormVector(F.splitting, parts), -overline(op.scalar)


def derived_bracket(F, *args):
    """
    P[[...[[D, i(a1)], i(a2)]...], i(ak)]: a Q-element when every argument is
    in Q, a leafwise form when one argument is, zero with two or more forms.
    """
    if not args:
        raise ValueError("Derived bracket needs at least one argument")
    module_count = sum(1 for a in args if isinstance(a, Form))
    if any(is_null(a) for a in args):
        return Form.zero(F.splitting) if module_count else FormVector.zero(F.splitting)
    op = exterior_operator(F)
    for a in args:
        op = op.commutator(embed(F, a))
    q_part, a_part = project(F, op)
    return q_part if module_count == 0 else a_part


class DerivedOracle(BracketOracle):
    """Derived brackets on Q + Lambda-bar, to be compared with the direct-sum foliation brackets."""

    def __init__(self, F, max_arity=None):
        self.F = F
        self.max_arity = max_arity

    def degree(self, v):
        return v.degree if isinstance(v, Form) else shifted_degree(v)

    def is_module(self, v):
        return isinstance(v, Form)

    def bracket(self, *args):
        return derived_bracket(self.F, *args)


# ==========================================
# IDENTITY CHECKS (residuals must vanish)
# ==========================================

def vdata_residuals(F, q1, q2, a):
    """P i = id, D^2 = 0, P D = 0, the image of i is abelian."""
    residuals = {}
    D = exterior_operator(F)
    q_part, a_part = project(F, embed(F, q1))
    residuals["P_Q i(q) = q"] = q_part - q1
    residuals["P_A i(q) = 0"] = a_part
    q_part, a_part = project(F, embed(F, a))
    residuals["P_A i(a) = a"] = a_part - a
    residuals["P_Q i(a) = 0"] = q_part
    square = D.commutator(D)
    residuals["[D,D] = 0 (Z)"] = square.Z
    residuals["[D,D] = 0 (Y)"] = square.Y
    q_part, a_part = project(F, D)
    residuals["P_Q D = 0"] = q_part
    residuals["P_A D = 0"] = a_part
    for label, (x, y) in {"qq": (q1, q2), "qa": (q1, a), "aa": (a, a)}.items():
        value = embed(F, x).commutator(embed(F, y))
        residuals[f"[i,i] = 0 {label} (Z)"] = value.Z
        residuals[f"[i,i] = 0 {label} (Y)"] = value.Y
        residuals[f"[i,i] = 0 {label} (scalar)"] = value.scalar
    return residuals


def kernel_element(F, op):
    """op - i(P op), which P sends to zero."""
    q_part, a_part = project(F, op)
    result = op
    if not q_part.is_zero():
        result = result - embed(F, q_part)
    if not a_part.is_zero():
        result = result - embed(F, a_part)
    return result


def kernel_closure_residual(F, op1, op2):
    """P of the commutator of two kernel elements; both components must vanish."""
    k1, k2 = kernel_element(F, op1), kernel_element(F, op2)
    return project(F, k1.commutator(k2))


def equivalence_residual(F, *args):
    """Derived bracket minus the direct-sum bracket of the foliation algebra at the same arguments."""
    derived = derived_bracket(F, *args)
    direct = DirectSumOracle(FoliationOracle(F)).bracket(*args)
    return derived if is_null(direct) else derived - direct
