"""
Foliation core: projectors, curvature, the d0 + d1 + d2 decomposition,
the leafwise differential and the LR-infinity[1] anchors and brackets
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

from src.polynomials import Polynomial
from src.forms import (
    Form, Splitting, VectorField, exterior_d, bidegree_project, overline, contract_vector,
)
from src.fn_calculus import (
    FormVector, Operator, insertion, lie_derivative, nr_bracket, fn_bracket,
    identity_field, commutator, d_operator,
)
from src.linfty import BracketOracle, is_null
from src.signs import iter_blocks, koszul_sign, parity_sign

MUTATIONS = ("binary-fn-sign", "binary-curvature-sign", "anchor-sign")


class FoliationStructure:
    """Projectors P^C, P^V and the curvature R = 1/2 [[P^C, P^C]] of a splitting."""

    def __init__(self, splitting):
        self.splitting = splitting
        chart = splitting.chart
        n = chart.n
        size = len(chart.coords)
        self.pC = FormVector(splitting, [Form.generator(splitting, g) if g < n else None for g in range(size)])
        self.pV = FormVector(splitting, [Form.generator(splitting, g) if g >= n else None for g in range(size)])
        self.curvature = fn_bracket(self.pC, self.pC) * Fraction(1, 2)

    @property
    def chart(self):
        return self.splitting.chart

    @property
    def n(self):
        return self.splitting.chart.n

    @property
    def m(self):
        return self.splitting.chart.m

    def is_flat(self):
        return self.curvature.is_zero()

    def curvature_component(self, i, alpha, beta):
        """R^i_ab with [V_a, V_b] = R^i_ab d/dx^i."""
        if alpha == beta:
            return Polynomial.zero(self.chart.coords)
        n = self.n
        low, high = sorted((n + alpha, n + beta))
        value = self.curvature.parts[i].coefficient((low, high))
        return value if alpha < beta else -value

    def frame_bracket_component(self, i, alpha, beta):
        """The d/dx^i component of [V_a, V_b] computed directly from the V coefficients."""
        s = self.splitting
        return s.frame_derivative(alpha, s.v[beta][i]) - s.frame_derivative(beta, s.v[alpha][i])

    def frame_vector(self, alpha, coeff=1):
        """coeff * V-bar_a as an element of Lambda-bar (x) X-bar."""
        form = coeff if isinstance(coeff, Form) else Form.function(self.splitting, coeff)
        return FormVector.frame(self.splitting, self.n + alpha, form)

    def leaf_vector(self, i, coeff=1):
        form = coeff if isinstance(coeff, Form) else Form.function(self.splitting, coeff)
        return FormVector.frame(self.splitting, i, form)

    def __repr__(self):
        return f"FoliationStructure({self.splitting!r}, curvature={self.curvature.pretty()})"


def build_splitting(chart, v_coeffs=None, name=""):
    return FoliationStructure(Splitting(chart, v_coeffs, name=name))


# ==========================================
# OPERATORS
# ==========================================

def structure_operators(F):
    """d^C, d^V, i_R and L_R as graded operators."""
    R = F.curvature
    return {
        "dC": Operator(1, lambda a: lie_derivative(F.pC, a), "d^C"),
        "dV": Operator(1, lambda a: lie_derivative(F.pV, a), "d^V"),
        "iR": Operator(1, lambda a: insertion(R, a), "i_R"),
        "LR": Operator(2, lambda a: lie_derivative(R, a), "L_R"),
    }


def bidegree_components(a):
    """Split a into pieces of fixed (du-count, d^C x-count)."""
    pieces = {}
    for gens, coeff in a.terms.items():
        du = a.du_count(gens)
        pieces.setdefault((du, len(gens) - du), {})[gens] = coeff
    return {key: Form(a.splitting, terms) for key, terms in sorted(pieces.items())}


def d_component(a, k):
    """The bidegree (k, 1-k) part of the exterior differential."""
    result = Form.zero(a.splitting)
    for (r, s), piece in bidegree_components(a).items():
        result = result + bidegree_project(exterior_d(piece), r + k, s - k + 1)
    return result


def differential_components(F):
    """(d0, d1, d2) as bidegree projections of d."""
    return tuple(Operator(1, lambda a, k=k: d_component(a, k), f"d{k}") for k in range(3))


def differential_expressions(F):
    """d0 = d^C - i_R, d1 = d^V + 2 i_R, d2 = -i_R."""
    ops = structure_operators(F)
    return (ops["dC"] - ops["iR"], ops["dV"] + 2 * ops["iR"], -ops["iR"])


# ==========================================
# LEAFWISE DIFFERENTIAL
# ==========================================

def _require_abar(a):
    if not overline(a) == a:
        raise ValueError(f"Form has transverse components and is not leafwise: {a.pretty()}")


def _require_q(Z):
    if not Z.is_q_element():
        raise ValueError(f"Not an element of Lambda-bar (x) X-bar: {Z.pretty()}")


def dbar(F, a):
    """Leafwise differential on Lambda-bar and on Lambda-bar (x) X-bar."""
    if isinstance(a, FormVector):
        _require_q(a)
        return fn_bracket(F.pC, a).overline()
    _require_abar(a)
    return bidegree_project(exterior_d(a), r=0)


def dbar_lemma_form(F, a):
    """d^C a - i_R a."""
    ops = structure_operators(F)
    return ops["dC"](a) - ops["iR"](a)


def dbar_lemma_vector(F, Z):
    """[[P^C, Z]] - [R, Z]_nr."""
    return fn_bracket(F.pC, Z) - nr_bracket(F.curvature, Z)


# ==========================================
# PAIRING
# ==========================================

def shifted_degree(Z):
    return Z.degree - 1


def evaluate_pairing(omega, zs):
    """
    <omega|Z1,...,Zr> = (-1)^chi i_Z1 ... i_Zr omega, chi = r + r*r(r-1)/2 + w*sum Z-bar.

    w is the total degree of omega. The r(r-1)/2 term is weighted by the
    transverse degree r alone: leafwise factors of omega pull out of the
    pairing on the left without sign, as in the product of Sym_A(Q, A).
    """
    zs = list(zs)
    r = len(zs)
    for gens in omega.terms:
        if omega.du_count(gens) != r:
            raise ValueError(f"Form {omega.pretty()} has {omega.du_count(gens)} transverse factors, "
                             f"cannot pair with {r} arguments")
    if omega.is_zero():
        return Form.zero(omega.splitting)
    w = omega.degree
    chi = r + r * (r * (r - 1) // 2) + w * sum(shifted_degree(Z) for Z in zs)
    result = omega
    for Z in reversed(zs):
        result = insertion(Z, result)
    return result * parity_sign(chi)


# ==========================================
# BRACKETS AND ANCHORS
# ==========================================

def anchor(F, *args, mutation=None):
    """{Z1,...,Z_{k-1}|lambda}; the module argument comes last."""
    *zs, lam = args
    if is_null(lam):
        return Form.zero(F.splitting)
    k = len(zs)
    if k == 0:
        return dbar(F, lam)
    if any(is_null(Z) for Z in zs):
        return Form.zero(F.splitting)
    R = F.curvature
    if k == 1:
        (Z,) = zs
        sign = -parity_sign(shifted_degree(Z))
        if mutation == "anchor-sign":
            sign = -sign
        return lie_derivative(Z, lam) * sign + insertion(nr_bracket(R, Z), lam)
    if k == 2:
        Z1, Z2 = zs
        return -insertion(nr_bracket(nr_bracket(R, Z1), Z2), lam)
    return Form.zero(F.splitting)


def bracket(F, *zs, mutation=None):
    """{Z1,...,Zk} for k = 1, 2, 3; zero above."""
    k = len(zs)
    if k == 0:
        raise ValueError("Bracket needs at least one argument")
    if any(is_null(Z) for Z in zs):
        return FormVector.zero(F.splitting)
    R = F.curvature
    if k == 1:
        return dbar(F, zs[0])
    if k == 2:
        Z1, Z2 = zs
        fn_part = fn_bracket(Z1, Z2) * -parity_sign(shifted_degree(Z1))
        curvature_part = nr_bracket(nr_bracket(R, Z1), Z2)
        if mutation == "binary-fn-sign":
            fn_part = -fn_part
        if mutation == "binary-curvature-sign":
            curvature_part = -curvature_part
        return fn_part + curvature_part
    if k == 3:
        Z1, Z2, Z3 = zs
        return -nr_bracket(nr_bracket(nr_bracket(R, Z1), Z2), Z3)
    return FormVector.zero(F.splitting)


def alt_bracket(F, Z1, Z2):
    """-(-1)^Z1 overline([[Z1, Z2]])."""
    return fn_bracket(Z1, Z2).overline() * -parity_sign(shifted_degree(Z1))


def alt_anchor(F, Z, lam):
    """-(-1)^Z overline(L_Z lambda)."""
    return overline(lie_derivative(Z, lam)) * -parity_sign(shifted_degree(Z))


class FoliationOracle(BracketOracle):
    """Brackets on Q = Lambda-bar (x) X-bar[1] with anchors on Lambda-bar."""
    max_arity = 3

    def __init__(self, F, mutation=None):
        if mutation is not None and mutation not in MUTATIONS:
            raise ValueError(f"Unknown mutation '{mutation}', expected one of {MUTATIONS}")
        self.F = F
        self.mutation = mutation

    def degree(self, v):
        if isinstance(v, Form):
            return v.degree
        return shifted_degree(v)

    def is_module(self, v):
        return isinstance(v, Form)

    def bracket(self, *args):
        return bracket(self.F, *args, mutation=self.mutation)

    def anchor(self, *args):
        return anchor(self.F, *args, mutation=self.mutation)


# ==========================================
# IDENTITY CHECKS (residuals must vanish)
# ==========================================

def bracket_table_residuals(F):
    """FN brackets among P^C, P^V, R against the table, all ordered pairs."""
    R = F.curvature
    named = {"PC": F.pC, "PV": F.pV, "R": R}
    form_degree = {"PC": 1, "PV": 1, "R": 2}
    expected = {
        ("PC", "PC"): R * 2, ("PC", "PV"): R * -2, ("PV", "PV"): R * 2,
        ("PC", "R"): None, ("PV", "R"): None, ("R", "R"): None,
    }
    residuals = {}
    for (a, b), value in expected.items():
        target = value if value is not None else FormVector.zero(F.splitting)
        residuals[f"[[{a},{b}]]"] = fn_bracket(named[a], named[b]) - target
        if a != b:
            # graded antisymmetry gives the reversed pair
            sign = -parity_sign(form_degree[a] * form_degree[b])
            residuals[f"[[{b},{a}]]"] = fn_bracket(named[b], named[a]) - target * sign
    residuals["PC+PV=I"] = F.pC + F.pV - identity_field(F.splitting)
    return residuals


def operator_relations(F):
    """(label, left, right) with left = right expected."""
    ops = structure_operators(F)
    dC, dV, iR, LR = ops["dC"], ops["dV"], ops["iR"], ops["LR"]
    zero1 = Operator(2, lambda a: Form.zero(a.splitting), "0")
    zero2 = Operator(3, lambda a: Form.zero(a.splitting), "0")
    zero3 = Operator(4, lambda a: Form.zero(a.splitting), "0")
    return [
        ("[dC,dC] = 2L_R", commutator(dC, dC), 2 * LR),
        ("[dC,dV] = -2L_R", commutator(dC, dV), -2 * LR),
        ("[dC,i_R] = L_R", commutator(dC, iR), LR),
        ("[i_R,dC] = L_R", commutator(iR, dC), LR),
        ("[dV,dV] = 2L_R", commutator(dV, dV), 2 * LR),
        ("[dV,i_R] = 0", commutator(dV, iR), zero1),
        ("[i_R,i_R] = 0", commutator(iR, iR), zero1),
        ("[i_R,L_R] = 0", commutator(iR, LR), zero2),
        ("[dC,L_R] = 0", commutator(dC, LR), zero2),
        ("[dV,L_R] = 0", commutator(dV, LR), zero2),
        ("[L_R,L_R] = 0", commutator(LR, LR), zero3),
        ("dC + dV = d", dC + dV, d_operator()),
    ]


def operator_relation_residuals(F, forms):
    residuals = {}
    for label, left, right in operator_relations(F):
        for index, a in enumerate(forms):
            residuals[f"{label} #{index}"] = left(a) - right(a)
    return residuals


def differential_residuals(F, forms):
    """Bidegree parts of d against their operator expressions and the quadratic relations."""
    parts = differential_components(F)
    exprs = differential_expressions(F)
    ops = structure_operators(F)
    d0, d1, d2 = parts
    quadratic = [
        ("[d0,d0] = 0", commutator(d0, d0), None),
        ("[d0,d1] = 0", commutator(d0, d1), None),
        ("[d1,d2] = 0", commutator(d1, d2), None),
        ("[d2,d2] = 0", commutator(d2, d2), None),
        ("[d1,d1] = 2L_R", commutator(d1, d1), 2 * ops["LR"]),
        ("[d0,d2] = -L_R", commutator(d0, d2), -ops["LR"]),
    ]
    residuals = {}
    for index, a in enumerate(forms):
        for k in range(3):
            residuals[f"d{k} expression #{index}"] = parts[k](a) - exprs[k](a)
        residuals[f"d0+d1+d2 = d #{index}"] = d0(a) + d1(a) + d2(a) - exterior_d(a)
        residuals[f"dd = 0 #{index}"] = exterior_d(exterior_d(a))
        for label, left, right in quadratic:
            value = left(a)
            residuals[f"{label} #{index}"] = value - right(a) if right is not None else value
    return residuals


def dbar_residuals(F, lam=None, Z=None):
    """dbar squares to zero and agrees with the curvature-corrected expressions."""
    residuals = {}
    if lam is not None:
        once = dbar(F, lam)
        residuals["dbar^2 lambda"] = dbar(F, once)
        residuals["dbar lambda = dC - i_R"] = once - dbar_lemma_form(F, lam)
    if Z is not None:
        once = dbar(F, Z)
        residuals["dbar^2 Z"] = dbar(F, once)
        residuals["dbar Z = [[PC,Z]] - [R,Z]_nr"] = once - dbar_lemma_vector(F, Z)
    return residuals


def bott_residual(F, X, Z):
    """i_X dbar Z = overline([[X, Z]]) for a leaf field X and a degree-zero Z."""
    return insertion(X, dbar(F, Z)) - fn_bracket(X, Z).overline()


def leafwise_ce_residual(F, lam, X1, X2):
    """For a leafwise 1-form: (dbar lambda)(X1,X2) = X1 lambda(X2) - X2 lambda(X1) - lambda([X1,X2])."""
    lhs = contract_vector(X2, contract_vector(X1, dbar(F, lam)))
    on1 = contract_vector(X1, lam).coefficient(())
    on2 = contract_vector(X2, lam).coefficient(())
    commutator_coeffs = [X1.apply(c2) - X2.apply(c1) for c1, c2 in zip(X1.coefficients, X2.coefficients)]
    bracket_field = VectorField(X1.chart, commutator_coeffs)
    rhs = X1.apply(on2) - X2.apply(on1) - contract_vector(bracket_field, lam).coefficient(())
    return lhs - Form.function(F.splitting, rhs)


def alt_binary_residuals(F, Z1, Z2, Z, lam):
    return {
        "binary bracket": bracket(F, Z1, Z2) - alt_bracket(F, Z1, Z2),
        "unary anchor": anchor(F, Z, lam) - alt_anchor(F, Z, lam),
    }


def closure_residuals(F, zs, lam):
    """Brackets land in Q and anchors in Lambda-bar."""
    residuals = {}
    for k in range(1, len(zs) + 1):
        value = bracket(F, *zs[:k])
        residuals[f"bracket/{k} in Q"] = value - value.overline()
    for k in range(0, min(len(zs), 2) + 1):
        value = anchor(F, *zs[:k], lam)
        residuals[f"anchor/{k} in Lambda-bar"] = value - overline(value)
    return residuals


def lrp_residual(F, zs, a):
    """{Z1..Z_{k-1}, a Zk} - {Z1..Z_{k-1}|a} Zk - (-1)^(a(Z1+..+Z_{k-1}+1)) a {Z1..Zk}."""
    *head, last = zs
    lhs = bracket(F, *head, a * last)
    first = anchor(F, *head, a) * last
    sign = parity_sign(a.degree * (sum(shifted_degree(Z) for Z in head) + 1))
    return lhs - first - a * bracket(F, *zs) * sign


def anchor_derivation_residual(F, zs, lam1, lam2):
    """{zs|l1 l2} = {zs|l1} l2 + (-1)^(l1(sum Z + 1)) l1 {zs|l2}."""
    lhs = anchor(F, *zs, lam1 * lam2)
    sign = parity_sign(lam1.degree * (sum(shifted_degree(Z) for Z in zs) + 1))
    return lhs - anchor(F, *zs, lam1) * lam2 - lam1 * anchor(F, *zs, lam2) * sign


def anchor_linearity_residual(F, a, zs, lam):
    """{a Z1, Z2..|lambda} = (-1)^a a {Z1, Z2..|lambda}."""
    lhs = anchor(F, a * zs[0], *zs[1:], lam)
    return lhs - a * anchor(F, *zs, lam) * parity_sign(a.degree)


def ce_residual(F, omega, k, qs):
    """
    Higher Chevalley-Eilenberg evaluation of d_k omega against the
    bidegree projection of d omega, both paired with q1..q_{r+k}.
    """
    qs = list(qs)
    r = len(qs) - k
    if r < 0:
        raise ValueError(f"Need at least {k} arguments, got {len(qs)}")
    w = omega.degree if not omega.is_zero() else 0
    degrees = [shifted_degree(q) for q in qs]
    lhs = evaluate_pairing(bidegree_project(exterior_d(omega), r=r + k), qs)
    rhs = Form.zero(F.splitting)
    for sigma in iter_blocks(k, r):
        head = [qs[s] for s in sigma[:k]]
        inner = evaluate_pairing(omega, [qs[s] for s in sigma[k:]])
        sign = koszul_sign(sigma, degrees) * parity_sign(w * sum(degrees[s] for s in sigma[:k]))
        rhs = rhs + anchor(F, *head, inner) * sign
    if r >= 1:
        for tau in iter_blocks(k + 1, r - 1):
            inner = bracket(F, *[qs[t] for t in tau[:k + 1]])
            if is_null(inner):
                continue
            value = evaluate_pairing(omega, [inner] + [qs[t] for t in tau[k + 1:]])
            rhs = rhs - value * (koszul_sign(tau, degrees) * parity_sign(w))
    return lhs - rhs
