"""
Presymplectic forms transverse to a foliation
The homotopy Poisson brackets on leafwise forms and the Hamiltonian morphism
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction
from math import comb

import sympy

from src.polynomials import Polynomial
from src.forms import Form, exterior_d, bidegree_project
from src.fn_calculus import FormVector, insertion
from src.foliation import FoliationOracle, dbar, d_component, evaluate_pairing, anchor
from src.linfty import BracketOracle, MorphismFamily, morphism_defect, is_null
from src.signs import iter_blocks, koszul_sign, parity_sign


class PresymplecticError(ValueError):
    """Form is not a valid transverse presymplectic form."""


# ==========================================
# SYMPY BRIDGE
# ==========================================

def _symbols(coords):
    return sympy.symbols(" ".join(coords), seq=True)


def to_sympy(p, symbols):
    expr = sympy.Integer(0)
    for exponents, coeff in p.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for sym, e in zip(symbols, exponents):
            term *= sym ** e
        expr += term
    return expr


def from_sympy(expr, coords, symbols):
    expr = sympy.expand(expr)
    if expr == 0:
        return Polynomial.zero(coords)
    terms = {}
    for exponents, coeff in sympy.Poly(expr, *symbols).as_dict().items():
        rational = sympy.Rational(coeff)
        terms[tuple(int(e) for e in exponents)] = Fraction(int(rational.p), int(rational.q))
    return Polynomial(coords, terms)


# ==========================================
# DATA
# ==========================================

class PresymplecticData:
    """
    Omega = sum_{a<b} Omega_ab du^a du^b with polynomial coefficients in the
    transverse coordinates and constant nonzero determinant.
    inverse[a][b] = P^ab with P^ab Omega_bc = delta^a_c.
    """

    def __init__(self, F, omega):
        self.F = F
        self.omega = omega
        self.matrix = _coefficient_matrix(F, omega)
        self.inverse = _invert(F, self.matrix)

    @property
    def splitting(self):
        return self.F.splitting

    def bivector_coefficients(self):
        m = self.F.m
        return {(a, b): self.inverse[a][b] for a in range(m) for b in range(m) if not self.inverse[a][b].is_zero()}

    def __repr__(self):
        return f"PresymplecticData({self.omega.pretty()})"


def _coefficient_matrix(F, omega):
    if omega.splitting != F.splitting:
        raise PresymplecticError("Presymplectic form lives in another splitting")
    n, m = F.n, F.m
    coords = F.chart.coords
    matrix = [[Polynomial.zero(coords) for _ in range(m)] for _ in range(m)]
    for gens, coeff in omega.terms.items():
        if len(gens) != 2 or omega.du_count(gens) != 2:
            raise PresymplecticError(f"Presymplectic form must be a sum of du^du terms, found {omega.pretty()}")
        if any(coeff.depends_on(i) for i in range(n)):
            raise PresymplecticError(f"Coefficient {coeff.pretty()} depends on leaf coordinates")
        a, b = gens[0] - n, gens[1] - n
        matrix[a][b] = coeff
        matrix[b][a] = -coeff
    return matrix


def _invert(F, matrix):
    coords = F.chart.coords
    m = F.m
    symbols = _symbols(coords)
    M = sympy.Matrix(m, m, lambda a, b: to_sympy(matrix[a][b], symbols))
    det = sympy.expand(M.det()) if m else sympy.Integer(1)
    if det == 0:
        raise PresymplecticError("Presymplectic form is degenerate on the transverse directions")
    if not det.is_number:
        raise PresymplecticError(f"Determinant {det} is not constant, the inverse would not be polynomial")
    adjugate = M.adjugate()
    return [[from_sympy(adjugate[a, b] / det, coords, symbols) for b in range(m)] for a in range(m)]


def validate_presymplectic(F, omega):
    """Check closedness and invertibility, then return the presymplectic data."""
    if omega.is_zero():
        raise PresymplecticError("Presymplectic form is zero")
    data = PresymplecticData(F, omega)
    d_omega = exterior_d(omega)
    if not d_omega.is_zero():
        raise PresymplecticError(f"Presymplectic form is not closed: d(omega) = {d_omega.pretty()}")
    return data


def presymplectic_residuals(data):
    """P Omega = 1, dbar omega = 0, d2 omega = 0, i_{d/dx} omega = 0, dbar P = 0."""
    F = data.F
    m, n = F.m, F.n
    s = F.splitting
    residuals = {}
    for a in range(m):
        for c in range(m):
            total = Polynomial.zero(F.chart.coords)
            for b in range(m):
                total = total + data.inverse[a][b] * data.matrix[b][c]
            expected = 1 if a == c else 0
            residuals[f"(P Omega)[{a},{c}]"] = Form.function(s, total - expected)
    residuals["dbar-part of d omega"] = bidegree_project(exterior_d(data.omega), r=2, s=1)
    residuals["d2 omega"] = d_component(data.omega, 2)
    for i in range(n):
        residuals[f"i_d{F.chart.leaf[i]} omega"] = insertion(F.leaf_vector(i), data.omega)
    for (a, b), coeff in data.bivector_coefficients().items():
        residuals[f"dbar P[{a},{b}]"] = dbar(F, Form.function(s, coeff))
    return residuals


# ==========================================
# SHARP, FLAT, PAIRING
# ==========================================

def _transverse_slots(data, w):
    """Split a form with one du per monomial into {gamma: leafwise coefficient}."""
    n = data.F.n
    slots = {}
    for gens, coeff in w.terms.items():
        if w.du_count(gens) != 1:
            raise ValueError(f"Expected one transverse factor per monomial, got {w.pretty()}")
        gamma = gens[-1] - n
        piece = Form.monomial(w.splitting, gens[:-1], coeff)
        slots[gamma] = slots[gamma] + piece if gamma in slots else piece
    return slots


def sharp(data, w):
    """sharp(mu du^c) = mu P^cb V-bar_b."""
    F = data.F
    parts = [None] * F.n + [Form.zero(F.splitting) for _ in range(F.m)]
    for gamma, mu in _transverse_slots(data, w).items():
        for beta in range(F.m):
            coeff = data.inverse[gamma][beta]
            if not coeff.is_zero():
                parts[F.n + beta] = parts[F.n + beta] + mu * coeff
    return FormVector(F.splitting, parts)


def flat(data, Z):
    """flat(z^c V-bar_c) = z^c Omega_cb du^b."""
    F = data.F
    n = F.n
    result = Form.zero(F.splitting)
    for gamma in range(F.m):
        z = Z.parts[n + gamma]
        if z.is_zero():
            continue
        for beta in range(F.m):
            coeff = data.matrix[gamma][beta]
            if not coeff.is_zero():
                result = result + (z * coeff) * Form.generator(F.splitting, n + beta)
    return result


def omega_pairing(data, w1, w2):
    """<w1|w2>_Omega = <w1|sharp w2>."""
    return evaluate_pairing(w1, [sharp(data, w2)])


def d1(data, lam):
    return d_component(lam, 1)


def _curvature_sharp_table(data):
    """
    E_i(du^c) = 2 sum R^i_ab P^bc du^a, as a table [i][c] of forms.

    The sum runs over both index orders of the antisymmetric R^i_ab, and the
    factor 2 is the one the ternary op Jacobiator fixes: arity-k brackets scale
    with the k-2 power of this normalization while the binary Jacobiator does not.
    """
    F = data.F
    n, m = F.n, F.m
    s = F.splitting
    table = []
    for i in range(n):
        row = []
        for gamma in range(m):
            total = Form.zero(s)
            for alpha in range(m):
                coeff = Polynomial.zero(F.chart.coords)
                for beta in range(m):
                    coeff = coeff + F.curvature_component(i, alpha, beta) * data.inverse[beta][gamma]
                if not coeff.is_zero():
                    total = total + Form.monomial(s, (n + alpha,), coeff * 2)
            row.append(total)
        table.append(row)
    return table


def curvature_sharp(data, lam, w):
    """(i_{R sharp} lambda)(mu du^c) = sum_i (i_{d/dx^i} lambda) mu E_i(du^c)."""
    F = data.F
    table = _curvature_sharp_table(data)
    result = Form.zero(F.splitting)
    for gamma, mu in _transverse_slots(data, w).items():
        for i in range(F.n):
            image = table[i][gamma]
            if image.is_zero():
                continue
            result = result + insertion(F.leaf_vector(i), lam) * mu * image
    return result


# ==========================================
# OP BRACKETS AND THE HAMILTONIAN TOWER
# ==========================================

def op_degree(lam):
    return lam.degree - 1


def op_bracket(data, *lams):
    """
    {l1} = dbar l1 and, for k >= 2,
    {l1..lk} = sum_{S_k} alpha <d1 l_s1 | (i_{R#} l_s2 ... i_{R#} l_s(k-1))(d1 l_sk)>_Omega.

    The sum runs over all of S_k, so the two orderings of a binary bracket both
    count: {u1, u2} = 2 for Omega = du1 ^ du2, and X_1(u1) = 2 V-bar_2 likewise.
    """
    k = len(lams)
    F = data.F
    if k == 0:
        raise ValueError("op bracket needs at least one argument")
    if any(is_null(lam) for lam in lams):
        return Form.zero(F.splitting)
    if k == 1:
        return dbar(F, lams[0])
    degrees = [op_degree(lam) for lam in lams]
    differentials = [d1(data, lam) for lam in lams]
    total = Form.zero(F.splitting)
    for sigma in iter_blocks(*([1] * k)):
        chain = differentials[sigma[-1]]
        for s in reversed(sigma[1:-1]):
            if chain.is_zero():
                break
            chain = curvature_sharp(data, lams[s], chain)
        if chain.is_zero() or differentials[sigma[0]].is_zero():
            continue
        total = total + omega_pairing(data, differentials[sigma[0]], chain) * koszul_sign(sigma, degrees)
    return total


class OpOracle(BracketOracle):
    """Leafwise forms with the homotopy Poisson brackets; arity is unbounded."""
    max_arity = None

    def __init__(self, data):
        self.data = data

    def degree(self, v):
        return op_degree(v)

    def bracket(self, *args):
        return op_bracket(self.data, *args)


def hamiltonian_tower(data, lams):
    """X_k(l1..lk) = sum_b z^b V-bar_b with z^b = -(-1)^X {l1..lk, u^b}^op."""
    F = data.F
    lams = list(lams)
    if not lams:
        raise ValueError("Hamiltonian tower needs at least one argument")
    if any(is_null(lam) for lam in lams):
        return FormVector.zero(F.splitting)
    n = F.n
    shifted = sum(op_degree(lam) for lam in lams)
    sign = -parity_sign(shifted)
    parts = [None] * n
    for beta in range(F.m):
        coordinate = Form.function(F.splitting, Polynomial.variable(F.chart.coords, n + beta))
        parts.append(op_bracket(data, *lams, coordinate) * sign)
    return FormVector(F.splitting, parts)


def hamiltonian_family(data):
    return MorphismFamily(lambda *args: hamiltonian_tower(data, args), label="X")


# ==========================================
# IDENTITY CHECKS (residuals must vanish)
# ==========================================

def sharp_flat_residuals(data, w, Z):
    return {
        "flat(sharp w) = w": flat(data, sharp(data, w)) - w,
        "sharp(flat Z) = Z": sharp(data, flat(data, Z)) - Z,
    }


def hamiltonian_action_residual(data, lams, f):
    """{X_k(l..)|f} = {l.., f}^op for a function f."""
    X = hamiltonian_tower(data, lams)
    return anchor(data.F, X, f) - op_bracket(data, *lams, f)


def lemma22_residual(data, lam, k, lam_prime):
    """
    {Z_k|l'} = {l^k, l'}^op + 1/2 sum_{i+j=k, i,j>0} C(k,i) i_{Z_i} i_{Z_j} i_R l'
    with Z_i = X_i(l, ..., l) for an even (odd form degree) l.

    Placing l' in slot r+2 of {l^k, l'} gives k! <d1 l|A^r (i_{R#} l') A^s d1 l> with
    A = i_{R#} l and r+s = k-2. X_i counts l' first and last, so Z_i = 2 i! sharp(A^(i-1) d1 l),
    and each such term is C(k,i)/4 times the R# normalization times i_{Z_i} i_{Z_j} i_R l'.
    """
    F = data.F
    towers = {i: hamiltonian_tower(data, [lam] * i) for i in range(1, k + 1)}
    lhs = anchor(F, towers[k], lam_prime)
    rhs = op_bracket(data, *([lam] * k), lam_prime)
    curved = insertion(F.curvature, lam_prime)
    for i in range(1, k):
        j = k - i
        term = insertion(towers[i], insertion(towers[j], curved))
        rhs = rhs + term * Fraction(comb(k, i), 2)
    return lhs - rhs


def kx_defect(data, lams):
    """K_X at the given leafwise forms: X as a morphism from the op algebra to the foliation algebra."""
    return morphism_defect(hamiltonian_family(data), OpOracle(data), FoliationOracle(data.F), *lams)


def strict_jacobi_residual(data, l1, l2, l3):
    """Binary-only Jacobiator; vanishes when the splitting is flat."""
    lams = (l1, l2, l3)
    degrees = [op_degree(lam) for lam in lams]
    total = Form.zero(data.F.splitting)
    for sigma in iter_blocks(2, 1):
        inner = op_bracket(data, lams[sigma[0]], lams[sigma[1]])
        if inner.is_zero():
            continue
        total = total + op_bracket(data, inner, lams[sigma[2]]) * koszul_sign(sigma, degrees)
    return total
