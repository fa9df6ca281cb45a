"""
Change of complementary distribution
The canonical isomorphism between the LR-infinity[1] algebras of two splittings
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction
from math import factorial

from src.polynomials import ChartMismatchError
from src.forms import Form, bidegree_project, overline, reframe, relabel, transport
from src.fn_calculus import FormVector, insertion
from src.foliation import FoliationOracle, evaluate_pairing, shifted_degree
from src.linfty import (
    MorphismFamily, ProjectedOracle, morphism_defect, compose_morphisms,
    anchored_morphism_defect, is_null,
)
from src.signs import iter_blocks, block_permutations, koszul_sign, parity_sign, nondecreasing_compositions


class SplittingPair:
    """F carries the splitting V, F_prime the splitting V'; delta = P^C - P'^C in the V' presentation."""

    def __init__(self, F, F_prime):
        if F.chart != F_prime.chart:
            raise ChartMismatchError(f"Splittings live on different charts: {F.chart!r} vs {F_prime.chart!r}")
        self.F = F
        self.F_prime = F_prime
        V, W = F.splitting, F_prime.splitting
        n = F.n
        parts = []
        for i in range(n):
            part = Form.zero(W)
            for alpha in range(F.m):
                shift = W.v[alpha][i] - V.v[alpha][i]
                if not shift.is_zero():
                    part = part + Form.monomial(W, (n + alpha,), shift)
            parts.append(part)
        self.delta = FormVector(W, parts + [None] * F.m)

    @property
    def V(self):
        return self.F.splitting

    @property
    def V_prime(self):
        return self.F_prime.splitting

    def reversed(self):
        return SplittingPair(self.F_prime, self.F)

    def to_prime(self, a):
        return transport(a, self.V_prime)

    def from_prime(self, a):
        return transport(a, self.V)

    def source_oracle(self):
        """Brackets of the V' algebra with anchors read on Lambda-bar in the V presentation."""
        return ProjectedOracle(FoliationOracle(self.F_prime), self.to_prime, self.from_prime)

    def target_oracle(self):
        return FoliationOracle(self.F)

    def __repr__(self):
        return f"SplittingPair({self.V!r} -> {self.V_prime!r})"


def delta_residual(pair):
    """delta = P^C - P'^C, both written in the V' presentation."""
    return pair.F.pC.reframe(pair.V_prime) - pair.F_prime.pC - pair.delta


def delta_is_vertical(pair):
    """Form factors of delta are pure du, vector factors pure d/dx."""
    n = pair.F.n
    if any(not p.is_zero() for p in pair.delta.parts[n:]):
        return False
    return all(bidegree_project(p, r=1, s=0) == p for p in pair.delta.parts[:n])


def _iterate_delta(pair, a, times):
    result = a
    for _ in range(times):
        result = insertion(pair.delta, result)
    return result


# ==========================================
# psi, Psi, phi
# ==========================================

def psi(pair, k, lam):
    """psi_k(lambda): the k-transverse part of lambda written in the V' coframe."""
    if not overline(lam) == lam:
        raise ValueError(f"psi expects a leafwise form, got {lam.pretty()}")
    return bidegree_project(reframe(lam, pair.V_prime), r=k)


def Psi(pair, k, omega):
    """Psi_k(omega) for omega with exactly one transverse factor."""
    if any(omega.du_count(g) != 1 for g in omega.terms):
        raise ValueError(f"Psi expects one transverse factor per monomial, got {omega.pretty()}")
    return bidegree_project(reframe(omega, pair.V_prime), r=k)


def psi_closed(pair, k, lam):
    """i_delta^k lambda / k!."""
    return _iterate_delta(pair, relabel(lam, pair.V_prime), k) * Fraction(1, factorial(k))


def Psi_closed(pair, k, omega):
    """i_delta^(k-1) omega / (k-1)!."""
    if k == 0:
        return Form.zero(pair.V_prime)
    return _iterate_delta(pair, relabel(omega, pair.V_prime), k - 1) * Fraction(1, factorial(k - 1))


def phi(pair, ps, lam):
    """phi_k(p1..pk|lambda) = (-1)^(lambda(p1+..+pk)) <psi_k lambda|p1..pk> back in Lambda-bar."""
    ps = list(ps)
    k = len(ps)
    if k == 0:
        return lam
    if lam.is_zero():
        return Form.zero(pair.V)
    sign = parity_sign(lam.degree * sum(shifted_degree(p) for p in ps))
    return pair.from_prime(evaluate_pairing(psi(pair, k, lam), ps)) * sign


def phi_closed(pair, ps, lam):
    """(-1)^(k + k*k(k-1)/2) / k! * idbar(i_p1 ... i_pk i_delta^k lambda)."""
    ps = list(ps)
    k = len(ps)
    if k == 0:
        return lam
    if lam.is_zero():
        return Form.zero(pair.V)
    value = _iterate_delta(pair, relabel(lam, pair.V_prime), k)
    for p in reversed(ps):
        value = insertion(p, value)
    sign = parity_sign(k + k * (k * (k - 1) // 2))
    return pair.from_prime(value) * (Fraction(sign, factorial(k)))


# ==========================================
# Phi
# ==========================================

def recursion_rhs(pair, omega, ps):
    """
    R_k(omega)(p) = <Psi_k omega|p> - sum_{i+j=k, i,j>0} sum_{S_(i,j)} alpha
                    <psi_j(<omega|Phi_i(p..)>)|p..>, read back in Lambda-bar.
    """
    ps = list(ps)
    k = len(ps)
    degrees = [shifted_degree(p) for p in ps]
    result = pair.from_prime(evaluate_pairing(Psi(pair, k, omega), ps))
    for i in range(1, k):
        j = k - i
        for sigma in iter_blocks(i, j):
            image = Phi(pair, [ps[s] for s in sigma[:i]])
            if is_null(image):
                continue
            inner = evaluate_pairing(omega, [image])
            if inner.is_zero():
                continue
            value = evaluate_pairing(psi(pair, j, inner), [ps[s] for s in sigma[i:]])
            result = result - pair.from_prime(value) * koszul_sign(sigma, degrees)
    return result


def Phi(pair, ps):
    """Phi_k(p1..pk) from the implicit recursion: <du^b|Phi_k> = R_k(du^b)."""
    ps = list(ps)
    k = len(ps)
    if k == 0:
        raise ValueError("Phi needs at least one argument")
    if any(is_null(p) for p in ps):
        return FormVector.zero(pair.V)
    if k == 1:
        return ps[0].transport(pair.V)
    n = pair.F.n
    sign = parity_sign(1 + sum(shifted_degree(p) for p in ps))
    parts = [None] * n
    for beta in range(pair.F.m):
        du = Form.generator(pair.V, n + beta)
        parts.append(recursion_rhs(pair, du, ps) * sign)
    return FormVector(pair.V, parts)


def delta_applied(pair, Z):
    return insertion(pair.delta, Z)


def Phi_closed(pair, ps):
    """
    idbar sum_{S_k} alpha i_{p_s1} i_{Dp_s2} ... i_{Dp_s(k-1)} Dp_sk with Dp = +i_delta p.

    delta = P^C - P'^C in the V' presentation, the negative of the difference
    taken the other way round, so the minus in DZ' = -i_delta Z' is absorbed here.
    """
    ps = list(ps)
    k = len(ps)
    if k == 1:
        return ps[0].transport(pair.V)
    degrees = [shifted_degree(p) for p in ps]
    total = FormVector.zero(pair.V_prime)
    for sigma in iter_blocks(*([1] * k)):
        value = delta_applied(pair, ps[sigma[-1]])
        for s in reversed(sigma[1:-1]):
            value = insertion(delta_applied(pair, ps[s]), value)
        value = insertion(ps[sigma[0]], value)
        total = total + value * koszul_sign(sigma, degrees)
    return total.transport(pair.V)


def Phi_equal_arguments(pair, Z, k):
    """k! idbar(i_Z i_DZ ... DZ) for an even Z repeated k times."""
    DZ = delta_applied(pair, Z)
    value = DZ
    for _ in range(k - 2):
        value = insertion(DZ, value)
    value = insertion(Z, value)
    return value.transport(pair.V) * factorial(k)


def phi_family(pair):
    return MorphismFamily(lambda *args: phi(pair, args[:-1], args[-1]), label="phi")


def Phi_family(pair, closed=False):
    builder = Phi_closed if closed else Phi
    return MorphismFamily(lambda *args: builder(pair, list(args)), label="Phi")


# ==========================================
# IDENTITY CHECKS (residuals must vanish)
# ==========================================

def psi_residuals(pair, k, lam, omega):
    return {
        f"psi_{k} = i_delta^{k}/{k}!": psi(pair, k, lam) - psi_closed(pair, k, lam),
        f"Psi_{k} = i_delta^{k - 1}/{max(k - 1, 0)}!": Psi(pair, k, omega) - Psi_closed(pair, k, omega),
    }


def phi_residual(pair, ps, lam):
    return phi(pair, ps, lam) - phi_closed(pair, ps, lam)


def Phi_residual(pair, ps):
    return Phi(pair, ps) - Phi_closed(pair, ps)


def recursion_linearity_residual(pair, a, omega, ps):
    """R_k(a omega) = a R_k(omega) for leafwise a."""
    return recursion_rhs(pair, a * omega, ps) - a * recursion_rhs(pair, omega, ps)


def psi_expansion_residual(pair, omega, ps):
    """
    psi(omega)_k(p) against its expansion over T-permutations in terms of
    phi_l0 and omega evaluated on Phi blocks; omega has r transverse factors.
    """
    ps = list(ps)
    k = len(ps)
    r = omega.du_count(next(iter(omega.terms))) if omega.terms else 0
    w = omega.degree if omega.terms else 0
    degrees = [shifted_degree(p) for p in ps]
    lhs = pair.from_prime(evaluate_pairing(bidegree_project(reframe(omega, pair.V_prime), r=k), ps))
    rhs = Form.zero(pair.V)
    for l0 in range(0, k - r + 1):
        for sizes in nondecreasing_compositions(k - l0, r):
            for sigma in block_permutations(l0, *sizes):
                blocks = []
                position = l0
                for size in sizes:
                    blocks.append(Phi(pair, [ps[s] for s in sigma[position:position + size]]))
                    position += size
                inner = evaluate_pairing(omega, blocks)
                head = [ps[s] for s in sigma[:l0]]
                sign = koszul_sign(sigma, degrees) * parity_sign(w * sum(degrees[s] for s in sigma[:l0]))
                rhs = rhs + phi(pair, head, inner) * sign
    return lhs - rhs


def Phi_defect(pair, ps):
    """K_Phi at the given arguments: Phi as an L-infinity[1] morphism from the V' to the V algebra."""
    return morphism_defect(Phi_family(pair), pair.source_oracle(), pair.target_oracle(), *ps)


def anchored_defect(pair, ps, a):
    return anchored_morphism_defect(phi_family(pair), Phi_family(pair),
                                    pair.source_oracle(), pair.target_oracle(), ps, a)


def composite_residual(pair, ps):
    """(Phi_rev o Phi)_k minus the identity morphism at arity k."""
    composite = compose_morphisms(Phi_family(pair.reversed()), Phi_family(pair), degree=shifted_degree)
    value = composite(*ps)
    if is_null(value):
        value = FormVector.zero(pair.V_prime)
    return value - ps[0] if len(ps) == 1 else value
