"""
Structure-agnostic L-infinity[1] machinery
Jacobiators, module Jacobiators, decalage, morphism defects and composition
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from numbers import Number

from src.signs import (
    iter_blocks, strict_unshuffles, block_permutations, koszul_sign,
    decalage_sign, parity_sign, nondecreasing_compositions,
)


def is_null(x):
    """Zero element: None, the integer 0, or anything reporting is_zero()."""
    if x is None:
        return True
    if isinstance(x, Number):
        return x == 0
    return x.is_zero()


def _accumulate(total, value, sign):
    if is_null(value):
        return total
    term = value * sign
    return term if is_null(total) else total + term


class BracketOracle:
    """
    Graded-symmetric brackets {v1,...,vk} of an L-infinity[1] structure,
    optionally with anchors {q1,...,q_{k-1}|a} of an LR-infinity[1] structure.
    Brackets above max_arity vanish; None means no bound.
    """
    max_arity = None

    def degree(self, v):
        raise NotImplementedError

    def bracket(self, *args):
        raise NotImplementedError

    def anchor(self, *args):
        raise NotImplementedError(f"{type(self).__name__} has no anchors")

    def is_module(self, v):
        return False

    def arity_allowed(self, k):
        return k >= 1 and (self.max_arity is None or k <= self.max_arity)


class DirectSumOracle(BracketOracle):
    """
    Brackets on Q (+) A: anchors are the brackets with the module entry last,
    the result vanishes when more than one entry is from the module.
    """

    def __init__(self, base):
        self.base = base
        self.max_arity = base.max_arity

    def degree(self, v):
        return self.base.degree(v)

    def is_module(self, v):
        return self.base.is_module(v)

    def bracket(self, *args):
        if not self.arity_allowed(len(args)):
            return 0
        module_slots = [j for j, v in enumerate(args) if self.is_module(v)]
        if not module_slots:
            return self.base.bracket(*args)
        if len(module_slots) > 1:
            return 0
        j = module_slots[0]
        moved_past = sum(self.degree(v) for v in args[j + 1:])
        sign = parity_sign(self.degree(args[j]) * moved_past)
        value = self.base.anchor(*(args[:j] + args[j + 1:]), args[j])
        return 0 if is_null(value) else value * sign


class ProjectedOracle(BracketOracle):
    """Anchors of base read through a change of presentation of the module."""

    def __init__(self, base, to_base, from_base):
        self.base = base
        self.to_base = to_base
        self.from_base = from_base
        self.max_arity = base.max_arity

    def degree(self, v):
        return self.base.degree(v)

    def is_module(self, v):
        return self.base.is_module(v)

    def bracket(self, *args):
        return self.base.bracket(*args)

    def anchor(self, *args):
        value = self.base.anchor(*args[:-1], self.to_base(args[-1]))
        return 0 if is_null(value) else self.from_base(value)


class SkewOracle(BracketOracle):
    """L-infinity (skew) brackets obtained from L-infinity[1] ones by decalage."""

    def __init__(self, symmetric):
        self.symmetric = symmetric
        self.max_arity = symmetric.max_arity

    def degree(self, v):
        return self.symmetric.degree(v) + 1

    def bracket(self, *args):
        value = self.symmetric.bracket(*args)
        if is_null(value):
            return 0
        return value * decalage_sign([self.degree(v) for v in args])


class SymmetricOracle(BracketOracle):
    """L-infinity[1] brackets recovered from skew ones."""

    def __init__(self, skew):
        self.skew = skew
        self.max_arity = skew.max_arity

    def degree(self, v):
        return self.skew.degree(v) - 1

    def bracket(self, *args):
        value = self.skew.bracket(*args)
        if is_null(value):
            return 0
        return value * decalage_sign([self.skew.degree(v) for v in args])


def decalage_convert(oracle):
    """Switch between the symmetric and the skew flavor."""
    if isinstance(oracle, SkewOracle):
        return oracle.symmetric
    if isinstance(oracle, SymmetricOracle):
        return oracle.skew
    return SkewOracle(oracle)


def jacobiator(oracle, *args):
    """J^k = sum_{i+j=k} sum_{S_(i,j)} alpha {{v_s(1..i)}, v_s(i+1..k)}."""
    k = len(args)
    if k < 1:
        raise ValueError("Jacobiator needs at least one argument")
    degrees = [oracle.degree(v) for v in args]
    total = 0
    for i in range(1, k + 1):
        j = k - i
        if not (oracle.arity_allowed(i) and oracle.arity_allowed(j + 1)):
            continue
        for sigma in iter_blocks(i, j):
            inner = oracle.bracket(*[args[s] for s in sigma[:i]])
            if is_null(inner):
                continue
            outer = oracle.bracket(inner, *[args[s] for s in sigma[i:]])
            total = _accumulate(total, outer, koszul_sign(sigma, degrees))
    return total


def module_jacobiator(oracle, *args):
    """Jacobiator of the direct-sum extension; the module entry is usually last."""
    return jacobiator(DirectSumOracle(oracle), *args)


def skew_jacobiator(oracle, *args):
    """sum_{i+j=k} (-1)^(ij) sum_{S_(i,j)} chi [[v_s(1..i)], v_s(i+1..k)] with L-degrees."""
    k = len(args)
    degrees = [oracle.degree(v) for v in args]
    total = 0
    for i in range(1, k + 1):
        j = k - i
        if not (oracle.arity_allowed(i) and oracle.arity_allowed(j + 1)):
            continue
        for sigma in iter_blocks(i, j):
            inner = oracle.bracket(*[args[s] for s in sigma[:i]])
            if is_null(inner):
                continue
            outer = oracle.bracket(inner, *[args[s] for s in sigma[i:]])
            sign = koszul_sign(sigma, degrees, antisymmetric=True) * parity_sign(i * j)
            total = _accumulate(total, outer, sign)
    return total


class MorphismFamily:
    """
    Components f_k of an L-infinity[1] morphism, evaluated by arity.
    components(*args) returns f_len(args)(args); arities above max_arity vanish.
    """

    def __init__(self, components, max_arity=None, label="f"):
        self.components = components
        self.max_arity = max_arity
        self.label = label

    def __call__(self, *args):
        if self.max_arity is not None and len(args) > self.max_arity:
            return 0
        if any(is_null(v) for v in args):
            return 0
        return self.components(*args)

    @classmethod
    def identity(cls):
        return cls(lambda *args: args[0] if len(args) == 1 else 0, max_arity=1, label="id")


def _block_images(f, args, sigma, sizes):
    images = []
    position = 0
    for size in sizes:
        value = f(*[args[s] for s in sigma[position:position + size]])
        if is_null(value):
            return None
        images.append(value)
        position += size
    return images


def morphism_defect(f, source, target, *args):
    """
    K_f^k = sum_i sum_{S_(i,k-i)} alpha f_{k-i+1}({v..}, v..)
          - sum_l sum_{k1<=...<=kl} sum_{S^<} alpha {f_k1(..), ..., f_kl(..)}'.
    """
    k = len(args)
    degrees = [source.degree(v) for v in args]
    total = 0
    for i in range(1, k + 1):
        if not source.arity_allowed(i):
            continue
        for sigma in iter_blocks(i, k - i):
            inner = source.bracket(*[args[s] for s in sigma[:i]])
            if is_null(inner):
                continue
            value = f(inner, *[args[s] for s in sigma[i:]])
            total = _accumulate(total, value, koszul_sign(sigma, degrees))
    for sizes in nondecreasing_compositions(k):
        if not target.arity_allowed(len(sizes)):
            continue
        for sigma in strict_unshuffles(*sizes):
            images = _block_images(f, args, sigma, sizes)
            if images is None:
                continue
            value = target.bracket(*images)
            total = _accumulate(total, value, -koszul_sign(sigma, degrees))
    return total


def compose_morphisms(g, f, degree=None):
    """(g o f)_k = sum_l sum_{k1<=...<=kl} sum_{S^<} alpha g_l(f_k1(..), ..., f_kl(..))."""
    def components(*args):
        degrees = [degree(v) for v in args] if degree else [0] * len(args)
        total = 0
        for sizes in nondecreasing_compositions(len(args)):
            for sigma in strict_unshuffles(*sizes):
                images = _block_images(f, args, sigma, sizes)
                if images is None:
                    continue
                total = _accumulate(total, g(*images), koszul_sign(sigma, degrees))
        return total
    return MorphismFamily(components, label=f"{g.label}o{f.label}")


def anchored_morphism_defect(phi, Phi, source, target, ps, a):
    """
    Left minus right side of the anchored morphism condition for
    phi: (A, source) -> (A, target) with Q-part Phi and phi() = id.
    Anchors take their module argument last.
    """
    ps = tuple(ps)
    k = len(ps)
    degrees = [source.degree(p) for p in ps]
    lhs = 0
    max_m = k if target.max_arity is None else min(k, target.max_arity - 1)
    for m in range(0, max_m + 1):
        for l0 in range(0, k - m + 1):
            for sizes in nondecreasing_compositions(k - l0, m):
                for sigma in block_permutations(l0, *sizes):
                    images = _block_images(Phi, ps, sigma[l0:], sizes)
                    if images is None:
                        continue
                    inner = target.anchor(*images, a)
                    if is_null(inner):
                        continue
                    value = phi(*[ps[s] for s in sigma[:l0]], inner)
                    sign = koszul_sign(sigma, degrees) * parity_sign(sum(degrees[s] for s in sigma[:l0]))
                    lhs = _accumulate(lhs, value, sign)
    rhs = 0
    for l in range(0, k + 1):
        if not source.arity_allowed(l + 1):
            continue
        for sigma in iter_blocks(l, k - l):
            inner = phi(*[ps[s] for s in sigma[l:]], a)
            if is_null(inner):
                continue
            value = source.anchor(*[ps[s] for s in sigma[:l]], inner)
            rhs = _accumulate(rhs, value, koszul_sign(sigma, degrees))
    for l in range(1, k + 1):
        if not source.arity_allowed(l):
            continue
        for sigma in iter_blocks(l, k - l):
            inner = source.bracket(*[ps[s] for s in sigma[:l]])
            if is_null(inner):
                continue
            value = phi(inner, *[ps[s] for s in sigma[l:]], a)
            rhs = _accumulate(rhs, value, -koszul_sign(sigma, degrees))
    if is_null(rhs):
        return lhs
    return rhs * -1 if is_null(lhs) else lhs - rhs
