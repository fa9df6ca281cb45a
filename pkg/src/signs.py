"""
Unshuffles, restricted block permutations and Koszul signs
Permutations are 0-based tuples: position j holds the index sigma(j)
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from itertools import combinations
from math import factorial

EAGER_LIMIT = 8


def multinomial(*blocks):
    result = factorial(sum(blocks))
    for k in blocks:
        result //= factorial(k)
    return result


def _iter_blocks(blocks, pool=None):
    """Permutations increasing inside consecutive blocks (zero-size blocks allowed)."""
    if pool is None:
        pool = tuple(range(sum(blocks)))
    if not blocks:
        yield ()
        return
    head, rest = blocks[0], blocks[1:]
    for chosen in combinations(pool, head):
        remaining = tuple(i for i in pool if i not in chosen)
        for tail in _iter_blocks(rest, remaining):
            yield chosen + tail


def iter_blocks(*sizes):
    """Like unshuffles, but zero-size blocks are allowed."""
    if any(k < 0 for k in sizes):
        raise ValueError(f"Block sizes must be non-negative, got {list(sizes)}")
    return _iter_blocks(sizes)


def _check_positive(blocks):
    if not blocks:
        raise ValueError("At least one block is required")
    bad = [k for k in blocks if k <= 0]
    if bad:
        raise ValueError(f"Block sizes must be positive, got {list(blocks)}")


def iter_unshuffles(*blocks):
    _check_positive(blocks)
    yield from _iter_blocks(blocks)


def unshuffles(*blocks):
    """(k1,...,kl)-unshuffles in lexicographic order."""
    _check_positive(blocks)
    if sum(blocks) > EAGER_LIMIT:
        return iter_unshuffles(*blocks)
    return list(_iter_blocks(blocks))


def _leads_increase(sigma, blocks, first):
    """Lead entries of equal-size adjacent blocks (from index first on) increase."""
    starts = []
    position = 0
    for size in blocks:
        starts.append(position)
        position += size
    for b in range(first, len(blocks) - 1):
        if blocks[b] == blocks[b + 1] and blocks[b] > 0:
            if sigma[starts[b]] > sigma[starts[b + 1]]:
                return False
    return True


def iter_strict_unshuffles(*blocks):
    _check_positive(blocks)
    if list(blocks) != sorted(blocks):
        raise ValueError(f"Blocks must be sorted ascending, got {list(blocks)}")
    for sigma in _iter_blocks(blocks):
        if _leads_increase(sigma, blocks, 0):
            yield sigma


def strict_unshuffles(*blocks):
    """The set S^< of unshuffles with increasing leads on equal blocks."""
    return list(iter_strict_unshuffles(*blocks))


def iter_block_permutations(l0, *blocks):
    if any(k < 0 for k in (l0,) + blocks):
        raise ValueError("Block sizes must be non-negative")
    if list(blocks) != sorted(blocks):
        raise ValueError(f"Later blocks must be sorted ascending, got {list(blocks)}")
    sizes = (l0,) + tuple(blocks)
    for sigma in _iter_blocks(sizes):
        if _leads_increase(sigma, sizes, 1):
            yield sigma


def block_permutations(l0, *blocks):
    """The set T_{l0|l1,...,lr}: the l0 block is free, later equal blocks ordered by lead."""
    return list(iter_block_permutations(l0, *blocks))


def count_strict_unshuffles(*blocks):
    return len(strict_unshuffles(*blocks))


def count_block_permutations(l0, *blocks):
    return len(block_permutations(l0, *blocks))


def koszul_sign(sigma, degrees, antisymmetric=False):
    """
    alpha(sigma, v) for the symmetric flavor, chi(sigma, v) = sgn(sigma) alpha(sigma, v)
    for the antisymmetric one. degrees are indexed by the original positions.
    """
    if len(sigma) != len(degrees):
        raise ValueError(f"Permutation of length {len(sigma)} does not match {len(degrees)} degrees")
    exponent = 0
    for a in range(len(sigma)):
        for b in range(a + 1, len(sigma)):
            if sigma[a] > sigma[b]:
                exponent += degrees[sigma[a]] * degrees[sigma[b]]
                if antisymmetric:
                    exponent += 1
    return -1 if exponent % 2 else 1


def compose(sigma, tau):
    """(sigma o tau)(j) = sigma(tau(j))."""
    return tuple(sigma[t] for t in tau)


def inverse(sigma):
    result = [0] * len(sigma)
    for position, image in enumerate(sigma):
        result[image] = position
    return tuple(result)


def permute(items, sigma):
    return tuple(items[s] for s in sigma)


def decalage_sign(degrees):
    """(-1)^((k-1)v1 + (k-2)v2 + ... + v_{k-1})."""
    k = len(degrees)
    if k < 1:
        raise ValueError("decalage_sign needs at least one degree")
    exponent = sum((k - 1 - j) * v for j, v in enumerate(degrees))
    return -1 if exponent % 2 else 1


def parity_sign(exponent):
    return -1 if exponent % 2 else 1


def nondecreasing_compositions(total, parts=None):
    """Tuples k1 <= ... <= kl of positive integers summing to total."""
    def build(remaining, minimum, count):
        if remaining == 0:
            if count is None or count == 0:
                yield ()
            return
        if count == 0:
            return
        for k in range(minimum, remaining + 1):
            for rest in build(remaining - k, k, None if count is None else count - 1):
                yield (k,) + rest
    if total == 0:
        return [()] if parts in (None, 0) else []
    return list(build(total, 1, parts))
