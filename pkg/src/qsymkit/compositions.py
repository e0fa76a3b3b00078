"""Compositions and partitions of nonnegative integers.

A composition is a tuple of positive integers; the empty tuple is the unique
composition of 0.  A partition is a composition with weakly decreasing parts.
Compositions of n correspond to subsets of [n-1] = {1, ..., n-1} via partial
sums, and refinement of compositions is reverse containment of those subsets.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import FrozenSet, Iterable, Iterator, List, Tuple

Composition = Tuple[int, ...]
Partition = Tuple[int, ...]


def as_composition(parts: Iterable[int]) -> Composition:
    """Validate and normalize a sequence of parts to a composition."""
    alpha = tuple(int(p) for p in parts)
    if any(p < 1 for p in alpha):
        raise ValueError(f"composition parts must be positive: {alpha}")
    return alpha


def comp_to_set(alpha: Composition) -> FrozenSet[int]:
    """Partial-sum set {a_1, a_1+a_2, ...} of alpha, a subset of [n-1]."""
    total = 0
    out = []
    for part in alpha[:-1]:
        total += part
        out.append(total)
    return frozenset(out)


def set_to_comp(subset: Iterable[int], n: int) -> Composition:
    """Inverse of comp_to_set: rebuild the composition of n with partial
    sums `subset`."""
    points = sorted(set(subset))
    if points and (points[0] < 1 or points[-1] > n - 1):
        raise ValueError(f"{points} is not a subset of [{n - 1}]")
    prev = 0
    parts = []
    for p in points:
        parts.append(p - prev)
        prev = p
    if n - prev > 0:
        parts.append(n - prev)
    elif n != prev:
        raise ValueError(f"cannot form a composition of {n} from {points}")
    return tuple(parts)


def refines(alpha: Composition, beta: Composition) -> bool:
    """True iff alpha refines beta (beta's partial sums occur among alpha's)."""
    if sum(alpha) != sum(beta):
        raise ValueError(f"degree mismatch: {alpha} vs {beta}")
    return comp_to_set(beta) <= comp_to_set(alpha)


def blocks(alpha: Composition) -> List[range]:
    """The intervals of [n] covered by the parts of alpha, in order."""
    out = []
    start = 1
    for part in alpha:
        out.append(range(start, start + part))
        start += part
    return out


def reverse(alpha: Composition) -> Composition:
    """Parts of alpha in reverse order."""
    return tuple(reversed(alpha))


def sort_to_partition(alpha: Composition) -> Partition:
    """The partition obtained by sorting the parts weakly decreasing."""
    return tuple(sorted(alpha, reverse=True))


def z_of(alpha: Composition) -> int:
    """The product i^{m_i} m_i! over part multiplicities m_i.

    Depends only on the multiset of parts, so compositions and partitions
    share this function.
    """
    out = 1
    for value in set(alpha):
        m = alpha.count(value)
        out *= value ** m
        for i in range(2, m + 1):
            out *= i
    return out


def pi_prefix(alpha: Composition) -> int:
    """Product of the partial sums a_1, a_1+a_2, ..., n."""
    out = 1
    total = 0
    for part in alpha:
        total += part
        out *= total
    return out


def split_by(alpha: Composition, beta: Composition) -> List[Composition]:
    """Split a refinement alpha of beta into the sub-compositions lying in
    each part of beta."""
    if not refines(alpha, beta):
        raise ValueError(f"{alpha} does not refine {beta}")
    out = []
    it = iter(alpha)
    for part in beta:
        piece = []
        total = 0
        while total < part:
            p = next(it)
            piece.append(p)
            total += p
        out.append(tuple(piece))
    return out


def pi_rel(alpha: Composition, beta: Composition) -> int:
    """Product of pi_prefix over the pieces of alpha inside each part of
    beta; requires alpha to refine beta."""
    out = 1
    for piece in split_by(alpha, beta):
        out *= pi_prefix(piece)
    return out


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of n, ordered by (length, lexicographic)."""
    if n == 0:
        yield ()
        return
    by_length: List[List[Composition]] = [[] for _ in range(n + 1)]
    for bits in itertools.chain.from_iterable(
        itertools.combinations(range(1, n), k) for k in range(n)
    ):
        alpha = set_to_comp(bits, n)
        by_length[len(alpha)].append(alpha)
    for bucket in by_length:
        for alpha in sorted(bucket):
            yield alpha


def coarsenings(alpha: Composition) -> Iterator[Composition]:
    """All compositions beta with alpha refining beta."""
    n = sum(alpha)
    points = sorted(comp_to_set(alpha))
    for k in range(len(points) + 1):
        for keep in itertools.combinations(points, k):
            yield set_to_comp(keep, n)


def refinements(beta: Composition) -> Iterator[Composition]:
    """All compositions alpha refining beta."""
    pieces = [list(compositions(part)) for part in beta]
    for choice in itertools.product(*pieces):
        yield tuple(itertools.chain.from_iterable(choice))


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n (weakly decreasing parts), ordered by
    (length, lexicographic)."""
    out = []

    def rec(remaining: int, maximum: int, prefix: List[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, maximum), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n if n else 1, [])
    out.sort(key=lambda lam: (len(lam), lam))
    yield from out


def rearrangements(lam: Partition) -> Iterator[Composition]:
    """All distinct compositions whose parts rearrange to lam."""
    seen = set()
    for perm in itertools.permutations(lam):
        if perm not in seen:
            seen.add(perm)
            yield perm


def gcd_of(alpha: Composition) -> int:
    """Greatest common divisor of the parts (0 for the empty composition)."""
    out = 0
    for part in alpha:
        out = gcd(out, part)
    return out
