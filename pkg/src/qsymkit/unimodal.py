"""Unimodal subsets relative to a composition, and consistent permutations.

For a composition alpha of n with partial-sum set Set(alpha), a subset S of
[n-1] is called alpha-unimodal when, inside every block of alpha, the elements
of S that are not block boundaries form a prefix of the block's interior.
Permutations whose descent set is alpha-unimodal restrict to unimodal words
(decreasing, then increasing) on every block.

The second half of the module deals with permutations consistent with a
refining pair alpha <= beta: every alpha-block subword has its maximum last,
and those maxima increase left to right inside each beta-block.  Such
permutations are exactly the value assignments that increase along a rooted
forest built from (alpha, beta), whose hook lengths multiply to
pi_rel(alpha, beta).

Subsets of [n-1] are handled as bitmasks internally (bit k-1 represents k),
which caps n at machine-word scale; n <= 30 is the practical envelope here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .compositions import (
    Composition,
    comp_to_set,
    compositions,
    pi_rel,
    refinements,
    refines,
    set_to_comp,
    split_by,
)

Permutation = Tuple[int, ...]


def mask_of(subset: Iterable[int]) -> int:
    """Bitmask of a set of positive integers (bit k-1 set for element k)."""
    mask = 0
    for k in subset:
        if k < 1:
            raise ValueError(f"subset elements must be >= 1, got {k}")
        mask |= 1 << (k - 1)
    return mask


def set_of(mask: int) -> FrozenSet[int]:
    """Inverse of mask_of."""
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return frozenset(out)


def _normalize(subset: Iterable[int] | int) -> int:
    return subset if isinstance(subset, int) else mask_of(subset)


def is_alpha_unimodal(subset: Iterable[int] | int, alpha: Composition) -> bool:
    """True iff `subset` (of [n-1]) is alpha-unimodal.

    Block boundaries (partial sums of alpha) may freely belong to the subset;
    the remaining hits inside each block must form a prefix of the block's
    interior positions.
    """
    mask = _normalize(subset)
    n = sum(alpha)
    if mask >> max(n - 1, 0):
        raise ValueError(f"subset is not contained in [{n - 1}]")
    start = 0
    for part in alpha:
        # interior positions of this block: start+1, ..., start+part-1
        seen_gap = False
        for k in range(start + 1, start + part):
            if mask >> (k - 1) & 1:
                if seen_gap:
                    return False
            else:
                seen_gap = True
        start += part
    return True


def enumerate_unimodal(alpha: Composition) -> List[FrozenSet[int]]:
    """All alpha-unimodal subsets of [n-1], sorted by (size, elements)."""
    out = [set_of(m) for m in _unimodal_masks(alpha)]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def _unimodal_masks(alpha: Composition) -> Iterator[int]:
    """Bitmasks of alpha-unimodal sets: a prefix choice per block interior,
    free boolean per interior block boundary."""
    n = sum(alpha)
    ell = len(alpha)
    prefix_choices: List[List[int]] = []
    start = 0
    for part in alpha:
        choices = []
        run = 0
        choices.append(run)
        for k in range(start + 1, start + part):
            run |= 1 << (k - 1)
            choices.append(run)
        prefix_choices.append(choices)
        start += part
    boundaries = [s for s in sorted(comp_to_set(alpha))]
    for prefixes in itertools.product(*prefix_choices):
        base = 0
        for p in prefixes:
            base |= p
        for picks in itertools.product((0, 1), repeat=max(ell - 1, 0)):
            mask = base
            for boundary, bit in zip(boundaries, picks):
                if bit:
                    mask |= 1 << (boundary - 1)
            yield mask


def count_unimodal(alpha: Composition) -> int:
    """Number of alpha-unimodal subsets: 2^(l-1) times the product of parts."""
    if not alpha:
        return 1
    out = 2 ** (len(alpha) - 1)
    for part in alpha:
        out *= part
    return out


def moebius_unimodal(alpha: Composition, subset: Iterable[int] | int) -> int:
    """Moebius function of the inclusion lattice of alpha-unimodal sets,
    evaluated between the empty set and `subset`."""
    mask = _normalize(subset)
    if not is_alpha_unimodal(mask, alpha):
        raise ValueError(f"{sorted(set_of(mask))} is not {alpha}-unimodal")
    n = sum(alpha)
    # boundaries, plus the position immediately after each boundary (or 0)
    allowed = mask_of(comp_to_set(alpha))
    if n >= 2:
        allowed |= 1  # position 1 follows the empty prefix
    for s in comp_to_set(alpha):
        if s + 1 <= n - 1:
            allowed |= 1 << s
    if mask & ~allowed:
        return 0
    return -1 if bin(mask).count("1") % 2 else 1


def enumerate_V(alpha: Composition) -> List[Composition]:
    """All compositions gamma of n such that Set(alpha) is gamma-unimodal."""
    n = sum(alpha)
    target = mask_of(comp_to_set(alpha))
    return [gamma for gamma in compositions(n) if is_alpha_unimodal(target, gamma)]


def count_V(alpha: Composition) -> int:
    """Closed-form size of enumerate_V: 3^m 2^(n-1-2m) with m the number of
    non-final parts exceeding 1."""
    n = sum(alpha)
    if n == 0:
        return 1
    m = sum(1 for part in alpha[:-1] if part > 1)
    return 3**m * 2 ** (n - 1 - 2 * m)


def v_sublattice_witness(
    alpha: Composition,
) -> Optional[Tuple[Composition, Composition, str]]:
    """Search for a witness that the compositions of enumerate_V do not form
    a sublattice of the refinement lattice (join = intersection of partial-sum
    sets, meet = union).  Returns (gamma, delta, operation) or None."""
    n = sum(alpha)
    members = {comp_to_set(gamma) for gamma in enumerate_V(alpha)}
    sets = sorted(members, key=lambda s: (len(s), sorted(s)))
    for a, b in itertools.combinations(sets, 2):
        if (a | b) not in members:
            return (set_to_comp(a, n), set_to_comp(b, n), "meet")
        if (a & b) not in members:
            return (set_to_comp(a, n), set_to_comp(b, n), "join")
    return None


def unimodal_pair_count(n: int) -> int:
    """Number of pairs (alpha of n, S alpha-unimodal)."""
    return sum(count_unimodal(alpha) for alpha in compositions(n))


def pair_gf_series(n_max: int) -> List[Dict[Tuple[int, int], int]]:
    """Coefficients of the generating function of (alpha, S) pairs.

    Entry n maps (j, l) to the number of pairs with alpha of n in l parts and
    S alpha-unimodal of size j.  Computed from the recursion
    F_1 = t, F_n = (1+q)(1+t) F_{n-1} - q F_{n-2}.
    """
    series: List[Dict[Tuple[int, int], int]] = [dict() for _ in range(n_max + 1)]
    if n_max >= 1:
        series[1] = {(0, 1): 1}
    for n in range(2, n_max + 1):
        out: Dict[Tuple[int, int], int] = {}
        # (1+q)(1+t) * F_{n-1}
        for (j, l), c in series[n - 1].items():
            for dj in (0, 1):
                for dl in (0, 1):
                    key = (j + dj, l + dl)
                    out[key] = out.get(key, 0) + c
        # - q * F_{n-2}
        for (j, l), c in series[n - 2].items():
            key = (j + 1, l)
            out[key] = out.get(key, 0) - c
        series[n] = {k: v for k, v in out.items() if v}
    return series


def pair_stats_enumeration(n: int) -> Dict[Tuple[int, int], int]:
    """The same statistics as pair_gf_series[n], by direct enumeration."""
    out: Dict[Tuple[int, int], int] = {}
    for alpha in compositions(n):
        for mask in _unimodal_masks(alpha):
            key = (bin(mask).count("1"), len(alpha))
            out[key] = out.get(key, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Consistent permutations and the hook forest
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HookForest:
    """Rooted forest on [n] whose increasing value assignments are the
    permutations consistent with a refining pair (alpha, beta).

    parent maps a vertex to its parent (roots are absent); hook gives the
    subtree size of each vertex.
    """

    n: int
    parent: Dict[int, int]
    hook: Dict[int, int]

    def hook_product(self) -> int:
        out = 1
        for v in range(1, self.n + 1):
            out *= self.hook[v]
        return out


def hook_forest(alpha: Composition, beta: Composition) -> HookForest:
    """Build the forest for a refining pair: block interiors hang below the
    block's last position, and consecutive block maxima chain upward inside
    each part of beta."""
    if not refines(alpha, beta):
        raise ValueError(f"{alpha} does not refine {beta}")
    n = sum(alpha)
    parent: Dict[int, int] = {}
    start = 0
    tops: List[int] = []  # last position of each alpha-block
    for part in alpha:
        top = start + part
        for v in range(start + 1, top):
            parent[v] = top
        tops.append(top)
        start = top
    # chain the alpha-block tops inside each beta-block
    idx = 0
    for piece in split_by(alpha, beta):
        for i in range(len(piece) - 1):
            parent[tops[idx + i]] = tops[idx + i + 1]
        idx += len(piece)
    children: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
    for v, p in parent.items():
        children[p].append(v)
    hook: Dict[int, int] = {}

    def size(v: int) -> int:
        out = 1
        for c in children[v]:
            out += size(c)
        hook[v] = out
        return out

    for v in range(1, n + 1):
        if v not in parent:
            size(v)
    return HookForest(n, parent, hook)


def is_consistent(sigma: Sequence[int], alpha: Composition, beta: Composition) -> bool:
    """True iff sigma is consistent with the refining pair (alpha, beta)."""
    if not refines(alpha, beta):
        raise ValueError(f"{alpha} does not refine {beta}")
    n = sum(alpha)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of [{n}]")
    start = 0
    maxima: List[int] = []
    for part in alpha:
        block = sigma[start : start + part]
        if max(block) != block[-1]:
            return False
        maxima.append(block[-1])
        start += part
    idx = 0
    for piece in split_by(alpha, beta):
        for i in range(len(piece) - 1):
            if maxima[idx + i] > maxima[idx + i + 1]:
                return False
        idx += len(piece)
    return True


def _forest_value_assignments(forest: HookForest) -> List[Permutation]:
    """All bijections from positions to values that increase along parent
    edges: each root eventually receives the maximum of its subtree.

    Values are assigned from n downward; a vertex becomes available once its
    parent has been assigned (larger) a value.
    """
    n = forest.n
    children: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
    for v, p in forest.parent.items():
        children[p].append(v)
    sigma = [0] * n
    out: List[Permutation] = []

    def rec(value: int, avail: List[int]) -> None:
        if value == 0:
            out.append(tuple(sigma))
            return
        for i, v in enumerate(avail):
            sigma[v - 1] = value
            rec(value - 1, avail[:i] + avail[i + 1 :] + children[v])
            sigma[v - 1] = 0

    roots = [v for v in range(1, n + 1) if v not in forest.parent]
    rec(n, roots)
    out.sort()
    return out


def enumerate_cons(alpha: Composition, beta: Composition) -> List[Permutation]:
    """All permutations consistent with (alpha, beta), sorted as words.

    Filters the symmetric group for n <= 8 and walks the hook forest beyond,
    where filtering stops being affordable.
    """
    n = sum(alpha)
    if n <= 8:
        return [
            sigma
            for sigma in itertools.permutations(range(1, n + 1))
            if is_consistent(sigma, alpha, beta)
        ]
    return _forest_value_assignments(hook_forest(alpha, beta))


def cons_count(alpha: Composition, beta: Composition) -> int:
    """|CONS(alpha, beta)| from the hook-length product."""
    n = sum(alpha)
    product = pi_rel(alpha, beta)
    total = math.factorial(n)
    if total % product:
        raise ArithmeticError(
            f"hook product {product} does not divide {n}! for {alpha}, {beta}"
        )
    return total // product


def cons_alternating_sum(beta: Composition, gamma: Composition) -> int:
    """Signed sum of |CONS(alpha, beta)| over refinements alpha of beta whose
    partial-sum set makes Set(gamma) alpha-unimodal; the sign alternates with
    |Set(gamma) difference Set(alpha)|."""
    if sum(beta) != sum(gamma):
        raise ValueError(f"degree mismatch: {beta} vs {gamma}")
    target = mask_of(comp_to_set(gamma))
    total = 0
    for alpha in refinements(beta):
        if not is_alpha_unimodal(target, alpha):
            continue
        missing = bin(target & ~mask_of(comp_to_set(alpha))).count("1")
        total += cons_count(alpha, beta) * (-1) ** missing
    return total
