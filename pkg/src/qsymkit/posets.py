"""Finite labeled posets and directed graphs.

A poset on vertices 0..n-1 is stored as its full reflexive-transitive order
relation, a boolean closure matrix ``leq`` with ``leq[x][y]`` meaning
x <= y.  Vertices carry a bijective labeling ``labels`` with values in 1..n;
the labeling is *natural* when it is order-preserving.  Constructors accept
generating relations and compute the closure themselves, rejecting cycles.

On top of the data types the module provides the enumerative machinery used
by the rest of the package: linear extensions (as words of labels), their
block-unimodal subsets and the starred subsets with unique block minima, a
sign-reversing involution pairing off the non-starred extensions,
order-preserving surjections with unique-minimum fibers, the bijection
between starred extensions and starred surjections, chain congruences with
their closures and quotients, and isomorphism-class enumeration of small
posets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .compositions import Composition, as_composition, blocks as position_blocks
from .unimodal import HookForest, is_alpha_unimodal

Matrix = Tuple[Tuple[bool, ...], ...]


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class LabeledPoset:
    """A finite poset together with a bijective labeling of its vertices.

    leq is the full order relation including the diagonal; labels[x] is the
    label of vertex x, a value in 1..n.  The labeling need not respect the
    order; use is_natural() to test whether it does.
    """

    n: int
    leq: Matrix
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if n < 0:
            raise ValueError(f"element count must be nonnegative, got {n}")
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise ValueError(f"order relation must be an {n}x{n} matrix")
        for x in range(n):
            if not self.leq[x][x]:
                raise ValueError(f"order relation is not reflexive at {x}")
        for x in range(n):
            for y in range(n):
                if x != y and self.leq[x][y] and self.leq[y][x]:
                    raise ValueError(
                        f"order relation has a cycle through {x} and {y}"
                    )
                if self.leq[x][y]:
                    for z in range(n):
                        if self.leq[y][z] and not self.leq[x][z]:
                            raise ValueError(
                                f"order relation is not transitive at "
                                f"({x}, {y}, {z})"
                            )
        if sorted(self.labels) != list(range(1, n + 1)):
            raise ValueError(f"labels must be a bijection onto 1..{n}")

    def less(self, x: int, y: int) -> bool:
        """Strict order comparison of two vertices."""
        return x != y and self.leq[x][y]

    def is_natural(self) -> bool:
        """Whether the labeling is order-preserving."""
        return all(
            self.labels[x] < self.labels[y]
            for x in range(self.n)
            for y in range(self.n)
            if self.less(x, y)
        )

    def covers(self) -> List[Tuple[int, int]]:
        """The cover pairs (x, y) with x < y and nothing strictly between."""
        out = []
        for x in range(self.n):
            for y in range(self.n):
                if self.less(x, y) and not any(
                    self.less(x, z) and self.less(z, y) for z in range(self.n)
                ):
                    out.append((x, y))
        return out

    def vertex_of_label(self, label: int) -> int:
        """The vertex carrying the given label."""
        return self.labels.index(label)

    def relabeled(self, labels: Sequence[int]) -> "LabeledPoset":
        """The same order with a different labeling."""
        return LabeledPoset(self.n, self.leq, tuple(labels))


@dataclass(frozen=True)
class DirectedGraph:
    """A directed multigraph without loops; parallel edges are repeated."""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range")


@dataclass(frozen=True)
class Equivalence:
    """A partition of the vertex set 0..n-1 into blocks."""

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = sorted(x for block in self.blocks for x in block)
        if seen != list(range(self.n)) or any(not block for block in self.blocks):
            raise ValueError(f"blocks must partition 0..{self.n - 1}")

    def block_of(self, x: int) -> Tuple[int, ...]:
        for block in self.blocks:
            if x in block:
                return block
        raise ValueError(f"vertex {x} out of range")

    def same(self, x: int, y: int) -> bool:
        return y in self.block_of(x)


def make_equivalence(n: int, blocks: Iterable[Iterable[int]]) -> Equivalence:
    """An equivalence with canonically sorted blocks."""
    normal = sorted(tuple(sorted(block)) for block in blocks)
    return Equivalence(n, tuple(normal))


def singletons(n: int) -> Equivalence:
    """The discrete equivalence on 0..n-1."""
    return make_equivalence(n, [[x] for x in range(n)])


@dataclass(frozen=True)
class Surjection:
    """A surjection from vertices onto 1..k, stored as the value tuple."""

    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        k = max(self.values, default=0)
        if sorted(set(self.values)) != list(range(1, k + 1)):
            raise ValueError("values must cover 1..k without gaps")

    def parts(self) -> int:
        return max(self.values, default=0)

    def fibers(self) -> List[FrozenSet[int]]:
        return [
            frozenset(x for x, v in enumerate(self.values) if v == i)
            for i in range(1, self.parts() + 1)
        ]

    def type(self) -> Composition:
        counts = [0] * self.parts()
        for v in self.values:
            counts[v - 1] += 1
        return tuple(counts)


# ---------------------------------------------------------------------------
# construction


def _closure(n: int, relations: Iterable[Tuple[int, int]]) -> Matrix:
    """Reflexive-transitive closure of generating relations; rejects cycles."""
    leq = [[x == y for y in range(n)] for x in range(n)]
    for x, y in relations:
        if not (0 <= x < n and 0 <= y < n):
            raise ValueError(f"relation ({x}, {y}) leaves the vertex range")
        leq[x][y] = True
    for z in range(n):
        for x in range(n):
            if leq[x][z]:
                row_z = leq[z]
                row_x = leq[x]
                for y in range(n):
                    if row_z[y]:
                        row_x[y] = True
    for x in range(n):
        for y in range(x + 1, n):
            if leq[x][y] and leq[y][x]:
                raise ValueError(f"relations contain a cycle through {x} and {y}")
    return tuple(tuple(row) for row in leq)


def natural_labels(leq: Matrix) -> Tuple[int, ...]:
    """The canonical natural labeling: repeatedly remove a minimal element
    of smallest vertex index and hand out 1, 2, ... in removal order."""
    n = len(leq)
    remaining = set(range(n))
    labels = [0] * n
    for k in range(1, n + 1):
        v = min(
            x
            for x in remaining
            if not any(y != x and leq[y][x] for y in remaining)
        )
        labels[v] = k
        remaining.remove(v)
    return tuple(labels)


def poset_from_relations(
    n: int,
    relations: Iterable[Tuple[int, int]],
    labels: Optional[Sequence[int]] = None,
) -> LabeledPoset:
    """A validated poset generated by x < y relations, canonically labeled
    unless a labeling is supplied."""
    leq = _closure(n, relations)
    if labels is None:
        labels = natural_labels(leq)
    return LabeledPoset(n, leq, tuple(labels))


def chain(n: int) -> LabeledPoset:
    """The total order 0 < 1 < ... < n-1."""
    return poset_from_relations(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> LabeledPoset:
    """n pairwise incomparable elements."""
    return poset_from_relations(n, [])


def disjoint_chains(lengths: Sequence[int]) -> LabeledPoset:
    """A disjoint union of chains of the given lengths."""
    relations = []
    start = 0
    for length in lengths:
        relations.extend((start + i, start + i + 1) for i in range(length - 1))
        start += length
    return poset_from_relations(start, relations)


def zigzag_path(s: Iterable[int], n: int) -> LabeledPoset:
    """The fence poset on v_1..v_n whose Hasse diagram is a path; step i is
    v_i > v_{i+1} when i is in s and v_i < v_{i+1} otherwise."""
    down = set(s)
    if not down <= set(range(1, n)):
        raise ValueError(f"step set {sorted(down)} must lie in 1..{n - 1}")
    relations = []
    for i in range(1, n):
        if i in down:
            relations.append((i, i - 1))
        else:
            relations.append((i - 1, i))
    return poset_from_relations(n, relations)


def zigzag_cycle(s: Iterable[int], n: int) -> LabeledPoset:
    """The fence poset on v_1..v_n whose Hasse diagram is a cycle; step n
    joins v_n and v_1.  The all-up and all-down step sets are rejected."""
    down = set(s)
    if not down <= set(range(1, n + 1)):
        raise ValueError(f"step set {sorted(down)} must lie in 1..{n}")
    if not down or len(down) == n:
        raise ValueError("monotone step sets do not give rise to partial orders")
    relations = []
    for i in range(1, n + 1):
        lo, hi = i - 1, i % n
        if i in down:
            relations.append((hi, lo))
        else:
            relations.append((lo, hi))
    return poset_from_relations(n, relations)


def complete_bipartite_poset(r: int, m: int) -> LabeledPoset:
    """r minimal elements all below m maximal elements; the Hasse diagram is
    the complete bipartite graph on r + m vertices."""
    relations = [(i, r + j) for i in range(r) for j in range(m)]
    return poset_from_relations(r + m, relations)


def basis_poset(
    n: int, bases: Iterable[Iterable[int]], base: Iterable[int]
) -> LabeledPoset:
    """The exchange poset of a matroid basis: e < e' when e lies in the
    chosen basis and swapping e for e' yields another basis."""
    basis_sets = {frozenset(b) for b in bases}
    chosen = frozenset(base)
    if chosen not in basis_sets:
        raise ValueError(f"{sorted(chosen)} is not one of the given bases")
    relations = [
        (e, f)
        for e in chosen
        for f in set(range(n)) - chosen
        if (chosen - {e}) | {f} in basis_sets
    ]
    return poset_from_relations(n, relations)


def orientation_closure(graph: DirectedGraph) -> LabeledPoset:
    """The poset obtained from an acyclic orientation by transitive closure
    of its directed edges; raises on a directed cycle."""
    return poset_from_relations(graph.n, set(graph.edges))


def graph_is_acyclic(graph: DirectedGraph) -> bool:
    """Whether the directed graph has no directed cycle."""
    try:
        _closure(graph.n, set(graph.edges))
    except ValueError:
        return False
    return True


def direct_sum(p: LabeledPoset, q: LabeledPoset) -> LabeledPoset:
    """Disjoint union of two posets, canonically relabeled."""
    relations = [(x, y) for x in range(p.n) for y in range(p.n) if p.less(x, y)]
    relations += [
        (p.n + x, p.n + y) for x in range(q.n) for y in range(q.n) if q.less(x, y)
    ]
    return poset_from_relations(p.n + q.n, relations)


def ordinal_sum(p: LabeledPoset, q: LabeledPoset) -> LabeledPoset:
    """Disjoint union with every element of the first poset below every
    element of the second, canonically relabeled."""
    base = direct_sum(p, q)
    relations = [(x, y) for x in range(base.n) for y in range(base.n) if base.less(x, y)]
    relations += [(x, p.n + y) for x in range(p.n) for y in range(q.n)]
    return poset_from_relations(base.n, relations)


def forest_poset(forest: HookForest) -> LabeledPoset:
    """The poset of a rooted forest with children below their parents."""
    relations = [(child - 1, parent - 1) for child, parent in forest.parent.items()]
    return poset_from_relations(forest.n, relations)


def path_graph(n: int) -> DirectedGraph:
    """The path with edges i -> i+1."""
    return DirectedGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> DirectedGraph:
    """The cycle with edges i -> i+1 and n-1 -> 0."""
    if n < 2:
        raise ValueError(f"a cycle needs at least 2 vertices, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
    return DirectedGraph(n, tuple(edges))


def complete_graph(n: int) -> DirectedGraph:
    """The complete graph with edges i -> j for i < j."""
    return DirectedGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


_CONSTRUCTORS = {
    "chain": chain,
    "antichain": antichain,
    "disjoint_chains": disjoint_chains,
    "zigzag_path": zigzag_path,
    "zigzag_cycle": zigzag_cycle,
    "complete_bipartite": complete_bipartite_poset,
    "basis_poset": basis_poset,
    "orientation_closure": orientation_closure,
    "direct_sum": direct_sum,
    "ordinal_sum": ordinal_sum,
    "path_graph": path_graph,
    "cycle_graph": cycle_graph,
    "complete_graph": complete_graph,
}


def construct(kind: str, *args, **kwargs):
    """Dispatch to a named constructor; returns a poset or a graph."""
    try:
        builder = _CONSTRUCTORS[kind]
    except KeyError:
        raise ValueError(
            f"unknown kind {kind!r}; choose from {sorted(_CONSTRUCTORS)}"
        ) from None
    return builder(*args, **kwargs)


# ---------------------------------------------------------------------------
# linear extensions and permutation statistics


@lru_cache(maxsize=None)
def _vertex_orders(leq: Matrix) -> Tuple[Tuple[int, ...], ...]:
    """All linear orders of the vertices extending the poset, produced by
    backtracking over minimal elements in increasing vertex order."""
    n = len(leq)
    orders: List[Tuple[int, ...]] = []
    prefix: List[int] = []

    def extend(remaining: List[int]) -> None:
        if not remaining:
            orders.append(tuple(prefix))
            return
        for v in remaining:
            if not any(u != v and leq[u][v] for u in remaining):
                prefix.append(v)
                extend([u for u in remaining if u != v])
                prefix.pop()

    extend(list(range(n)))
    return tuple(orders)


def linear_extensions(p: LabeledPoset) -> List[Tuple[int, ...]]:
    """The label words of all linear extensions of the poset."""
    return [
        tuple(p.labels[v] for v in order) for order in _vertex_orders(p.leq)
    ]


def natural_labelings(p: LabeledPoset) -> List[Tuple[int, ...]]:
    """All order-preserving labelings, one per linear extension."""
    out = []
    for order in _vertex_orders(p.leq):
        labels = [0] * p.n
        for position, v in enumerate(order, start=1):
            labels[v] = position
        out.append(tuple(labels))
    return out


def _check_permutation(sigma: Sequence[int]) -> Tuple[int, ...]:
    word = tuple(sigma)
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ValueError(f"{word} is not a permutation of 1..{len(word)}")
    return word


def descent_set(sigma: Sequence[int]) -> FrozenSet[int]:
    """The positions i with sigma_i > sigma_{i+1}."""
    word = _check_permutation(sigma)
    return frozenset(
        i for i in range(1, len(word)) if word[i - 1] > word[i]
    )


def perm_stats(sigma: Sequence[int]) -> Dict[str, object]:
    """Descent and exceedance statistics of a permutation.

    DEX is the descent set of the word obtained by barring the letters at
    exceedance positions, with barred letters ordered below all unbarred
    ones.
    """
    word = _check_permutation(sigma)
    n = len(word)
    des = descent_set(word)
    exc = frozenset(i for i in range(1, n) if word[i - 1] > i)
    keys = [(0, word[i - 1]) if i in exc else (1, word[i - 1]) for i in range(1, n + 1)]
    dex = frozenset(i for i in range(1, n) if keys[i - 1] > keys[i])
    return {
        "DES": des,
        "des": len(des),
        "EXC": exc,
        "exc": len(exc),
        "DEX": dex,
    }


# ---------------------------------------------------------------------------
# block-unimodal linear extensions and the sign-reversing involution


def _block_vertices(
    p: LabeledPoset, sigma: Sequence[int], alpha: Composition
) -> List[FrozenSet[int]]:
    """The vertex sets carrying the labels of each block of the word."""
    return [
        frozenset(p.vertex_of_label(sigma[i - 1]) for i in block)
        for block in position_blocks(alpha)
    ]


def minimal_vertices(p: LabeledPoset, subset: Iterable[int]) -> List[int]:
    """The minimal vertices of an induced subposet, in vertex order."""
    sub = set(subset)
    return sorted(
        x for x in sub if not any(y != x and p.leq[y][x] for y in sub)
    )


def unique_minimum(p: LabeledPoset, subset: Iterable[int]) -> Optional[int]:
    """The unique minimal vertex of an induced subposet, if there is one."""
    mins = minimal_vertices(p, subset)
    return mins[0] if len(mins) == 1 else None


def l_alpha(
    p: LabeledPoset, alpha: Composition
) -> List[Tuple[int, ...]]:
    """The linear extensions whose descent set is block-unimodal."""
    alpha = as_composition(alpha)
    if sum(alpha) != p.n:
        raise ValueError(f"composition {alpha} does not have size {p.n}")
    return [
        sigma
        for sigma in linear_extensions(p)
        if is_alpha_unimodal(descent_set(sigma), alpha)
    ]


def l_star_alpha(
    p: LabeledPoset, alpha: Composition
) -> List[Tuple[int, ...]]:
    """The block-unimodal linear extensions whose block vertex sets each
    have a unique minimal element; requires a natural labeling."""
    if not p.is_natural():
        raise ValueError("starred linear extensions require a natural labeling")
    alpha = as_composition(alpha)
    return [
        sigma
        for sigma in l_alpha(p, alpha)
        if all(
            unique_minimum(p, part) is not None
            for part in _block_vertices(p, sigma, alpha)
        )
    ]


def involution_phi(
    sigma: Sequence[int], alpha: Composition, p: LabeledPoset
) -> Tuple[int, ...]:
    """The sign-reversing involution on block-unimodal linear extensions
    that are not starred.

    Locates the first block whose vertex set has several minimal elements,
    takes the largest label M of those minima, and cyclically shifts the
    window of letters at most M inside the block, moving M from one end of
    the window to the other.  The image is again a block-unimodal linear
    extension, the number of descents outside the block boundaries changes
    by exactly one, and applying the map twice gives back the input.
    """
    if not p.is_natural():
        raise ValueError("the involution requires a natural labeling")
    word = _check_permutation(sigma)
    alpha = as_composition(alpha)
    if sum(alpha) != p.n:
        raise ValueError(f"composition {alpha} does not have size {p.n}")
    order = [p.vertex_of_label(value) for value in word]
    positions = {v: i for i, v in enumerate(order)}
    for x in range(p.n):
        for y in range(p.n):
            if p.less(x, y) and positions[x] > positions[y]:
                raise ValueError(f"{word} is not a linear extension")
    if not is_alpha_unimodal(descent_set(word), alpha):
        raise ValueError(f"{word} is not block-unimodal for {alpha}")

    for block, part in zip(_block_vertices(p, word, alpha), position_blocks(alpha)):
        minima = minimal_vertices(p, block)
        if len(minima) < 2:
            continue
        top = max(p.labels[v] for v in minima)
        window = [i for i in part if word[i - 1] <= top]
        j, m = window[0], window[-1]
        if window != list(range(j, m + 1)) or j == m:
            raise AssertionError(f"letters at most {top} are not a window in {word}")
        new = list(word)
        if word[j - 1] == top:
            new[j - 1 : m - 1] = word[j:m]
            new[m - 1] = top
        elif word[m - 1] == top:
            new[j:m] = word[j - 1 : m - 1]
            new[j - 1] = top
        else:
            raise AssertionError(f"label {top} is not at a window end in {word}")
        return tuple(new)
    raise ValueError(f"{word} has unique block minima already")


# ---------------------------------------------------------------------------
# order-preserving surjections


def order_preserving(p: LabeledPoset, f: Surjection) -> bool:
    """Whether the surjection respects the order of the poset."""
    return all(
        f.values[x] <= f.values[y]
        for x in range(p.n)
        for y in range(p.n)
        if p.less(x, y)
    )


@lru_cache(maxsize=None)
def _surjections_by_type(
    leq: Matrix,
) -> Dict[Composition, List[Tuple[int, ...]]]:
    """All order-preserving surjections onto initial segments, grouped by
    fiber-size type.  The fiber of 1 is always an order ideal of what
    remains, so the enumeration peels nonempty ideals."""
    n = len(leq)
    out: Dict[Composition, List[Tuple[int, ...]]] = {}
    values = [0] * n

    def ideals(remaining: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        found = []
        for size in range(1, len(remaining) + 1):
            for subset in itertools.combinations(remaining, size):
                chosen = set(subset)
                if all(
                    x in chosen
                    for y in subset
                    for x in remaining
                    if x != y and leq[x][y]
                ):
                    found.append(subset)
        return found

    def peel(remaining: Tuple[int, ...], level: int, shape: Tuple[int, ...]) -> None:
        if not remaining:
            out.setdefault(shape, []).append(tuple(values))
            return
        for ideal in ideals(remaining):
            for x in ideal:
                values[x] = level
            rest = tuple(x for x in remaining if x not in set(ideal))
            peel(rest, level + 1, shape + (len(ideal),))

    peel(tuple(range(n)), 1, ())
    return out


def surjections(p: LabeledPoset, alpha: Composition) -> List[Surjection]:
    """The order-preserving surjections with fiber sizes alpha."""
    alpha = as_composition(alpha)
    if sum(alpha) != p.n:
        raise ValueError(f"composition {alpha} does not have size {p.n}")
    grouped = _surjections_by_type(p.leq)
    return [Surjection(values) for values in grouped.get(alpha, [])]


def star_surjections(p: LabeledPoset, alpha: Composition) -> List[Surjection]:
    """The order-preserving surjections of type alpha each of whose fibers
    has a unique minimal element."""
    return [
        f
        for f in surjections(p, alpha)
        if all(unique_minimum(p, fiber) is not None for fiber in f.fibers())
    ]


def sigma_to_f(
    sigma: Sequence[int], alpha: Composition, p: LabeledPoset
) -> Surjection:
    """The starred surjection whose fibers are the block vertex sets of a
    starred linear extension."""
    alpha = as_composition(alpha)
    word = _check_permutation(sigma)
    if word not in set(l_star_alpha(p, alpha)):
        raise ValueError(f"{word} is not a starred linear extension for {alpha}")
    values = [0] * p.n
    for i, block in enumerate(_block_vertices(p, word, alpha), start=1):
        for v in block:
            values[v] = i
    return Surjection(tuple(values))


def f_to_sigma(f: Surjection, p: LabeledPoset) -> Tuple[int, ...]:
    """The starred linear extension that lists the labels of each fiber in
    increasing order, fiber by fiber."""
    if not p.is_natural():
        raise ValueError("the inverse bijection requires a natural labeling")
    if not order_preserving(p, f):
        raise ValueError("the surjection does not respect the order")
    fibers = f.fibers()
    if any(unique_minimum(p, fiber) is None for fiber in fibers):
        raise ValueError("every fiber must have a unique minimal element")
    word: List[int] = []
    for fiber in fibers:
        word.extend(sorted(p.labels[v] for v in fiber))
    return tuple(word)


# ---------------------------------------------------------------------------
# chain congruences and quotients


def is_chain_congruence(p: LabeledPoset, e: Equivalence) -> bool:
    """Whether every block is a chain and inequivalent comparable elements
    have their whole blocks comparable."""
    for block in e.blocks:
        for x, y in itertools.combinations(block, 2):
            if not (p.leq[x][y] or p.leq[y][x]):
                return False
    for x in range(p.n):
        for y in range(p.n):
            if p.less(x, y) and not e.same(x, y):
                top = max(e.block_of(x), key=lambda v: _chain_height(p, v))
                bottom = min(e.block_of(y), key=lambda v: _chain_height(p, v))
                if not p.less(top, bottom):
                    return False
    return True


def _chain_height(p: LabeledPoset, v: int) -> int:
    """The number of elements below a vertex; orders the members of a
    chain."""
    return sum(1 for u in range(p.n) if p.leq[u][v])


def chain_congruence_closure(
    p: LabeledPoset, e: Equivalence
) -> Tuple[LabeledPoset, Equivalence]:
    """The coarsening of an arbitrary equivalence to a chain congruence on
    an enlarged order.

    Walks that alternate order steps and equivalence jumps define a
    reachability relation; mutually reachable vertices are merged, blocks
    are ordered internally by the original labels, and distinct blocks are
    ordered by reachability.  The new poset is returned with a canonical
    natural labeling.
    """
    n = p.n
    reach = [[p.leq[x][y] for y in range(n)] for x in range(n)]
    for block in e.blocks:
        for x in block:
            for y in block:
                reach[x][y] = True
    for z in range(n):
        for x in range(n):
            if reach[x][z]:
                row_z = reach[z]
                row_x = reach[x]
                for y in range(n):
                    if row_z[y]:
                        row_x[y] = True
    closed = make_equivalence(
        n,
        _mutual_reach_blocks(n, reach),
    )
    leq = tuple(
        tuple(
            reach[x][y] and (not reach[y][x] or p.labels[x] <= p.labels[y])
            for y in range(n)
        )
        for x in range(n)
    )
    new_poset = LabeledPoset(n, leq, natural_labels(leq))
    if not is_chain_congruence(new_poset, closed):
        raise AssertionError("closure failed to produce a chain congruence")
    return new_poset, closed


def _mutual_reach_blocks(n: int, reach: List[List[bool]]) -> List[List[int]]:
    blocks: List[List[int]] = []
    assigned = [False] * n
    for x in range(n):
        if assigned[x]:
            continue
        block = [y for y in range(n) if reach[x][y] and reach[y][x]]
        for y in block:
            assigned[y] = True
        blocks.append(block)
    return blocks


def quotient(
    p: LabeledPoset, e: Equivalence
) -> Tuple[LabeledPoset, Tuple[int, ...]]:
    """The poset of blocks of a chain congruence, together with the block
    sizes as weights."""
    if not is_chain_congruence(p, e):
        raise ValueError("the equivalence is not a chain congruence")
    blocks = sorted(e.blocks, key=min)
    relations = [
        (i, j)
        for i, lower in enumerate(blocks)
        for j, upper in enumerate(blocks)
        if i != j and any(p.less(x, y) for x in lower for y in upper)
    ]
    result = poset_from_relations(len(blocks), relations)
    return result, tuple(len(block) for block in blocks)


# ---------------------------------------------------------------------------
# isomorphism and enumeration of small posets


def _row_masks(leq: Matrix) -> Tuple[int, ...]:
    masks = []
    for row in leq:
        mask = 0
        for j, flag in enumerate(row):
            if flag:
                mask |= 1 << j
        masks.append(mask)
    return tuple(masks)


def canonical_form(p: LabeledPoset) -> Tuple[int, ...]:
    """A labeling-independent key: the minimum relation matrix over all
    relabelings that respect the (down-set size, up-set size) classes."""
    n = p.n
    masks = _row_masks(p.leq)
    down = [sum(1 for x in range(n) if p.leq[x][y]) for y in range(n)]
    up = [sum(1 for y in range(n) if p.leq[x][y]) for x in range(n)]
    classes: Dict[Tuple[int, int], List[int]] = {}
    for v in range(n):
        classes.setdefault((down[v], up[v]), []).append(v)
    keys = sorted(classes)
    start = 0
    targets: Dict[Tuple[int, int], List[int]] = {}
    for key in keys:
        size = len(classes[key])
        targets[key] = list(range(start, start + size))
        start += size
    best: Optional[Tuple[int, ...]] = None
    for assignment in itertools.product(
        *(itertools.permutations(targets[key]) for key in keys)
    ):
        relabel = [0] * n
        for key, images in zip(keys, assignment):
            for v, image in zip(classes[key], images):
                relabel[v] = image
        rows = [0] * n
        for x in range(n):
            mask = masks[x]
            new_mask = 0
            j = 0
            while mask:
                if mask & 1:
                    new_mask |= 1 << relabel[j]
                mask >>= 1
                j += 1
            rows[relabel[x]] = new_mask
        key_tuple = tuple(rows)
        if best is None or key_tuple < best:
            best = key_tuple
    return (n,) + (best or ())


def posets_isomorphic(p: LabeledPoset, q: LabeledPoset) -> bool:
    """Whether two posets have order-isomorphic underlying orders."""
    return canonical_form(p) == canonical_form(q)


def order_ideals(p: LabeledPoset) -> List[FrozenSet[int]]:
    """All down-closed vertex subsets, the empty set and the whole set
    included."""
    out = []
    for size in range(p.n + 1):
        for subset in itertools.combinations(range(p.n), size):
            chosen = set(subset)
            if all(
                x in chosen
                for y in subset
                for x in range(p.n)
                if x != y and p.leq[x][y]
            ):
                out.append(frozenset(subset))
    return out


@lru_cache(maxsize=None)
def all_posets(n: int) -> Tuple[LabeledPoset, ...]:
    """One representative per isomorphism class of posets on n elements,
    built by repeatedly attaching a new maximal element above an order
    ideal."""
    if n == 0:
        return (poset_from_relations(0, []),)
    seen: Dict[Tuple[int, ...], LabeledPoset] = {}
    for smaller in all_posets(n - 1):
        for ideal in order_ideals(smaller):
            relations = [
                (x, y)
                for x in range(smaller.n)
                for y in range(smaller.n)
                if smaller.less(x, y)
            ]
            relations += [(x, smaller.n) for x in ideal]
            candidate = poset_from_relations(n, relations)
            seen.setdefault(canonical_form(candidate), candidate)
    return tuple(seen[key] for key in sorted(seen))
