"""Quasisymmetric functions attached to graphs, matroids and permutations.

Every family here can be computed along two independent routes:

* a *definitional* route that enumerates colorings, generic maps or
  permutations directly, organized by surjective type so that Monomial
  coefficients are exact without truncation arguments, and
* a *structural* route that decomposes the family into generating
  functions of labeled posets (one per orientation, edge subset or
  basis), certifying the coefficients of the image under the involution
  in the power-like basis as weighted counts of starred surjections.

The default ``route="all"`` computes both and raises if they disagree;
the single-route variants exist so that sweeps and cross-checks can
isolate one side.  Structural routes return a :class:`CertifiedExpansion`
whose certificate polynomials, divided by z_alpha, reproduce the
coefficients exactly.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .coeffs import (
    ParamPoly,
    is_unimodal,
    pp_add,
    pp_coeff_list,
    pp_coefficient,
    pp_const,
    pp_has_nonneg_int_coeffs,
    pp_mul,
    pp_scale,
    pp_sub,
    pp_subst,
    pp_var,
)
from .compositions import (
    Composition,
    Partition,
    comp_to_set,
    compositions,
    gcd_of,
    partitions,
    set_to_comp,
    z_of,
)
from .posets import (
    DirectedGraph,
    graph_is_acyclic,
    orientation_closure,
    perm_stats,
    poset_from_relations,
    zigzag_cycle,
    zigzag_path,
)
from .ppartitions import PartitionExpansionReport, kp_fundamental, kp_psi
from .qsym import (
    QSymElement,
    SymElement,
    eulerian_poly,
    f_to_m,
    make_qsym,
    make_sym,
    omega,
    p_qsym,
    power_substitution,
    q_int,
    qsym_add,
    qsym_equal,
    qsym_scale,
    s_qsym,
    standard_tableaux,
    sym_to_qsym,
    tableau_descents,
    to_basis,
)
from .unimodal import is_alpha_unimodal

Edge = Tuple[int, int]

ROUTES = ("all", "colorings", "orientations")


# ---------------------------------------------------------------------------
# certified expansions in the power-like basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertifiedExpansion:
    """An expansion in the Psi basis together with certificate polynomials.

    The coefficient of index alpha equals certificates[alpha] / z_alpha;
    each certificate is a weighted count of starred surjections and so is
    expected (and usually guaranteed) to have nonnegative integer
    coefficients, recorded in ``positive``.
    """

    element: QSymElement
    certificates: Dict[Composition, ParamPoly]
    positive: bool

    def __post_init__(self) -> None:
        if self.element.basis != "Psi":
            raise ValueError(f"expected the Psi basis, got {self.element.basis!r}")
        for alpha in self.element.support():
            if alpha not in self.certificates:
                raise ValueError(f"missing certificate for {alpha}")
        for alpha, cert in self.certificates.items():
            expected = pp_scale(cert, Fraction(1, z_of(alpha)))
            if pp_sub(self.element.coefficient(alpha), expected):
                raise ValueError(f"certificate for {alpha} does not match the coefficient")
        claimed = all(pp_has_nonneg_int_coeffs(c) for c in self.certificates.values())
        if claimed != self.positive:
            raise ValueError("positivity flag does not match the certificates")


def _expansion(n: int, certs: Dict[Composition, ParamPoly]) -> CertifiedExpansion:
    kept = {alpha: cert for alpha, cert in certs.items() if cert}
    element = make_qsym(
        "Psi", n, {alpha: pp_scale(cert, Fraction(1, z_of(alpha))) for alpha, cert in kept.items()}
    )
    positive = all(pp_has_nonneg_int_coeffs(c) for c in kept.values())
    return CertifiedExpansion(element, kept, positive)


def unimodality_violations(
    expansion: CertifiedExpansion, name: str = "q"
) -> List[Tuple[Composition, List[Fraction]]]:
    """The certificate indices whose coefficient sequences in the given
    parameter fail to be unimodal (rise then fall, ignoring outer zeros)."""
    out = []
    for alpha in sorted(expansion.certificates, key=lambda a: (len(a), a)):
        values = pp_coeff_list(expansion.certificates[alpha], name)
        if not is_unimodal(values):
            out.append((alpha, values))
    return out


# ---------------------------------------------------------------------------
# orientations of a directed multigraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge copy, as flip flags against the input."""

    graph: DirectedGraph
    flips: Tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.flips) != len(self.graph.edges):
            raise ValueError(
                f"expected {len(self.graph.edges)} direction flags, got {len(self.flips)}"
            )

    def directed_edges(self) -> Tuple[Edge, ...]:
        return tuple(
            (v, u) if flip else (u, v)
            for (u, v), flip in zip(self.graph.edges, self.flips)
        )

    def ascents(self) -> int:
        """The number of edge copies kept in their input direction."""
        return sum(1 for flip in self.flips if not flip)


def orientations(g: DirectedGraph) -> Iterator[Orientation]:
    """All reorientations of the edge copies, flips enumerated in binary order."""
    for flips in itertools.product((False, True), repeat=len(g.edges)):
        yield Orientation(g, flips)


def acyclic_orientations(g: DirectedGraph) -> Iterator[Orientation]:
    """The reorientations without a directed cycle."""
    for theta in orientations(g):
        if graph_is_acyclic(DirectedGraph(g.n, theta.directed_edges())):
            yield theta


def _coloring_orientation(g: DirectedGraph, kappa: Sequence[int]) -> Orientation:
    """The orientation pointing each edge toward its larger color; the
    coloring must assign distinct colors across every edge."""
    flips = []
    for u, v in g.edges:
        if kappa[u] == kappa[v]:
            raise ValueError(f"edge ({u}, {v}) is monochromatic")
        flips.append(kappa[u] > kappa[v])
    return Orientation(g, tuple(flips))


# ---------------------------------------------------------------------------
# shared enumeration helpers
# ---------------------------------------------------------------------------


def _q_power(a: int) -> ParamPoly:
    return {(a, 0, 0): Fraction(1)}


def _yz_power(a: int, b: int) -> ParamPoly:
    return {(0, a, b): Fraction(1)}


_Q_PLUS_1 = {"q": pp_add(pp_var("q"), pp_const(1))}
_Q_MINUS_1 = {"q": pp_sub(pp_var("q"), pp_const(1))}


def _subst_coeffs(e: QSymElement, assignments: Dict[str, ParamPoly]) -> QSymElement:
    return make_qsym(
        e.basis, e.n, {alpha: pp_subst(c, assignments) for alpha, c in e.coeffs.items()}
    )


def _colorings(n: int, beta: Composition) -> Iterator[Tuple[int, ...]]:
    """All colorings of vertices 0..n-1 by colors 1..len(beta) in which
    color i is used exactly beta_i times."""
    word = tuple(
        color for color, count in enumerate(beta, start=1) for _ in range(count)
    )
    return iter(set(itertools.permutations(word)))


def _ascent_count(edges: Sequence[Edge], kappa: Sequence[int]) -> int:
    return sum(1 for u, v in edges if kappa[u] < kappa[v])


def _coloring_sum(n: int, weight_of) -> QSymElement:
    """The Monomial expansion of a coloring sum; weight_of maps a coloring
    to a coefficient polynomial, or None to discard it."""
    terms: Dict[Composition, ParamPoly] = {}
    for beta in compositions(n):
        total: ParamPoly = {}
        for kappa in _colorings(n, beta):
            weight = weight_of(kappa)
            if weight is not None:
                total = pp_add(total, weight)
        if total:
            terms[beta] = total
    return make_qsym("M", n, terms)


_REPORT_CACHE: Dict[Tuple[int, Tuple[Edge, ...]], Optional[PartitionExpansionReport]] = {}
_STRICT_CACHE: Dict[Tuple[int, Tuple[Edge, ...]], Optional[QSymElement]] = {}


def _closure_report(n: int, arcs: Iterable[Edge]) -> Optional[PartitionExpansionReport]:
    """The certified expansion of the closure poset of the arcs, or None
    when the arcs contain a directed cycle."""
    key = (n, tuple(sorted(set(arcs))))
    if key not in _REPORT_CACHE:
        try:
            poset = orientation_closure(DirectedGraph(n, key[1]))
        except ValueError:
            _REPORT_CACHE[key] = None
        else:
            _REPORT_CACHE[key] = kp_psi(poset, route="Ostar")
    return _REPORT_CACHE[key]


def _strict_monomial(n: int, arcs: Iterable[Edge]) -> Optional[QSymElement]:
    """The Monomial expansion of the strictly order-preserving generating
    function of the closure poset, or None on a directed cycle."""
    key = (n, tuple(sorted(set(arcs))))
    if key not in _STRICT_CACHE:
        report = _closure_report(n, key[1])
        _STRICT_CACHE[key] = None if report is None else to_basis(omega(report.element), "M")
    return _STRICT_CACHE[key]


def _accumulate(
    terms: Dict[Composition, ParamPoly], element: QSymElement, weight: ParamPoly
) -> None:
    for alpha, c in element.coeffs.items():
        terms[alpha] = pp_add(terms.get(alpha, {}), pp_mul(c, weight))


def _add_weighted_counts(
    certs: Dict[Composition, ParamPoly],
    report: PartitionExpansionReport,
    weight: ParamPoly,
) -> None:
    for alpha, count in report.certificates.items():
        certs[alpha] = pp_add(certs.get(alpha, {}), pp_scale(weight, count))


def _check_route(route: str, allowed: Tuple[str, ...] = ROUTES) -> None:
    if route not in allowed:
        raise ValueError(f"unknown route {route!r}; expected one of {allowed}")


def _routes_must_agree(direct: QSymElement, structural: QSymElement, what: str) -> None:
    if not qsym_equal(direct, structural):
        raise AssertionError(f"coloring and structural routes disagree for {what}")


# ---------------------------------------------------------------------------
# chromatic generating functions
# ---------------------------------------------------------------------------


def chromatic_x(g: DirectedGraph, route: str = "all") -> QSymElement:
    """The proper-coloring generating function with the ascent statistic.

    The Monomial coefficient of beta sums q^(ascents of kappa) over proper
    colorings of type beta, where an ascent is an edge copy (u, v) with
    kappa(u) < kappa(v).  The structural route instead sums, over acyclic
    reorientations theta, q^(ascents of theta) times the strict generating
    function of the closure poset of theta.
    """
    _check_route(route)
    edges = g.edges
    direct = structural = None
    if route in ("all", "colorings"):

        def weight(kappa: Tuple[int, ...]) -> Optional[ParamPoly]:
            if any(kappa[u] == kappa[v] for u, v in edges):
                return None
            return _q_power(_ascent_count(edges, kappa))

        direct = _coloring_sum(g.n, weight)
    if route in ("all", "orientations"):
        terms: Dict[Composition, ParamPoly] = {}
        for theta in orientations(g):
            strict = _strict_monomial(g.n, theta.directed_edges())
            if strict is None:
                continue
            _accumulate(terms, strict, _q_power(theta.ascents()))
        structural = make_qsym("M", g.n, terms)
    if route == "colorings":
        return direct
    if route == "orientations":
        return structural
    _routes_must_agree(direct, structural, "the chromatic function")
    return direct


def chromatic_psi(g: DirectedGraph, route: str = "all") -> CertifiedExpansion:
    """The certified Psi expansion of the involution image of chromatic_x.

    Certificates sum q^(ascents of theta) times the starred-surjection
    counts of the closure poset over acyclic reorientations theta; they are
    polynomials in q with nonnegative integer coefficients.
    """
    _check_route(route, ("all", "orientations"))
    certs: Dict[Composition, ParamPoly] = {}
    for theta in orientations(g):
        report = _closure_report(g.n, theta.directed_edges())
        if report is None:
            continue
        _add_weighted_counts(certs, report, _q_power(theta.ascents()))
    expansion = _expansion(g.n, certs)
    if route == "all":
        direct = to_basis(omega(chromatic_x(g, route="colorings")), "Psi")
        _routes_must_agree(direct, expansion.element, "the chromatic expansion")
    return expansion


# ---------------------------------------------------------------------------
# balanced orientations
# ---------------------------------------------------------------------------


def _oriented_pairs(g: DirectedGraph) -> Dict[FrozenSet[int], Edge]:
    """The edge directions of an oriented graph; rejects repeated pairs."""
    seen: Dict[FrozenSet[int], Edge] = {}
    for u, v in g.edges:
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"the pair {{{u}, {v}}} carries more than one edge")
        seen[key] = (u, v)
    return seen


_CYCLE_CACHE: Dict[Tuple[int, Tuple[Edge, ...]], Tuple[Tuple[int, ...], ...]] = {}


def _undirected_cycles(g: DirectedGraph) -> Tuple[Tuple[int, ...], ...]:
    """All cycles of the underlying undirected simple graph, each recorded
    once as a vertex sequence starting at its smallest vertex."""
    key = (g.n, g.edges)
    if key in _CYCLE_CACHE:
        return _CYCLE_CACHE[key]
    adjacency: Dict[int, set] = defaultdict(set)
    for u, v in g.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    cycles: List[Tuple[int, ...]] = []

    def extend(start: int, path: List[int]) -> None:
        for nxt in sorted(adjacency[path[-1]]):
            if nxt == start and len(path) >= 3:
                if path[1] < path[-1]:
                    cycles.append(tuple(path))
            elif nxt > start and nxt not in path:
                extend(start, path + [nxt])

    for start in range(g.n):
        extend(start, [start])
    _CYCLE_CACHE[key] = tuple(cycles)
    return _CYCLE_CACHE[key]


def is_k_balanced(theta: Orientation, g: DirectedGraph, k: int) -> bool:
    """Whether every undirected cycle of the oriented graph has at least k
    edges in each traversal direction under the orientation."""
    if theta.graph != g:
        raise ValueError("the orientation does not belong to the given graph")
    if k < 1:
        raise ValueError(f"the balance level must be positive, got {k}")
    _oriented_pairs(g)
    direction = {frozenset(e): e for e in theta.directed_edges()}
    for cycle in _undirected_cycles(g):
        steps = list(zip(cycle, cycle[1:] + (cycle[0],)))
        forward = sum(1 for u, v in steps if direction[frozenset((u, v))] == (u, v))
        if forward < k or len(steps) - forward < k:
            return False
    return True


def k_balanced_x(g: DirectedGraph, k: int, route: str = "all") -> QSymElement:
    """The proper-coloring sum restricted to colorings whose induced
    orientation (toward larger colors) is k-balanced; the structural route
    sums over k-balanced reorientations directly."""
    _check_route(route)
    _oriented_pairs(g)
    if k < 1:
        raise ValueError(f"the balance level must be positive, got {k}")
    edges = g.edges
    direct = structural = None
    if route in ("all", "colorings"):

        def weight(kappa: Tuple[int, ...]) -> Optional[ParamPoly]:
            if any(kappa[u] == kappa[v] for u, v in edges):
                return None
            if not is_k_balanced(_coloring_orientation(g, kappa), g, k):
                return None
            return _q_power(_ascent_count(edges, kappa))

        direct = _coloring_sum(g.n, weight)
    if route in ("all", "orientations"):
        terms: Dict[Composition, ParamPoly] = {}
        for theta in orientations(g):
            if not is_k_balanced(theta, g, k):
                continue
            strict = _strict_monomial(g.n, theta.directed_edges())
            if strict is None:
                raise AssertionError("a balanced orientation contained a directed cycle")
            _accumulate(terms, strict, _q_power(theta.ascents()))
        structural = make_qsym("M", g.n, terms)
    if route == "colorings":
        return direct
    if route == "orientations":
        return structural
    _routes_must_agree(direct, structural, "the balanced chromatic function")
    return direct


def k_balanced_psi(g: DirectedGraph, k: int, route: str = "all") -> CertifiedExpansion:
    """The certified Psi expansion of the involution image of k_balanced_x."""
    _check_route(route, ("all", "orientations"))
    _oriented_pairs(g)
    if k < 1:
        raise ValueError(f"the balance level must be positive, got {k}")
    certs: Dict[Composition, ParamPoly] = {}
    for theta in orientations(g):
        if not is_k_balanced(theta, g, k):
            continue
        report = _closure_report(g.n, theta.directed_edges())
        if report is None:
            raise AssertionError("a balanced orientation contained a directed cycle")
        _add_weighted_counts(certs, report, _q_power(theta.ascents()))
    expansion = _expansion(g.n, certs)
    if route == "all":
        direct = to_basis(omega(k_balanced_x(g, k, route="colorings")), "Psi")
        _routes_must_agree(direct, expansion.element, "the balanced expansion")
    return expansion


# ---------------------------------------------------------------------------
# coloring sums over all colorings (LLT-type)
# ---------------------------------------------------------------------------


def _subsets(indices: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for r in range(len(indices) + 1):
        yield from itertools.combinations(indices, r)


def llt_unicellular(g: DirectedGraph, route: str = "all") -> QSymElement:
    """The unrestricted coloring sum weighted by q^(ascents of kappa).

    The structural route computes the value at q + 1 by summing, over edge
    subsets A, q^|A| times the strict generating function of the closure of
    A (zero on a directed cycle), and substitutes q -> q - 1 afterwards.
    """
    _check_route(route)
    edges = g.edges
    direct = structural = None
    if route in ("all", "colorings"):
        direct = _coloring_sum(
            g.n, lambda kappa: _q_power(_ascent_count(edges, kappa))
        )
    if route in ("all", "orientations"):
        terms: Dict[Composition, ParamPoly] = {}
        for kept in _subsets(range(len(edges))):
            strict = _strict_monomial(g.n, tuple(edges[i] for i in kept))
            if strict is None:
                continue
            _accumulate(terms, strict, _q_power(len(kept)))
        structural = _subst_coeffs(make_qsym("M", g.n, terms), _Q_MINUS_1)
    if route == "colorings":
        return direct
    if route == "orientations":
        return structural
    _routes_must_agree(direct, structural, "the unicellular coloring sum")
    return direct


def llt_psi(g: DirectedGraph, route: str = "all") -> CertifiedExpansion:
    """The certified Psi expansion of the involution image of the
    unicellular coloring sum evaluated at q + 1."""
    _check_route(route, ("all", "orientations"))
    edges = g.edges
    certs: Dict[Composition, ParamPoly] = {}
    for kept in _subsets(range(len(edges))):
        report = _closure_report(g.n, tuple(edges[i] for i in kept))
        if report is None:
            continue
        _add_weighted_counts(certs, report, _q_power(len(kept)))
    expansion = _expansion(g.n, certs)
    if route == "all":
        shifted = _subst_coeffs(llt_unicellular(g, route="colorings"), _Q_PLUS_1)
        direct = to_basis(omega(shifted), "Psi")
        _routes_must_agree(direct, expansion.element, "the unicellular expansion")
    return expansion


def llt_vertical(
    g: DirectedGraph, s: Sequence[Edge], route: str = "all"
) -> CertifiedExpansion:
    """The certified Psi expansion, at q + 1, of the involution image of
    the coloring sum made strict along the edge copies in s and weighted by
    q^(ascents minus |s|).

    Structurally the sum runs over edge subsets containing s.  The
    certificates need not be unimodal even when the unrestricted ones are.
    """
    _check_route(route, ("all", "orientations"))
    edges = g.edges
    pinned: List[int] = []
    for u, v in s:
        found = next(
            (
                i
                for i, e in enumerate(edges)
                if e == (u, v) and i not in pinned
            ),
            None,
        )
        if found is None:
            raise ValueError(f"edge ({u}, {v}) is not available in the graph")
        pinned.append(found)
    free = [i for i in range(len(edges)) if i not in pinned]
    certs: Dict[Composition, ParamPoly] = {}
    for extra in _subsets(free):
        kept = tuple(pinned) + extra
        report = _closure_report(g.n, tuple(edges[i] for i in kept))
        if report is None:
            continue
        _add_weighted_counts(certs, report, _q_power(len(extra)))
    expansion = _expansion(g.n, certs)
    if route == "all":
        strict_edges = tuple(s)

        def weight(kappa: Tuple[int, ...]) -> Optional[ParamPoly]:
            if any(kappa[u] >= kappa[v] for u, v in strict_edges):
                return None
            return _q_power(_ascent_count(edges, kappa) - len(strict_edges))

        shifted = _subst_coeffs(_coloring_sum(g.n, weight), _Q_PLUS_1)
        direct = to_basis(omega(shifted), "Psi")
        _routes_must_agree(direct, expansion.element, "the vertical-strip expansion")
    return expansion


# ---------------------------------------------------------------------------
# two-parameter coloring sums and the multivariate Tutte function
# ---------------------------------------------------------------------------


def b_polynomial(g: DirectedGraph, route: str = "all") -> QSymElement:
    """The coloring sum weighted by y^(ascents) z^(descending edge copies).

    The structural route computes the value at (y + 1, z + 1) by summing
    y^|A| z^|I| over disjoint edge-copy subsets A (kept direction) and I
    (reversed), each weighted by the strict generating function of the
    closure of the chosen arcs (zero on a directed cycle), then shifts
    both parameters back.
    """
    _check_route(route)
    edges = g.edges
    direct = structural = None
    if route in ("all", "colorings"):

        def weight(kappa: Tuple[int, ...]) -> ParamPoly:
            asc = _ascent_count(edges, kappa)
            inv = sum(1 for u, v in edges if kappa[u] > kappa[v])
            return _yz_power(asc, inv)

        direct = _coloring_sum(g.n, weight)
    if route in ("all", "orientations"):
        terms: Dict[Composition, ParamPoly] = {}
        for states in itertools.product((0, 1, 2), repeat=len(edges)):
            arcs = [
                edges[i] if state == 1 else (edges[i][1], edges[i][0])
                for i, state in enumerate(states)
                if state
            ]
            strict = _strict_monomial(g.n, tuple(arcs))
            if strict is None:
                continue
            kept = sum(1 for state in states if state == 1)
            reversed_ = sum(1 for state in states if state == 2)
            _accumulate(terms, strict, _yz_power(kept, reversed_))
        shift_back = {
            "y": pp_sub(pp_var("y"), pp_const(1)),
            "z": pp_sub(pp_var("z"), pp_const(1)),
        }
        structural = _subst_coeffs(make_qsym("M", g.n, terms), shift_back)
    if route == "colorings":
        return direct
    if route == "orientations":
        return structural
    _routes_must_agree(direct, structural, "the two-parameter coloring sum")
    return direct


def b_psi(g: DirectedGraph, route: str = "all") -> CertifiedExpansion:
    """The certified Psi expansion of the involution image of the
    two-parameter coloring sum evaluated at (y + 1, z + 1)."""
    _check_route(route, ("all", "orientations"))
    edges = g.edges
    certs: Dict[Composition, ParamPoly] = {}
    for states in itertools.product((0, 1, 2), repeat=len(edges)):
        arcs = [
            edges[i] if state == 1 else (edges[i][1], edges[i][0])
            for i, state in enumerate(states)
            if state
        ]
        report = _closure_report(g.n, tuple(arcs))
        if report is None:
            continue
        kept = sum(1 for state in states if state == 1)
        reversed_ = sum(1 for state in states if state == 2)
        _add_weighted_counts(certs, report, _yz_power(kept, reversed_))
    expansion = _expansion(g.n, certs)
    if route == "all":
        shift = {
            "y": pp_add(pp_var("y"), pp_const(1)),
            "z": pp_add(pp_var("z"), pp_const(1)),
        }
        direct = to_basis(omega(_subst_coeffs(b_polynomial(g, route="colorings"), shift)), "Psi")
        _routes_must_agree(direct, expansion.element, "the two-parameter expansion")
    return expansion


def _component_partition(n: int, arcs: Iterable[Edge]) -> Partition:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in arcs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    sizes = Counter(find(x) for x in range(n))
    return tuple(sorted(sizes.values(), reverse=True))


def tutte_multivariate(g: DirectedGraph, route: str = "all") -> SymElement:
    """The power-basis symmetric function summing q^|S| p_(components of S)
    over edge-copy subsets S; equivalently the coloring sum weighted by
    (1 + q)^(monochromatic edge copies)."""
    _check_route(route, ("all", "colorings", "subsets"))
    edges = g.edges
    terms: Dict[Partition, ParamPoly] = {}
    for kept in _subsets(range(len(edges))):
        lam = _component_partition(g.n, [edges[i] for i in kept])
        terms[lam] = pp_add(terms.get(lam, {}), _q_power(len(kept)))
    subsets_route = make_sym("p", g.n, terms)
    if route == "subsets":
        return subsets_route
    one_plus_q = pp_add(pp_const(1), pp_var("q"))

    def weight(kappa: Tuple[int, ...]) -> ParamPoly:
        mono = sum(1 for u, v in edges if kappa[u] == kappa[v])
        poly = pp_const(1)
        for _ in range(mono):
            poly = pp_mul(poly, one_plus_q)
        return poly

    coloring_route = _coloring_sum(g.n, weight)
    if not qsym_equal(coloring_route, sym_to_qsym(subsets_route)):
        raise AssertionError("coloring and subset routes disagree for the Tutte function")
    return subsets_route


# ---------------------------------------------------------------------------
# matroid generating functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matroid:
    """A matroid on the ground set 0..n-1 given by its list of bases."""

    n: int
    bases: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.bases:
            raise ValueError("a matroid needs at least one basis")
        sets = [frozenset(b) for b in self.bases]
        for b, fs in zip(self.bases, sets):
            if len(fs) != len(b) or not all(0 <= e < self.n for e in b):
                raise ValueError(f"basis {b} is not a subset of 0..{self.n - 1}")
        if len(set(sets)) != len(sets):
            raise ValueError("bases must be distinct")
        sizes = {len(fs) for fs in sets}
        if len(sizes) != 1:
            raise ValueError(f"bases must share one cardinality, got sizes {sorted(sizes)}")
        universe = set(sets)
        for b1 in sets:
            for b2 in sets:
                for e in b1 - b2:
                    if not any((b1 - {e}) | {f} in universe for f in b2 - b1):
                        raise ValueError(
                            f"exchange fails for {sorted(b1)}, {sorted(b2)} at element {e}"
                        )

    @property
    def rank(self) -> int:
        return len(self.bases[0])


def make_matroid(n: int, bases: Iterable[Iterable[int]]) -> Matroid:
    """A matroid with canonically sorted, deduplicated bases."""
    normal = sorted(set(tuple(sorted(b)) for b in bases))
    return Matroid(n, tuple(normal))


def uniform_matroid(n: int, r: int) -> Matroid:
    """The matroid on 0..n-1 whose bases are all r-element subsets."""
    if not 0 < r <= n:
        raise ValueError(f"the rank must lie in 1..{n}, got {r}")
    return make_matroid(n, itertools.combinations(range(n), r))


def is_generic(m: Matroid, f: Sequence[int]) -> bool:
    """Whether the positive integer vector f (indexed by the ground set)
    has a unique basis of minimum total value."""
    if len(f) != m.n:
        raise ValueError(f"expected {m.n} values, got {len(f)}")
    if any(v < 1 for v in f):
        raise ValueError("values must be positive integers")
    sums = sorted(sum(f[e] for e in basis) for basis in m.bases)
    return len(sums) == 1 or sums[0] < sums[1]


def noninjective_generic_maps(
    m: Matroid, max_value: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """Generic vectors with a repeated value, searched up to max_value
    (default: the ground-set size).  Such witnesses exist and show that
    genericity does not force injectivity."""
    bound = m.n if max_value is None else max_value
    for f in itertools.product(range(1, bound + 1), repeat=m.n):
        if len(set(f)) < m.n and is_generic(m, f):
            yield f


def _exchange_arcs(m: Matroid, base: Tuple[int, ...]) -> List[Edge]:
    universe = {frozenset(b) for b in m.bases}
    chosen = frozenset(base)
    return [
        (e, f)
        for e in sorted(chosen)
        for f in sorted(set(range(m.n)) - chosen)
        if (chosen - {e}) | {f} in universe
    ]


def matroid_f(m: Matroid, route: str = "all") -> QSymElement:
    """The generating function of generic vectors, with Monomial
    coefficient of beta counting generic vectors of type beta; the
    structural route sums the strict generating functions of the exchange
    posets of the bases."""
    _check_route(route)
    direct = structural = None
    if route in ("all", "colorings"):
        direct = _coloring_sum(
            m.n, lambda f: pp_const(1) if is_generic(m, f) else None
        )
    if route in ("all", "orientations"):
        terms: Dict[Composition, ParamPoly] = {}
        for base in m.bases:
            strict = _strict_monomial(m.n, _exchange_arcs(m, base))
            if strict is None:
                raise AssertionError("an exchange poset contained a cycle")
            _accumulate(terms, strict, pp_const(1))
        structural = make_qsym("M", m.n, terms)
    if route == "colorings":
        return direct
    if route == "orientations":
        return structural
    _routes_must_agree(direct, structural, "the matroid generating function")
    return direct


def matroid_psi(m: Matroid, route: str = "all") -> CertifiedExpansion:
    """The certified Psi expansion of the involution image of matroid_f,
    certificates summing starred-surjection counts over the bases."""
    _check_route(route, ("all", "orientations"))
    certs: Dict[Composition, ParamPoly] = {}
    for base in m.bases:
        report = _closure_report(m.n, _exchange_arcs(m, base))
        if report is None:
            raise AssertionError("an exchange poset contained a cycle")
        _add_weighted_counts(certs, report, pp_const(1))
    expansion = _expansion(m.n, certs)
    if route == "all":
        direct = to_basis(omega(matroid_f(m, route="colorings")), "Psi")
        _routes_must_agree(direct, expansion.element, "the matroid expansion")
    return expansion


def uniform_matroid_psi_closed_form(n: int, r: int) -> QSymElement:
    """The closed form of the involution image for the uniform matroid:
    coefficient 1 on Psi of the all-ones index and binomial(n, k+1) on the
    index with a single part k+1 in slot r, for k = 1..n-r."""
    if not 0 < r <= n:
        raise ValueError(f"the rank must lie in 1..{n}, got {r}")
    m = n - r
    terms: Dict[Composition, ParamPoly] = {(1,) * n: pp_const(1)}
    for k in range(1, m + 1):
        alpha = (1,) * (r - 1) + (k + 1,) + (1,) * (m - k)
        terms[alpha] = pp_add(terms.get(alpha, {}), pp_const(math.comb(n, k + 1)))
    return make_qsym("Psi", n, terms)


# ---------------------------------------------------------------------------
# exceedance families over permutations
# ---------------------------------------------------------------------------


def eulerian_q(n: int) -> Dict[int, QSymElement]:
    """The Fundamental-positive family indexed by exceedance number: the
    value at j sums, over permutations with j exceedances, the Fundamental
    element of the descent set after barring the exceedance positions."""
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    buckets: Dict[int, Dict[Composition, ParamPoly]] = defaultdict(dict)
    for word in itertools.permutations(range(1, n + 1)):
        stats = perm_stats(word)
        alpha = set_to_comp(stats["DEX"], n)
        bucket = buckets[stats["exc"]]
        bucket[alpha] = pp_add(bucket.get(alpha, {}), pp_const(1))
    return {j: make_qsym("F", n, terms) for j, terms in sorted(buckets.items())}


def eulerian_zigzag_q(n: int) -> Dict[int, QSymElement]:
    """The same family computed from fence posets: the value at j sums the
    generating functions of the zigzag paths with j down-steps."""
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    buckets: Dict[int, List[QSymElement]] = defaultdict(list)
    for size in range(n):
        for down in itertools.combinations(range(1, n), size):
            buckets[size].append(kp_fundamental(zigzag_path(down, n)))
    return {j: qsym_add(*elements) for j, elements in sorted(buckets.items())}


def eulerian_generating(n: int) -> QSymElement:
    """The q-graded sum of the exceedance family."""
    parts = [qsym_scale(e, _q_power(j)) for j, e in eulerian_q(n).items()]
    return qsym_add(*parts)


def eulerian_closed_form(n: int) -> QSymElement:
    """The closed form of the q-graded sum: for each partition, the descent
    polynomial of its length times the product of q-integers of its parts,
    divided by the centralizer order, on the power-sum element."""
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    parts = []
    for lam in partitions(n):
        poly = eulerian_poly(len(lam))
        for part in lam:
            poly = pp_mul(poly, q_int(part))
        parts.append(qsym_scale(p_qsym(lam), pp_scale(poly, Fraction(1, z_of(lam)))))
    return qsym_add(*parts)


def long_cycles(n: int) -> Iterator[Tuple[int, ...]]:
    """All permutations of 1..n consisting of a single n-cycle, enumerated
    canonically by the cycle (a_1, ..., a_{n-1}, n)."""
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    for order in itertools.permutations(range(1, n)):
        seq = (*order, n)
        word = [0] * n
        for i, v in enumerate(seq):
            word[v - 1] = seq[(i + 1) % n]
        yield tuple(word)


def cycle_eulerian_q(n: int) -> Dict[int, QSymElement]:
    """The exceedance family restricted to single n-cycles."""
    buckets: Dict[int, Dict[Composition, ParamPoly]] = defaultdict(dict)
    for word in long_cycles(n):
        stats = perm_stats(word)
        alpha = set_to_comp(stats["DEX"], n)
        bucket = buckets[stats["exc"]]
        bucket[alpha] = pp_add(bucket.get(alpha, {}), pp_const(1))
    return {j: make_qsym("F", n, terms) for j, terms in sorted(buckets.items())}


def cycle_eulerian_generating(n: int) -> QSymElement:
    """The q-graded sum of the single-cycle exceedance family."""
    parts = [qsym_scale(e, _q_power(j)) for j, e in cycle_eulerian_q(n).items()]
    return qsym_add(*parts)


def cycle_word_q(n: int) -> Dict[int, QSymElement]:
    """Generating functions of length-n words over barred and unbarred
    positive letters with weak cyclic monotonicity at every position,
    graded by the number of barred letters j in 0..n-1: the all-unbarred
    words give the n-th power sum, the mixed ones the cyclic fence posets."""
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    out: Dict[int, QSymElement] = {0: to_basis(p_qsym((n,)), "M")}
    buckets: Dict[int, List[QSymElement]] = defaultdict(list)
    for size in range(1, n):
        for down in itertools.combinations(range(1, n + 1), size):
            buckets[size].append(f_to_m(kp_fundamental(zigzag_cycle(down, n))))
    for j, elements in sorted(buckets.items()):
        out[j] = qsym_add(*elements)
    return out


def cycle_word_generating(n: int) -> QSymElement:
    """The q-graded sum of the cyclic word family."""
    parts = [qsym_scale(e, _q_power(j)) for j, e in cycle_word_q(n).items()]
    return qsym_add(*parts)


def cycle_word_closed_form(n: int) -> QSymElement:
    """The closed form of the cyclic word family: the n-th power sum times
    the q-integer of n, plus for each partition with at least two parts the
    power-sum element weighted by n q A_(length-1)(q) times the product of
    q-integers of the parts over the centralizer order."""
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    parts = [qsym_scale(p_qsym((n,)), q_int(n))]
    for lam in partitions(n):
        if len(lam) < 2:
            continue
        poly = pp_scale(pp_mul(_q_power(1), eulerian_poly(len(lam) - 1)), n)
        for part in lam:
            poly = pp_mul(poly, q_int(part))
        parts.append(qsym_scale(p_qsym(lam), pp_scale(poly, Fraction(1, z_of(lam)))))
    return qsym_add(*parts)


def _moebius(k: int) -> int:
    if k < 1:
        raise ValueError(f"positive integer required, got {k}")
    result = 1
    remaining = k
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            remaining //= p
            if remaining % p == 0:
                return 0
            result = -result
        p += 1
    if remaining > 1:
        result = -result
    return result


def _divisors(k: int) -> List[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def cycle_eulerian_moebius(n: int) -> QSymElement:
    """The q-graded single-cycle family recovered from the cyclic word
    family by Moebius inversion over the divisor lattice, substituting
    variables by their d-th powers along each divisor d."""
    parts = []
    for d in _divisors(n):
        mu = _moebius(d)
        if mu == 0:
            continue
        for j, element in cycle_word_q(n // d).items():
            scaled = qsym_scale(
                power_substitution(element, d), pp_scale(_q_power(d * j), Fraction(mu, n))
            )
            parts.append(scaled)
    return qsym_add(*parts)


def cycle_eulerian_closed_form(n: int) -> QSymElement:
    """The divisor-sum closed form of the q-graded single-cycle family.

    Exact for n >= 2; for n = 1 the printed formula yields q times the
    defining sum because the length-one correction term is absorbed into a
    two-sided identity that only holds from n = 2 on.
    """
    if n < 1:
        raise ValueError(f"need at least one letter, got {n}")
    parts = []
    for lam in partitions(n):
        ell = len(lam)
        total: ParamPoly = {}
        for d in _divisors(gcd_of(lam)):
            mu = _moebius(d)
            if mu == 0:
                continue
            qd = _q_power(d)
            poly = pp_scale(pp_mul(qd, pp_subst(eulerian_poly(ell - 1), {"q": qd})), mu * d ** (ell - 1))
            for part in lam:
                poly = pp_mul(poly, pp_subst(q_int(part // d), {"q": qd}))
            total = pp_add(total, poly)
        parts.append(qsym_scale(p_qsym(lam), pp_scale(total, Fraction(1, z_of(lam)))))
    return qsym_add(*parts)


# ---------------------------------------------------------------------------
# Schur functions and signed unimodal tableau counts
# ---------------------------------------------------------------------------


def schur(lam: Partition) -> QSymElement:
    """The Schur function as the Fundamental sum over standard Young
    tableaux of the given shape, indexed by their descent sets."""
    return s_qsym(lam)


def roichman_coeff(lam: Partition, mu: Partition) -> int:
    """The signed count of standard Young tableaux of the first shape whose
    descent set is unimodal with respect to the second partition, each
    weighted by (-1) to the number of descents avoiding the landmark set.

    Equals z_mu times the power-sum coefficient of the Schur function."""
    n = sum(lam)
    if sum(mu) != n:
        raise ValueError(f"shapes have different sizes: {sum(lam)} and {sum(mu)}")
    landmarks = comp_to_set(tuple(mu))
    total = 0
    for placement in standard_tableaux(lam):
        des = tableau_descents(placement)
        if is_alpha_unimodal(des, tuple(mu)):
            total += (-1) ** len(des - landmarks)
    return total


# ---------------------------------------------------------------------------
# graph enumeration up to isomorphism
# ---------------------------------------------------------------------------


def _canonical_arcs(n: int, arcs: Tuple[Edge, ...]) -> Tuple[Edge, ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        image = tuple(sorted((perm[u], perm[v]) for u, v in arcs))
        if best is None or image < best:
            best = image
    return best


def all_digraphs(n: int, antiparallel: bool = True) -> List[DirectedGraph]:
    """Loopless digraphs without parallel copies on n vertices, one per
    isomorphism class; antiparallel=False forbids mutual pairs as well."""
    pairs = list(itertools.combinations(range(n), 2))
    states = 4 if antiparallel else 3
    reps: Dict[Tuple[Edge, ...], DirectedGraph] = {}
    for assignment in itertools.product(range(states), repeat=len(pairs)):
        arcs: List[Edge] = []
        for (u, v), state in zip(pairs, assignment):
            if state in (1, 3):
                arcs.append((u, v))
            if state in (2, 3):
                arcs.append((v, u))
        key = _canonical_arcs(n, tuple(arcs))
        if key not in reps:
            reps[key] = DirectedGraph(n, key)
    return list(reps.values())


def oriented_graphs(n: int) -> List[DirectedGraph]:
    """Orientations of simple graphs on n vertices, one per isomorphism
    class, enumerated via undirected representatives and their
    automorphism groups."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    out: List[DirectedGraph] = []
    for mask in range(1 << len(pairs)):
        chosen = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        images = [
            tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in chosen))
            for perm in perms
        ]
        if min(images) != tuple(sorted(chosen)):
            continue
        automorphisms = [
            perm for perm, image in zip(perms, images) if image == tuple(sorted(chosen))
        ]
        seen = set()
        for flips in itertools.product((False, True), repeat=len(chosen)):
            arcs = tuple(
                (v, u) if flip else (u, v) for (u, v), flip in zip(chosen, flips)
            )
            key = tuple(sorted(arcs))
            canon = min(
                tuple(sorted((perm[u], perm[v]) for u, v in arcs))
                for perm in automorphisms
            )
            if key == canon and key not in seen:
                seen.add(key)
                out.append(DirectedGraph(n, key))
    return out


# ---------------------------------------------------------------------------
# rooted trees and the top chromatic coefficient
# ---------------------------------------------------------------------------


TreeCode = Tuple


@cache
def _rooted_tree_codes(n: int) -> Tuple[TreeCode, ...]:
    if n == 1:
        return ((),)
    seen = set()
    for sizes in partitions(n - 1):
        groups = sorted(Counter(sizes).items())
        pools = [
            list(itertools.combinations_with_replacement(_rooted_tree_codes(size), count))
            for size, count in groups
        ]
        for pick in itertools.product(*pools):
            children = tuple(sorted(itertools.chain.from_iterable(pick)))
            seen.add(children)
    return tuple(sorted(seen))


def rooted_trees(n: int) -> List[DirectedGraph]:
    """One tree per isomorphism class of rooted trees on n vertices, with
    vertex 0 as the root and every edge directed away from it."""
    if n < 1:
        raise ValueError(f"need at least one vertex, got {n}")
    out = []
    for code in _rooted_tree_codes(n):
        arcs: List[Edge] = []
        counter = itertools.count(1)

        def attach(parent: int, children: TreeCode) -> None:
            for child in children:
                vertex = next(counter)
                arcs.append((parent, vertex))
                attach(vertex, child)

        attach(0, code)
        out.append(DirectedGraph(n, tuple(arcs)))
    return out


@dataclass(frozen=True)
class RootedTreeReport:
    """Distinctness of the chromatic functions of rooted trees, and the
    identity between the top q-coefficient and the strict generating
    function of the tree order."""

    n: int
    count: int
    all_distinct: bool
    top_coefficient_matches: bool


def distinguishes_rooted_trees(n: int) -> RootedTreeReport:
    """Whether all rooted trees on n vertices have distinct chromatic
    generating functions, and whether each coefficient of q^(n-1) equals
    the strict generating function of the tree viewed as a poset with the
    root at the bottom."""
    if not 1 <= n <= 8:
        raise ValueError(f"supported for 1..8 vertices, got {n}")
    trees = rooted_trees(n)
    elements = [chromatic_x(t, route="colorings") for t in trees]
    all_distinct = all(
        not qsym_equal(a, b) for a, b in itertools.combinations(elements, 2)
    )
    top_ok = True
    for tree, element in zip(trees, elements):
        top = make_qsym(
            "M",
            n,
            {alpha: pp_coefficient(c, "q", n - 1) for alpha, c in element.coeffs.items()},
        )
        report = kp_psi(poset_from_relations(n, tree.edges), route="Ostar")
        if not qsym_equal(top, to_basis(omega(report.element), "M")):
            top_ok = False
    return RootedTreeReport(n, len(trees), all_distinct, top_ok)
