import itertools
import math
from fractions import Fraction

import pytest

from qsymkit.coeffs import (
    is_unimodal,
    pp_add,
    pp_coeff_list,
    pp_coefficient,
    pp_const,
    pp_mul,
    pp_scale,
    pp_sub,
    pp_subst,
    pp_var,
)
from qsymkit.compositions import compositions, partitions, z_of
from qsymkit.families import (
    CertifiedExpansion,
    Orientation,
    acyclic_orientations,
    all_digraphs,
    b_polynomial,
    b_psi,
    chromatic_psi,
    chromatic_x,
    cycle_eulerian_closed_form,
    cycle_eulerian_generating,
    cycle_eulerian_moebius,
    cycle_eulerian_q,
    cycle_word_closed_form,
    cycle_word_generating,
    cycle_word_q,
    distinguishes_rooted_trees,
    eulerian_closed_form,
    eulerian_generating,
    eulerian_q,
    eulerian_zigzag_q,
    is_generic,
    is_k_balanced,
    k_balanced_psi,
    k_balanced_x,
    llt_psi,
    llt_unicellular,
    llt_vertical,
    long_cycles,
    make_matroid,
    matroid_f,
    matroid_psi,
    noninjective_generic_maps,
    oriented_graphs,
    orientations,
    roichman_coeff,
    rooted_trees,
    schur,
    tutte_multivariate,
    uniform_matroid,
    uniform_matroid_psi_closed_form,
    unimodality_violations,
)
from qsymkit.posets import (
    DirectedGraph,
    complete_graph,
    cycle_graph,
    path_graph,
    poset_from_relations,
    zigzag_cycle,
    zigzag_path,
)
from qsymkit.ppartitions import kp_psi
from qsymkit.qsym import (
    eulerian_poly,
    expand_truncated,
    h_qsym,
    make_qsym,
    make_sym,
    omega,
    p_qsym,
    power_substitution,
    q_int,
    qsym_add,
    qsym_equal,
    qsym_scale,
    sym_to_qsym,
    to_basis,
    to_sym,
)


def qpoly(*coeffs):
    """Polynomial in the first parameter with the given coefficient list."""
    return {(i, 0, 0): Fraction(c) for i, c in enumerate(coeffs) if c}


def as_int(value):
    """Constant polynomial (or plain count) -> integer."""
    if isinstance(value, dict):
        assert set(value) <= {(0, 0, 0)}
        return int(value.get((0, 0, 0), 0))
    return int(value)


def q_power(k):
    return {(k, 0, 0): Fraction(1)}


FOUR_CYCLE = DirectedGraph(4, ((0, 1), (0, 2), (3, 1), (3, 2)))
FIVE_PATHISH = DirectedGraph(5, ((0, 1), (2, 1), (3, 2), (3, 4)))


# ---------------------------------------------------------------------------
# chromatic quasisymmetric functions
# ---------------------------------------------------------------------------


def test_chromatic_four_cycle_certificates():
    """The oriented 4-cycle has the frozen certificate table, with the
    non-unimodal entry at (1, 2, 1)."""
    expansion = chromatic_psi(FOUR_CYCLE)
    expected = {
        (4,): qpoly(0, 4, 4, 4),
        (1, 3): qpoly(2, 4, 0, 4, 2),
        (2, 2): qpoly(0, 4, 8, 4),
        (3, 1): qpoly(0, 4, 4, 4),
        (1, 1, 2): qpoly(0, 4, 8, 4),
        (1, 2, 1): qpoly(4, 4, 0, 4, 4),
        (2, 1, 1): qpoly(0, 4, 8, 4),
        (1, 1, 1, 1): qpoly(4, 4, 8, 4, 4),
    }
    assert expansion.certificates == expected
    assert expansion.positive
    # both the (1, 3) and the (1, 2, 1) entries dip in the middle
    assert [a for a, _ in unimodality_violations(expansion)] == [
        (1, 3), (1, 2, 1)
    ]


def test_chromatic_five_vertex_certificate():
    """The 5-vertex two-source graph has the frozen non-unimodal certificate
    at (1, 3, 1)."""
    expansion = chromatic_psi(FIVE_PATHISH)
    assert expansion.certificates[(1, 3, 1)] == qpoly(2, 5, 4, 5, 2)
    assert expansion.positive
    assert [a for a, _ in unimodality_violations(expansion)] == [(1, 3, 1)]


def test_chromatic_routes_agree_on_small_digraphs():
    """Coloring and orientation routes agree on every digraph with three
    vertices, and the certificates are nonnegative."""
    for g in all_digraphs(3):
        element = chromatic_x(g)
        expansion = chromatic_psi(g)
        assert expansion.positive
        assert qsym_equal(to_basis(omega(element), "Psi"), expansion.element)


def test_chromatic_edgeless_graph():
    """With no edges every coloring is proper and X is the full homogeneous
    coloring sum."""
    g = DirectedGraph(3, ())
    assert qsym_equal(chromatic_x(g), make_qsym("M", 3, {
        (3,): pp_const(1),
        (1, 2): pp_const(3),
        (2, 1): pp_const(3),
        (1, 1, 1): pp_const(6),
    }))


def test_chromatic_at_one_is_orientation_independent():
    """Setting the edge parameter to one forgets orientations: all
    reorientations of a graph give the same specialization."""
    one = {"q": pp_const(1)}
    for base in [path_graph(4), cycle_graph(4), complete_graph(3)]:
        seen = set()
        for theta in orientations(base):
            g = DirectedGraph(base.n, theta.directed_edges())
            e = chromatic_x(g, route="colorings")
            frozen = tuple(sorted(
                (a, as_int(pp_subst(c, one))) for a, c in e.coeffs.items()
            ))
            seen.add(frozen)
        assert len(seen) == 1


def test_chromatic_rejects_unknown_route():
    with pytest.raises(ValueError):
        chromatic_x(FOUR_CYCLE, route="bogus")


def test_certified_expansion_validates():
    """The report constructor rejects certificates that do not match the
    element."""
    good = chromatic_psi(FOUR_CYCLE)
    bad = dict(good.certificates)
    bad[(4,)] = qpoly(1, 2, 3)
    with pytest.raises(ValueError):
        CertifiedExpansion(good.element, bad, good.positive)


# ---------------------------------------------------------------------------
# k-balanced chromatic functions
# ---------------------------------------------------------------------------


def test_k_balanced_on_forests_is_chromatic():
    """Forests have no cycles, so every balance level gives plain X."""
    for g in [path_graph(4), DirectedGraph(4, ((0, 1), (0, 2), (0, 3)))]:
        x = chromatic_x(g)
        for k in (1, 2, 3):
            assert qsym_equal(k_balanced_x(g, k), x)


def test_k_balanced_four_cycle():
    """On the directed 4-cycle the 2-balanced orientations are the six with
    two edges each way; both routes agree and certificates stay positive."""
    g = cycle_graph(4)
    balanced = [t for t in orientations(g) if is_k_balanced(t, g, 2)]
    assert len(balanced) == 6
    expansion = k_balanced_psi(g, 2)
    assert expansion.positive
    assert qsym_equal(
        to_basis(omega(k_balanced_x(g, 2)), "Psi"), expansion.element
    )


def test_one_balanced_is_chromatic():
    """1-balanced means acyclic, so the level-1 function is X itself."""
    for g in [cycle_graph(4), complete_graph(3), path_graph(3)]:
        assert qsym_equal(k_balanced_x(g, 1), chromatic_x(g))
        acyclic = {t.flips for t in acyclic_orientations(g)}
        balanced = {t.flips for t in orientations(g) if is_k_balanced(t, g, 1)}
        assert acyclic == balanced


def test_k_balanced_can_vanish():
    """If no orientation can put three edges each way around a 4-cycle the
    function is zero."""
    g = cycle_graph(4)
    assert qsym_equal(k_balanced_x(g, 3), make_qsym("M", 4, {}))


def test_is_k_balanced_validation():
    g = cycle_graph(4)
    theta = next(iter(orientations(g)))
    with pytest.raises(ValueError):
        is_k_balanced(theta, g, 0)
    with pytest.raises(ValueError):
        is_k_balanced(theta, path_graph(4), 1)
    with pytest.raises(ValueError):
        k_balanced_x(DirectedGraph(2, ((0, 1), (0, 1))), 1)


# ---------------------------------------------------------------------------
# LLT-type coloring sums
# ---------------------------------------------------------------------------


def test_llt_single_edge():
    """Three coloring cases (equal, ascent, descent) give the single-edge
    value."""
    g = DirectedGraph(2, ((0, 1),))
    expected = make_qsym("M", 2, {(2,): pp_const(1), (1, 1): qpoly(1, 1)})
    assert qsym_equal(llt_unicellular(g), expected)


def test_llt_routes_and_unimodality_small():
    """Subset and coloring routes agree on all oriented graphs with up to
    four vertices; every certificate is unimodal there."""
    for n in (1, 2, 3, 4):
        for g in oriented_graphs(n):
            expansion = llt_psi(g)
            assert expansion.positive
            assert unimodality_violations(expansion) == []


def test_llt_vertical_fixture_table():
    """The 5-vertex vertical-strip example has the frozen certificate table;
    the unique non-unimodal certificate sits at (1, 1, 3) and no certificate
    equals 1 + q^2."""
    g = DirectedGraph(5, ((0, 1), (0, 2), (1, 3), (1, 4)))
    s = ((0, 1), (0, 2))
    expansion = llt_vertical(g, s)
    expected = {
        (5,): qpoly(0, 0, 1),
        (1, 4): qpoly(0, 2),
        (2, 3): qpoly(0, 0, 1),
        (4, 1): qpoly(0, 2, 3),
        (1, 1, 3): qpoly(2, 0, 1),
        (1, 2, 2): qpoly(0, 2),
        (1, 3, 1): qpoly(2, 4, 1),
        (2, 1, 2): qpoly(0, 2),
        (2, 2, 1): qpoly(0, 2, 2),
        (3, 1, 1): qpoly(2, 8, 6),
        (1, 1, 1, 2): qpoly(0, 6),
        (1, 1, 2, 1): qpoly(4, 6, 2),
        (1, 2, 1, 1): qpoly(8, 10, 4),
        (2, 1, 1, 1): qpoly(12, 18, 8),
        (1, 1, 1, 1, 1): qpoly(40, 30, 8),
    }
    assert expansion.certificates == expected
    assert expansion.positive
    assert [a for a, _ in unimodality_violations(expansion)] == [(1, 1, 3)]
    assert expansion.certificates[(1, 1, 3)] == qpoly(2, 0, 1)
    # the value 1 + q^2 appears nowhere, strict constraints change the table
    assert all(c != qpoly(1, 0, 1) for c in expansion.certificates.values())


def test_llt_vertical_empty_set_is_unicellular():
    for g in [DirectedGraph(2, ((0, 1),)), path_graph(3),
              DirectedGraph(4, ((0, 1), (0, 2), (1, 3)))]:
        a = llt_vertical(g, ())
        b = llt_psi(g)
        assert a.certificates == b.certificates
        assert qsym_equal(a.element, b.element)


def test_llt_vertical_all_edges_of_forest():
    """Making every edge of a forest strict leaves exactly the strict
    order-preserving colorings, i.e. the expansion of the closure poset."""
    g = DirectedGraph(4, ((0, 1), (0, 2), (1, 3)))
    expansion = llt_vertical(g, g.edges)
    report = kp_psi(poset_from_relations(4, g.edges))
    assert {a: as_int(c) for a, c in expansion.certificates.items()} == dict(
        report.certificates
    )
    assert qsym_equal(expansion.element, report.element)


def test_llt_vertical_rejects_foreign_edges():
    g = path_graph(3)
    with pytest.raises(ValueError):
        llt_vertical(g, ((2, 0),))


# ---------------------------------------------------------------------------
# Tutte-type coloring sums
# ---------------------------------------------------------------------------


def test_b_polynomial_single_edge():
    g = DirectedGraph(2, ((0, 1),))
    b = b_polynomial(g)
    assert b.coeffs == {
        (2,): pp_const(1),
        (1, 1): {(0, 1, 0): Fraction(1), (0, 0, 1): Fraction(1)},
    }


def test_b_psi_positive_small():
    """Certificates of the two-parameter expansion are polynomials with
    nonnegative integer coefficients on all small digraphs."""
    for g in all_digraphs(3):
        assert b_psi(g).positive
    assert b_psi(cycle_graph(4)).positive


def test_b_specializations():
    """The two-parameter coloring sum restricts to the chromatic function
    (grade by total edge count, keep the top), to the unrestricted coloring
    sum (forget the inversion parameter), and to the multivariate Tutte
    polynomial on the diagonal."""
    graphs = [DirectedGraph(2, ((0, 1),)), path_graph(3), complete_graph(3),
              cycle_graph(4), DirectedGraph(4, ((0, 1), (0, 2), (1, 3)))]
    graphs += list(all_digraphs(3, antiparallel=False))
    y, z, q = pp_var("y"), pp_var("z"), pp_var("q")
    for g in graphs:
        b = b_polynomial(g)
        m = len(g.edges)
        grading = {"y": pp_mul(q, z), "z": z}
        chrom = make_qsym("M", g.n, {
            a: pp_coefficient(pp_subst(c, grading), "z", m)
            for a, c in b.coeffs.items()
        })
        assert qsym_equal(chrom, chromatic_x(g, route="colorings"))
        forget = {"y": q, "z": pp_const(1)}
        llt = make_qsym("M", g.n, {
            a: pp_subst(c, forget) for a, c in b.coeffs.items()
        })
        assert qsym_equal(llt, llt_unicellular(g, route="colorings"))


def test_b_diagonal_is_tutte():
    """Clearing denominators, the multivariate Tutte polynomial on the
    diagonal equals the two-parameter sum with both parameters equal."""
    one_minus_y = {(0, 0, 0): Fraction(1), (0, 1, 0): Fraction(-1)}
    for g in [DirectedGraph(2, ((0, 1),)), path_graph(3), complete_graph(3),
              cycle_graph(4)]:
        m = len(g.edges)
        tutte = tutte_multivariate(g, route="subsets")
        lhs_terms = {}
        for lam, c in tutte.coeffs.items():
            poly = {}
            for (eq, _, _), v in c.items():
                term = pp_const(v)
                for _ in range(eq):
                    term = pp_mul(term, one_minus_y)
                term = pp_mul(term, {(0, m - eq, 0): Fraction(1)})
                poly = pp_add(poly, term)
            lhs_terms[lam] = poly
        lhs = sym_to_qsym(make_sym("p", g.n, lhs_terms))
        b = b_polynomial(g, route="colorings")
        rhs = make_qsym("M", g.n, {
            a: pp_subst(c, {"z": pp_var("y")}) for a, c in b.coeffs.items()
        })
        assert qsym_equal(lhs, rhs)


def test_tutte_fixtures():
    assert tutte_multivariate(DirectedGraph(3, ())).coeffs == {
        (1, 1, 1): pp_const(1)
    }
    assert tutte_multivariate(DirectedGraph(2, ((0, 1),))).coeffs == {
        (1, 1): pp_const(1),
        (2,): q_power(1),
    }
    assert tutte_multivariate(complete_graph(3)).coeffs == {
        (1, 1, 1): pp_const(1),
        (2, 1): qpoly(0, 3),
        (3,): qpoly(0, 0, 3, 1),
    }


def test_tutte_routes_agree():
    for g in all_digraphs(3, antiparallel=False):
        tutte_multivariate(g)  # route="all" cross-checks internally
    tutte_multivariate(cycle_graph(4))


# ---------------------------------------------------------------------------
# matroids
# ---------------------------------------------------------------------------


def test_matroid_validation():
    with pytest.raises(ValueError):
        make_matroid(4, [(0, 1), (2, 3)])  # exchange fails
    with pytest.raises(ValueError):
        make_matroid(2, [])
    with pytest.raises(ValueError):
        make_matroid(2, [(0,), (0, 1)])
    m = make_matroid(3, [(0, 1), (0, 2), (1, 2)])
    assert m.rank == 2


def test_uniform_rank_one_pair():
    """On two elements with rank one, generic means injective and F counts
    the two orders."""
    m = uniform_matroid(2, 1)
    assert qsym_equal(matroid_f(m), make_qsym("M", 2, {(1, 1): pp_const(2)}))


def test_uniform_rank_one_triple():
    m = uniform_matroid(3, 1)
    expected = make_qsym("M", 3, {(1, 2): pp_const(3), (1, 1, 1): pp_const(6)})
    assert qsym_equal(matroid_f(m), expected)
    expansion = matroid_psi(m)
    closed = uniform_matroid_psi_closed_form(3, 1)
    assert qsym_equal(expansion.element, closed)


def test_generic_maps_need_not_be_injective():
    """A weight map with a repeated value can still select a unique minimal
    basis."""
    m = uniform_matroid(3, 1)
    assert is_generic(m, (1, 2, 2))
    assert next(noninjective_generic_maps(m)) == (1, 2, 2)
    with pytest.raises(ValueError):
        is_generic(m, (1, 2))
    with pytest.raises(ValueError):
        is_generic(m, (0, 1, 2))


def test_uniform_matroid_closed_form_small():
    """Both matroid routes match the corrected closed form for all uniform
    matroids on up to five elements."""
    for n in range(1, 6):
        for r in range(1, n + 1):
            m = uniform_matroid(n, r)
            expansion = matroid_psi(m)
            assert expansion.positive or n == r  # free matroid also positive
            assert qsym_equal(
                expansion.element, uniform_matroid_psi_closed_form(n, r)
            )


def test_uniform_matroid_leading_coefficient():
    """The coefficient of the all-ones index is 1; inflating it to n (a
    natural slip when the symmetry factor of (1^n) is dropped) breaks the
    identity for every n >= 2."""
    n, r = 4, 2
    closed = uniform_matroid_psi_closed_form(n, r)
    assert as_int(closed.coeffs[(1,) * n]) == 1
    wrong = dict(closed.coeffs)
    wrong[(1,) * n] = pp_const(n)
    assert not qsym_equal(
        make_qsym("Psi", n, wrong), matroid_psi(uniform_matroid(n, r)).element
    )


def test_non_uniform_matroid_routes():
    """A graphic matroid (triangle plus pendant edge) runs both routes."""
    m = make_matroid(4, [
        (0, 1, 3), (0, 2, 3), (1, 2, 3),
    ])
    expansion = matroid_psi(m)
    assert expansion.positive
    assert qsym_equal(to_basis(omega(matroid_f(m)), "Psi"), expansion.element)


# ---------------------------------------------------------------------------
# Eulerian quasisymmetric functions
# ---------------------------------------------------------------------------


def banners(n, j, m):
    """Brute-force banner enumeration with letters bounded by m: words over
    barred/unbarred letters, weakly decreasing out of barred positions,
    weakly increasing out of unbarred ones, last letter unbarred, exactly j
    bars."""
    counts = {}
    for letters in itertools.product(range(1, m + 1), repeat=n):
        for bars in itertools.product((False, True), repeat=n):
            if bars[n - 1] or sum(bars) != j:
                continue
            ok = True
            for i in range(n - 1):
                if bars[i]:
                    ok = letters[i] >= letters[i + 1]
                else:
                    ok = letters[i] <= letters[i + 1]
                if not ok:
                    break
            if ok:
                vec = [0] * m
                for a in letters:
                    vec[a - 1] += 1
                key = tuple(vec)
                counts[key] = counts.get(key, 0) + 1
    return counts


def test_eulerian_banner_oracle():
    """The permutation route agrees with banner enumeration after truncating
    to n variables."""
    for n in range(1, 5):
        for j, element in eulerian_q(n).items():
            truncated = {
                vec: as_int(c) for vec, c in expand_truncated(element, n).items()
            }
            truncated = {v: c for v, c in truncated.items() if c}
            assert truncated == banners(n, j, n), (n, j)


def test_eulerian_fixtures():
    assert set(eulerian_q(1)) == {0}
    assert qsym_equal(eulerian_q(1)[0], make_qsym("M", 1, {(1,): pp_const(1)}))
    assert qsym_equal(eulerian_q(3)[0], h_qsym((3,)))


def test_eulerian_routes_agree():
    """Permutation, zigzag-poset and closed-form routes give the same
    generating function."""
    for n in range(1, 6):
        by_perm = eulerian_q(n)
        by_poset = eulerian_zigzag_q(n)
        assert set(by_perm) == set(by_poset)
        for j in by_perm:
            assert qsym_equal(by_perm[j], by_poset[j]), (n, j)
        assert qsym_equal(eulerian_generating(n), eulerian_closed_form(n))


def test_path_surjection_counts():
    """Summing starred-surjection counts over all up-down posets of a path
    weighted by the number of descent positions factors as an Eulerian
    polynomial times a product of integer brackets."""
    for n in range(1, 6):
        certs = {}
        for r in range(n):
            for down in itertools.combinations(range(1, n), r):
                report = kp_psi(zigzag_path(set(down), n), route="Ostar")
                for a, c in report.certificates.items():
                    certs[a] = pp_add(certs.get(a, {}), pp_scale(q_power(r), as_int(c)))
        for a in compositions(n):
            expected = eulerian_poly(len(a))
            for part in a:
                expected = pp_mul(expected, q_int(part))
            assert certs.get(a, {}) == expected, a


def test_chromatic_path_equals_eulerian_generating():
    """The orientation expansion of the directed path reproduces the
    generating function of the permutation statistics."""
    for n in range(2, 6):
        expansion = chromatic_psi(path_graph(n))
        lhs = expansion.element
        rhs = to_basis(eulerian_generating(n), "Psi")
        assert qsym_equal(lhs, rhs)


# ---------------------------------------------------------------------------
# cycle Eulerian quasisymmetric functions
# ---------------------------------------------------------------------------


def necklaces(n, j, m):
    """Brute-force primitive circular words with letters bounded by m:
    cyclically monotone out of each position by bar status, exactly j bars,
    all rotations distinct, counted up to rotation; a 1-cycle must be
    unbarred."""
    seen = set()
    counts = {}
    for letters in itertools.product(range(1, m + 1), repeat=n):
        for bars in itertools.product((False, True), repeat=n):
            if sum(bars) != j:
                continue
            if n == 1 and bars[0]:
                continue
            word = tuple(zip(letters, bars))
            rotations = {word[k:] + word[:k] for k in range(n)}
            if len(rotations) != n:  # not primitive
                continue
            if min(rotations) in seen:
                continue
            ok = True
            for i in range(n):
                a, barred = word[i]
                b, _ = word[(i + 1) % n]
                ok = a >= b if barred else a <= b
                if not ok:
                    break
            if not ok:
                continue
            seen.add(min(rotations))
            vec = [0] * m
            for a in letters:
                vec[a - 1] += 1
            key = tuple(vec)
            counts[key] = counts.get(key, 0) + 1
    return counts


def test_cycle_eulerian_necklace_oracle():
    """The long-cycle route agrees with primitive circular-word enumeration
    after truncation."""
    for n in range(1, 5):
        elements = cycle_eulerian_q(n)
        for m in (2, 3, 4):
            for j in range(n):
                expected = necklaces(n, j, m)
                element = elements.get(j)
                got = {}
                if element is not None:
                    got = {
                        vec: as_int(c)
                        for vec, c in expand_truncated(element, m).items()
                    }
                    got = {v: c for v, c in got.items() if c}
                assert got == expected, (n, j, m)


def test_cycle_eulerian_fixtures():
    assert qsym_equal(
        cycle_eulerian_q(1)[0], make_qsym("M", 1, {(1,): pp_const(1)})
    )
    assert qsym_equal(cycle_eulerian_q(2)[1], h_qsym((2,)))
    assert len(list(long_cycles(4))) == 6


def test_cycle_word_decomposition():
    """The cyclic-word generating function splits as a power sum plus the
    expansion of the directed cycle."""
    for n in range(3, 6):
        wx = omega(chromatic_x(cycle_graph(n), route="orientations"))
        lhs = cycle_word_generating(n)
        rhs = qsym_add(to_basis(p_qsym((n,)), "M"), to_basis(wx, "M"))
        assert qsym_equal(lhs, rhs)


def test_cycle_word_closed_form():
    for n in range(1, 7):
        assert qsym_equal(cycle_word_generating(n), cycle_word_closed_form(n))


def test_cycle_eulerian_inversion_routes():
    """Moebius inversion of the cyclic-word route recovers the long-cycle
    enumeration, and the divisor-sum closed form matches for n >= 2."""
    for n in range(1, 7):
        assert qsym_equal(cycle_eulerian_moebius(n), cycle_eulerian_generating(n))
    for n in range(2, 7):
        assert qsym_equal(
            cycle_eulerian_closed_form(n), cycle_eulerian_generating(n)
        )


def test_cycle_eulerian_closed_form_fails_at_one():
    """At n = 1 the divisor-sum closed form produces an extra factor of q;
    the true value is the single fixed point with no excedance."""
    closed = cycle_eulerian_closed_form(1)
    true = cycle_eulerian_generating(1)
    assert qsym_equal(true, to_basis(p_qsym((1,)), "M"))
    assert not qsym_equal(closed, true)
    assert qsym_equal(closed, qsym_scale(to_basis(p_qsym((1,)), "Psi"), q_power(1)))


def test_forward_divisor_identity():
    """Substituting powers into the long-cycle functions and summing over
    divisors rebuilds the cyclic-word generating function."""
    for n in range(1, 7):
        total = None
        for d in [d for d in range(1, n + 1) if n % d == 0]:
            for j, element in cycle_eulerian_q(d).items():
                term = qsym_scale(
                    power_substitution(element, n // d),
                    pp_scale(q_power(j * n // d), d),
                )
                total = term if total is None else qsym_add(total, term)
        assert qsym_equal(total, cycle_word_generating(n))


def test_amusing_divisor_identity():
    """Moebius-weighted brackets are invariant under the extra power shift
    for n >= 2, and differ exactly at n = 1."""

    def moebius(k):
        result, d, left = 1, 2, k
        while d * d <= left:
            if left % d == 0:
                left //= d
                if left % d == 0:
                    return 0
                result = -result
            d += 1
        if left > 1:
            result = -result
        return result

    for n in range(2, 31):
        lhs, rhs = {}, {}
        for d in [d for d in range(1, n + 1) if n % d == 0]:
            mu = moebius(d)
            if mu == 0:
                continue
            bracket = pp_subst(q_int(n // d), {"q": q_power(d)})
            lhs = pp_add(lhs, pp_scale(bracket, mu))
            rhs = pp_add(rhs, pp_scale(pp_mul(q_power(d), bracket), mu))
        assert lhs == rhs, n
    assert pp_const(1) != q_power(1)  # the n = 1 instance separates them


def test_cycle_surjection_counts():
    """Starred-surjection counts of cyclic up-down posets obey the two
    closed forms: nq[n-1]_q at the one-part index, and an Eulerian factor
    for longer indices."""
    for n in range(3, 7):
        certs = {}
        for r in range(1, n):
            for down in itertools.combinations(range(1, n + 1), r):
                poset = zigzag_cycle(set(down), n)
                report = kp_psi(poset, route="Ostar")
                for a, c in report.certificates.items():
                    certs[a] = pp_add(certs.get(a, {}), pp_scale(q_power(r), as_int(c)))
        expected_one_part = pp_scale(pp_mul(q_power(1), q_int(n - 1)), n)
        assert certs[(n,)] == expected_one_part
        if n <= 5:
            for a in compositions(n):
                if len(a) < 2:
                    continue
                expected = pp_scale(
                    pp_mul(q_power(1), eulerian_poly(len(a) - 1)), n
                )
                for part in a:
                    expected = pp_mul(expected, q_int(part))
                assert certs.get(a, {}) == expected, a


# ---------------------------------------------------------------------------
# Schur expansions
# ---------------------------------------------------------------------------


def test_roichman_fixtures():
    assert roichman_coeff((3, 3), (2, 2, 2)) == -3
    assert roichman_coeff((4,), (4,)) == 1
    assert roichman_coeff((1, 1, 1), (1, 1, 1)) == 1
    with pytest.raises(ValueError):
        roichman_coeff((3, 3), (2, 2))


def test_roichman_matches_power_expansion():
    """The signed tableau sums equal the symmetrized power-sum coefficients
    scaled by the stabilizer order, for every shape pair of degree five."""
    for lam in partitions(5):
        sp = to_sym(schur(lam), "p")
        for mu in partitions(5):
            coeff = sp.coeffs.get(mu, {})
            expected = Fraction(roichman_coeff(lam, mu), z_of(mu))
            assert coeff.get((0, 0, 0), Fraction(0)) == expected, (lam, mu)


def test_schur_is_fundamental_positive():
    for lam in [(3, 1), (2, 2), (2, 1, 1)]:
        fundamental = to_basis(schur(lam), "F")
        assert all(as_int(c) > 0 for c in fundamental.coeffs.values())


# ---------------------------------------------------------------------------
# graph enumeration and rooted trees
# ---------------------------------------------------------------------------


def test_digraph_counts():
    assert len(all_digraphs(2)) == 3
    assert len(all_digraphs(3)) == 16
    assert len(all_digraphs(3, antiparallel=False)) == 7
    assert [len(oriented_graphs(n)) for n in (1, 2, 3, 4)] == [1, 2, 7, 42]


def test_rooted_tree_counts():
    assert [len(rooted_trees(n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]
    for tree in rooted_trees(5):
        assert tree.n == 5
        assert len(tree.edges) == 4
        # edges point away from the root, vertex 0
        children = {v for _, v in tree.edges}
        assert 0 not in children and len(children) == 4


def test_rooted_trees_distinguished():
    """Chromatic functions separate rooted trees, and the top coefficient is
    the strict expansion of the tree order."""
    for n in range(1, 6):
        report = distinguishes_rooted_trees(n)
        assert report.count == len(rooted_trees(n))
        assert report.all_distinct
        assert report.top_coefficient_matches
    with pytest.raises(ValueError):
        distinguishes_rooted_trees(9)
