"""Tests for alpha-unimodal sets and consistent permutations.

The predicates are checked against independent brute-force oracles: the
descent sets of blockwise-unimodal permutations, the one-step neighbour
criterion, and zeta-matrix inversion for the Moebius values.
"""

import itertools
from fractions import Fraction
from math import factorial

import pytest

from qsymkit.compositions import (
    comp_to_set,
    compositions,
    pi_rel,
    refines,
    set_to_comp,
)
from qsymkit.unimodal import (
    cons_alternating_sum,
    cons_count,
    count_V,
    count_unimodal,
    enumerate_V,
    enumerate_cons,
    enumerate_unimodal,
    hook_forest,
    is_alpha_unimodal,
    is_consistent,
    moebius_unimodal,
    pair_gf_series,
    pair_stats_enumeration,
    unimodal_pair_count,
    v_sublattice_witness,
)


def descent_set(sigma):
    return frozenset(i + 1 for i in range(len(sigma) - 1) if sigma[i] > sigma[i + 1])


def word_is_unimodal(word):
    # strictly decreasing, then strictly increasing (descents form a prefix)
    k = 0
    while k + 1 < len(word) and word[k] > word[k + 1]:
        k += 1
    return all(word[i] < word[i + 1] for i in range(k, len(word) - 1))


def perm_is_alpha_unimodal(sigma, alpha):
    start = 0
    for part in alpha:
        if not word_is_unimodal(sigma[start : start + part]):
            return False
        start += part
    return True


def unimodal_sets_by_witness(alpha):
    """Descent sets of alpha-unimodal permutations: the defining property."""
    n = sum(alpha)
    found = set()
    for sigma in itertools.permutations(range(1, n + 1)):
        if perm_is_alpha_unimodal(sigma, alpha):
            found.add(descent_set(sigma))
    return found


def neighbour_criterion(subset, alpha):
    """Second oracle: every hit outside the boundary set needs its left
    neighbour hit or on the boundary (0 counts as boundary)."""
    boundary = comp_to_set(alpha) | {0}
    return all(k - 1 in subset or k - 1 in boundary for k in subset - set(boundary))


def test_fixture_33():
    listed = [
        set(),
        {1},
        {3},
        {4},
        {1, 2},
        {1, 3},
        {1, 4},
        {3, 4},
        {4, 5},
        {1, 2, 3},
        {1, 2, 4},
        {1, 3, 4},
        {1, 4, 5},
        {3, 4, 5},
        {1, 2, 3, 4},
        {1, 2, 4, 5},
        {1, 3, 4, 5},
        {1, 2, 3, 4, 5},
    ]
    got = enumerate_unimodal((3, 3))
    assert sorted(map(sorted, got)) == sorted(map(sorted, listed))
    assert count_unimodal((3, 3)) == 18


def test_witness_oracle_n6():
    for alpha in compositions(6):
        expected = unimodal_sets_by_witness(alpha)
        for bits in itertools.product((0, 1), repeat=5):
            subset = frozenset(i + 1 for i, b in enumerate(bits) if b)
            want = subset in expected
            assert is_alpha_unimodal(subset, alpha) == want
            assert neighbour_criterion(subset, alpha) == want


def test_boundary_sets_are_unimodal():
    for alpha in compositions(6):
        for beta in compositions(6):
            if refines(alpha, beta):
                assert is_alpha_unimodal(comp_to_set(beta), alpha)


def test_counts_match_enumeration():
    for n in range(0, 10):
        for alpha in compositions(n):
            parts_product = 1
            for part in alpha:
                parts_product *= part
            expected = (2 ** (len(alpha) - 1)) * parts_product if alpha else 1
            assert count_unimodal(alpha) == expected
            if n <= 9:
                assert len(enumerate_unimodal(alpha)) == expected


def test_subset_rejection():
    with pytest.raises(ValueError):
        is_alpha_unimodal({5}, (2, 3))


def test_refinement_reverses_inclusion():
    for n in range(1, 8):
        comps = list(compositions(n))
        families = {alpha: set(enumerate_unimodal(alpha)) for alpha in comps}
        for alpha in comps:
            for beta in comps:
                if refines(alpha, beta):
                    assert families[beta] <= families[alpha]


def test_union_intersection_closure():
    for n in range(1, 9):
        for alpha in compositions(n):
            family = set(enumerate_unimodal(alpha))
            members = sorted(family, key=sorted)
            for a in members:
                for b in members:
                    assert a | b in family
                    assert a & b in family


def invert_zeta(family):
    """Moebius values mu(bottom, S) of the inclusion order on `family`."""
    members = sorted(family, key=lambda s: (len(s), sorted(s)))
    mu = {}
    for s in members:
        if not s:
            mu[s] = 1
        else:
            mu[s] = -sum(mu[t] for t in members if t < s)
    return mu


def test_moebius_against_zeta_inversion():
    for alpha in compositions(6):
        family = set(enumerate_unimodal(alpha))
        mu = invert_zeta(family)
        for s in family:
            assert moebius_unimodal(alpha, s) == mu[s]


def test_moebius_fixtures():
    assert moebius_unimodal((3, 3), frozenset()) == 1
    assert moebius_unimodal((3, 3), {3, 4}) == 1
    assert moebius_unimodal((3, 3), {1, 2}) == 0
    with pytest.raises(ValueError):
        moebius_unimodal((3, 3), {2})


def test_V_counts():
    assert count_V((3, 3)) == 24
    for n in range(1, 9):
        for alpha in compositions(n):
            members = enumerate_V(alpha)
            assert len(members) == count_V(alpha)
            for gamma in members:
                assert is_alpha_unimodal(comp_to_set(alpha), gamma)
    assert count_V((1, 1, 1, 1)) == 8


def test_V_is_order_ideal():
    for n in range(1, 8):
        comps = list(compositions(n))
        for alpha in comps:
            family = set(enumerate_V(alpha))
            for gamma in family:
                for delta in comps:
                    if refines(delta, gamma):
                        assert delta in family


def test_V_not_sublattice_witness():
    # the ideal is generally not closed under joins/meets; verify a found
    # witness honestly rather than fixing its value
    witness = None
    for n in range(2, 7):
        for alpha in compositions(n):
            witness = v_sublattice_witness(alpha)
            if witness is not None:
                gamma, delta, kind = witness
                family = set(enumerate_V(alpha))
                assert gamma in family and delta in family
                # `kind` names the lattice operation that fails; in the
                # refinement order join = intersection of boundary sets,
                # meet = union
                sets = (comp_to_set(gamma), comp_to_set(delta))
                combined = sets[0] & sets[1] if kind == "join" else sets[0] | sets[1]
                assert set_to_comp(combined, n) not in family
                return
    pytest.fail("no sublattice-violation witness found for any alpha up to n=6")


def test_pair_counts():
    values = [unimodal_pair_count(n) for n in range(1, 8)]
    assert values[:5] == [1, 4, 15, 56, 209]
    for n in range(3, 8):
        assert values[n - 1] == 4 * values[n - 2] - values[n - 3]


def test_pair_gf_matches_enumeration():
    series = pair_gf_series(6)
    for n in range(1, 7):
        assert series[n] == pair_stats_enumeration(n)
    # spot value: q^1 t^2 z^3 counts (alpha of 3 with 2 parts, |S| = 1)
    count = sum(
        1
        for alpha in compositions(3)
        if len(alpha) == 2
        for s in enumerate_unimodal(alpha)
        if len(s) == 1
    )
    assert series[3][(1, 2)] == count


def test_consistency_fixtures():
    alpha, beta = (1, 2, 1, 2, 3), (3, 1, 5)
    assert is_consistent((4, 3, 8, 7, 5, 6, 2, 1, 9), alpha, beta)
    assert not is_consistent((4, 3, 8, 7, 6, 5, 2, 1, 9), alpha, beta)
    assert not is_consistent((4, 3, 8, 7, 5, 9, 2, 1, 6), alpha, beta)
    with pytest.raises(ValueError):
        is_consistent((1, 2, 3), (2, 1), (1, 2))


def test_cons_counts():
    assert cons_count((2, 3, 1, 2), (6, 2)) == 336
    # 3!/pi_rel((3),(3)) = 6/3: the block maximum sits last, the rest is free
    assert sorted(enumerate_cons((3,), (3,))) == [(1, 2, 3), (2, 1, 3)]
    assert enumerate_cons((1, 1, 1), (3,)) == [(1, 2, 3)]
    for n in range(1, 8):
        for beta in compositions(n):
            for alpha in compositions(n):
                if refines(alpha, beta):
                    assert cons_count(alpha, beta) * pi_rel(alpha, beta) == factorial(n)


def test_enumerate_cons_matches_filter():
    for n in range(1, 7):
        for beta in compositions(n):
            for alpha in compositions(n):
                if not refines(alpha, beta):
                    continue
                listed = enumerate_cons(alpha, beta)
                filtered = [
                    sigma
                    for sigma in itertools.permutations(range(1, n + 1))
                    if is_consistent(sigma, alpha, beta)
                ]
                assert sorted(listed) == filtered
                assert len(listed) == cons_count(alpha, beta)


def test_forest_route_agrees_with_filter():
    # force both code paths on the same midsize inputs
    from qsymkit.unimodal import _forest_value_assignments

    for alpha, beta in (((2, 3, 1, 2), (6, 2)), ((1, 2, 1, 2), (3, 1, 2)), ((2, 2), (4,))):
        n = sum(alpha)
        forest_route = sorted(_forest_value_assignments(hook_forest(alpha, beta)))
        filter_route = [
            sigma
            for sigma in itertools.permutations(range(1, n + 1))
            if is_consistent(sigma, alpha, beta)
        ]
        assert forest_route == filter_route


def test_hook_forest_fixture():
    forest = hook_forest((2, 3, 1, 2), (6, 2))
    assert sorted(forest.hook.values()) == [1, 1, 1, 1, 2, 2, 5, 6]
    assert forest.hook_product() == pi_rel((2, 3, 1, 2), (6, 2)) == 120
    # all-singleton case: no edges at all
    trivial = hook_forest((1, 1, 1), (1, 1, 1))
    assert trivial.parent == {}
    assert trivial.hook_product() == 1


def test_hook_product_is_pi_rel():
    for n in range(1, 8):
        for beta in compositions(n):
            for alpha in compositions(n):
                if refines(alpha, beta):
                    assert hook_forest(alpha, beta).hook_product() == pi_rel(alpha, beta)


def test_cons_alternating_sum():
    assert cons_alternating_sum((2, 1), (3,)) == 6
    assert cons_alternating_sum((2, 1), (2, 1)) == 6
    assert cons_alternating_sum((2, 1), (1, 2)) == 0
    for n in range(1, 7):
        for beta in compositions(n):
            for gamma in compositions(n):
                expected = factorial(n) if refines(beta, gamma) else 0
                assert cons_alternating_sum(beta, gamma) == expected
