"""Generating functions of order-preserving maps out of labeled posets.

For a labeled poset the generating function sums one monomial per weakly
order-preserving map into the positive integers.  The module computes its
expansion in all three bases through independent routes and cross-checks
them against each other:

* the fundamental route sums one fundamental element per linear extension,
  keyed by the descent set of its word;
* the certificate routes expand over the power-sum-like basis with
  coefficients counted by starred linear extensions or, equivalently, by
  starred order-preserving surjections;
* a brute-force oracle enumerates colorings with n colors, which pins down
  a degree-n element exactly.

Variants cover strict maps via the complement involution, maps constant on
the blocks of an equivalence, and weighted exponents, including the closure
of an arbitrary equivalence to one whose blocks are chains.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .coeffs import pp_as_fraction, pp_const
from .compositions import Composition, compositions, z_of
from .posets import (
    Equivalence,
    LabeledPoset,
    descent_set,
    chain_congruence_closure,
    is_chain_congruence,
    l_star_alpha,
    linear_extensions,
    make_equivalence,
    poset_from_relations,
    star_surjections,
    unique_minimum,
)
from .posets import _block_vertices, _surjections_by_type
from .qsym import (
    QSymElement,
    expand_truncated,
    fundamental_of_set,
    make_qsym,
    qsym_add,
    qsym_equal,
    qsym_sub,
    to_basis,
)

ROUTES = ("all", "F", "Lstar", "Ostar")


@dataclass(frozen=True)
class PartitionExpansionReport:
    """An expansion over the power-sum-like basis with its certificates.

    Each coefficient equals certificate / z_alpha exactly; the positivity
    flag records whether every certificate is nonnegative.  When the input
    equivalence had to be closed first, the closed poset and equivalence
    are attached.
    """

    element: QSymElement
    certificates: Dict[Composition, int]
    positive: bool
    closure: Optional[Tuple[LabeledPoset, Equivalence]] = None

    def __post_init__(self) -> None:
        if self.element.basis != "Psi":
            raise ValueError("report elements live in the Psi basis")
        for alpha, cert in self.certificates.items():
            coeff = self.element.coefficient(alpha)
            if pp_as_fraction(coeff) != Fraction(cert, z_of(alpha)):
                raise ValueError(
                    f"certificate {cert} for {alpha} does not match the "
                    f"coefficient"
                )
        for alpha in self.element.support():
            if alpha not in self.certificates:
                raise ValueError(f"missing certificate for {alpha}")


def _report(
    n: int,
    certificates: Dict[Composition, int],
    closure: Optional[Tuple[LabeledPoset, Equivalence]] = None,
) -> PartitionExpansionReport:
    terms = {
        alpha: Fraction(cert, z_of(alpha))
        for alpha, cert in certificates.items()
        if cert
    }
    element = make_qsym("Psi", n, terms)
    kept = {alpha: cert for alpha, cert in certificates.items() if cert}
    positive = all(cert >= 0 for cert in kept.values())
    return PartitionExpansionReport(element, kept, positive, closure)


def _require_natural(p: LabeledPoset) -> None:
    if not p.is_natural():
        raise ValueError("this expansion requires a natural labeling")


# ---------------------------------------------------------------------------
# the plain generating function


def kp_fundamental(p: LabeledPoset) -> QSymElement:
    """The expansion over the fundamental basis: one term per linear
    extension, keyed by the descent set of its word.  Any bijective
    labeling is allowed."""
    total: Dict[Composition, int] = {}
    for sigma in linear_extensions(p):
        term = fundamental_of_set(p.n, descent_set(sigma))
        for alpha in term.coeffs:
            total[alpha] = total.get(alpha, 0) + 1
    return make_qsym("F", p.n, total)


def kp_psi(p: LabeledPoset, route: str = "all") -> PartitionExpansionReport:
    """The certificate expansion of the generating function of a naturally
    labeled poset.

    With route "all" the fundamental, starred-extension and
    starred-surjection routes are all computed and must agree; a single
    route may be selected for speed.
    """
    _require_natural(p)
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}, got {route!r}")
    results: Dict[str, Dict[Composition, int]] = {}
    if route in ("all", "Lstar"):
        results["Lstar"] = {
            alpha: len(l_star_alpha(p, alpha)) for alpha in compositions(p.n)
        }
    if route in ("all", "Ostar"):
        results["Ostar"] = {
            alpha: len(star_surjections(p, alpha)) for alpha in compositions(p.n)
        }
    if route in ("all", "F"):
        element = to_basis(kp_fundamental(p), "Psi")
        certs = {}
        for alpha in element.support():
            scaled = pp_as_fraction(element.coefficient(alpha)) * z_of(alpha)
            if scaled.denominator != 1:
                raise AssertionError(
                    f"certificate for {alpha} is not an integer: {scaled}"
                )
            certs[alpha] = int(scaled)
        results["F"] = certs
    cleaned = {
        name: {alpha: c for alpha, c in certs.items() if c}
        for name, certs in results.items()
    }
    reference = next(iter(cleaned.values()))
    if any(certs != reference for certs in cleaned.values()):
        raise AssertionError(f"certificate routes disagree: {cleaned}")
    return _report(p.n, reference)


def kp_monomial_oracle(
    p: LabeledPoset, upper: Optional[int] = None
) -> QSymElement:
    """The monomial expansion: the coefficient of each composition counts
    the order-preserving surjections with those fiber sizes.  A second,
    independent oracle enumerates colorings with ``upper`` colors
    (defaulting to the element count) and must match the truncated
    expansion."""
    grouped = _surjections_by_type(p.leq)
    element = make_qsym(
        "M", p.n, {alpha: len(values) for alpha, values in grouped.items()}
    )
    m = p.n if upper is None else upper
    colored = truncated_colorings(p, m)
    expanded = expand_truncated(element, m)
    wrapped = {key: pp_const(count) for key, count in colored.items()}
    if expanded != wrapped:
        raise AssertionError("surjection counts disagree with the coloring oracle")
    return element


def truncated_colorings(
    p: LabeledPoset,
    m: int,
    strict: bool = False,
    classes: Optional[Equivalence] = None,
    weights: Optional[Sequence[int]] = None,
) -> Dict[Tuple[int, ...], int]:
    """Brute-force enumeration of order-preserving maps into 1..m.

    Returns the exponent vector of each monomial with its multiplicity.
    ``strict`` demands strict growth along the order, ``classes`` forces
    the map to be constant on each block, and ``weights`` scales the
    exponent contributed by each vertex.
    """
    cover_pairs = p.covers()
    weight = tuple(weights) if weights is not None else (1,) * p.n
    out: Dict[Tuple[int, ...], int] = {}
    if classes is not None:
        if classes.n != p.n:
            raise ValueError(
                f"equivalence on {classes.n} elements, poset has {p.n}"
            )
        groups = [list(block) for block in classes.blocks]
    else:
        groups = [[x] for x in range(p.n)]
    for values in itertools.product(range(1, m + 1), repeat=len(groups)):
        coloring = [0] * p.n
        for group, value in zip(groups, values):
            for x in group:
                coloring[x] = value
        ok = all(
            coloring[x] < coloring[y] if strict else coloring[x] <= coloring[y]
            for x, y in cover_pairs
        )
        if not ok:
            continue
        exps = [0] * m
        for x in range(p.n):
            exps[coloring[x] - 1] += weight[x]
        key = tuple(exps)
        out[key] = out.get(key, 0) + 1
    return out


# ---------------------------------------------------------------------------
# strict maps via the complement involution


def kp_omega_strict(p: LabeledPoset) -> PartitionExpansionReport:
    """The certificate expansion of the complement involution applied to
    the generating function of an order-reversing labeling; equivalently,
    of the strict-map generating function read through the involution.

    Computed by complementing the labels, which produces a natural
    labeling."""
    if any(
        p.labels[x] <= p.labels[y]
        for x in range(p.n)
        for y in range(p.n)
        if p.less(x, y)
    ):
        raise ValueError("this expansion requires an order-reversing labeling")
    flipped = p.relabeled([p.n + 1 - value for value in p.labels])
    return kp_psi(flipped)


# ---------------------------------------------------------------------------
# maps constant on the blocks of an equivalence


def _weighted_star_extensions(
    p: LabeledPoset, e: Equivalence, alpha: Composition
) -> int:
    total = 0
    for sigma in l_star_alpha(p, alpha):
        blocks = _block_vertices(p, sigma, alpha)
        if any(
            not any(set(e.block_of(x)) <= block for block in blocks)
            for x in range(p.n)
        ):
            continue
        product = 1
        for block in blocks:
            product *= len(e.block_of(unique_minimum(p, block)))
        total += product
    return total


def _weighted_star_surjections(
    p: LabeledPoset, e: Equivalence, alpha: Composition
) -> int:
    total = 0
    for f in star_surjections(p, alpha):
        if any(
            f.values[x] != f.values[block[0]]
            for block in e.blocks
            for x in block
        ):
            continue
        product = 1
        for fiber in f.fibers():
            product *= len(e.block_of(unique_minimum(p, fiber)))
        total += product
    return total


def kpe_psi(
    p: LabeledPoset, e: Equivalence, route: str = "all"
) -> PartitionExpansionReport:
    """The certificate expansion of the generating function of maps
    constant on the blocks of an equivalence.

    If the blocks are not chains ordered compatibly, the equivalence is
    first closed (which preserves the generating function) and the closure
    is attached to the report.  Certificates weight each starred object by
    the product of the block sizes of the fiber minima.
    """
    _require_natural(p)
    if e.n != p.n:
        raise ValueError(f"equivalence on {e.n} elements, poset has {p.n}")
    if route not in ("all", "Lstar", "Ostar"):
        raise ValueError(f"route must be all, Lstar or Ostar, got {route!r}")
    closure = None
    if not is_chain_congruence(p, e):
        p, e = chain_congruence_closure(p, e)
        closure = (p, e)
    results: Dict[str, Dict[Composition, int]] = {}
    if route in ("all", "Lstar"):
        results["Lstar"] = {
            alpha: _weighted_star_extensions(p, e, alpha)
            for alpha in compositions(p.n)
        }
    if route in ("all", "Ostar"):
        results["Ostar"] = {
            alpha: _weighted_star_surjections(p, e, alpha)
            for alpha in compositions(p.n)
        }
    cleaned = {
        name: {alpha: c for alpha, c in certs.items() if c}
        for name, certs in results.items()
    }
    reference = next(iter(cleaned.values()))
    if any(certs != reference for certs in cleaned.values()):
        raise AssertionError(f"certificate routes disagree: {cleaned}")
    report = _report(p.n, reference, closure)
    if route == "all":
        for blk in e.blocks:
            if len(blk) < 2:
                continue
            pieces = [
                kpe_psi(q, f, route="Ostar").element
                for q, f in kpe_recursion_split(p, e, blk)
            ]
            combo = qsym_sub(qsym_add(pieces[0], pieces[1]), pieces[2])
            if not qsym_equal(report.element, combo):
                raise AssertionError(f"recursion cross-check failed on block {blk}")
    return report


def kpe_recursion_split(
    p: LabeledPoset, e: Equivalence, block: Tuple[int, ...]
) -> Tuple[
    Tuple[LabeledPoset, Equivalence],
    Tuple[LabeledPoset, Equivalence],
    Tuple[LabeledPoset, Equivalence],
]:
    """The three smaller inputs whose generating functions recombine to the
    one of (p, e): the first two split the top or the bottom off the chosen
    block, the third also cuts the order relations from the rest of the
    block up to its top.  The inclusion-exclusion
    first + second - third recovers the original."""
    members = sorted(block, key=lambda v: sum(p.leq[u][v] for u in range(p.n)))
    if len(members) < 2:
        raise ValueError("the recursion needs a block with at least 2 elements")
    bottom, top = members[0], members[-1]
    others = [b for b in e.blocks if set(b) != set(block)]
    split_bottom = make_equivalence(
        p.n, others + [(bottom,), tuple(x for x in block if x != bottom)]
    )
    split_top = make_equivalence(
        p.n, others + [(top,), tuple(x for x in block if x != top)]
    )
    relations = [
        (x, y)
        for x in range(p.n)
        for y in range(p.n)
        if p.less(x, y) and not (y == top and x in block)
    ]
    cut = poset_from_relations(p.n, relations, labels=p.labels)
    return (p, split_top), (p, split_bottom), (cut, split_top)


# ---------------------------------------------------------------------------
# weighted exponents


def kpd_psi(
    p: LabeledPoset, d: Sequence[int], route: str = "all"
) -> PartitionExpansionReport:
    """The certificate expansion of the weighted generating function in
    which each vertex contributes its weight to the exponent of its color.

    For positive weights both starred routes are computed per the image
    composition of weight sums and checked against the surjection-count
    monomial expansion.  A zero weight voids the positivity theorem: the
    computation falls back to the monomial route with a warning, and the
    certificates may be negative."""
    _require_natural(p)
    weights = tuple(d)
    if len(weights) != p.n:
        raise ValueError(f"need one weight per element, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("negative weights are not supported")
    degree = sum(weights)
    if degree == 0:
        raise ValueError("total weight must be positive")
    if any(w == 0 for w in weights):
        warnings.warn(
            "zero weights void the positivity guarantee; "
            "falling back to the monomial route",
            stacklevel=2,
        )
        return _kpd_from_monomial(p, weights)
    if route not in ("all", "Lstar", "Ostar"):
        raise ValueError(f"route must be all, Lstar or Ostar, got {route!r}")

    results: Dict[str, Dict[Composition, int]] = {}
    if route in ("all", "Lstar"):
        certs: Dict[Composition, int] = {}
        for alpha in compositions(p.n):
            for sigma in l_star_alpha(p, alpha):
                blocks = _block_vertices(p, sigma, alpha)
                beta = tuple(sum(weights[x] for x in block) for block in blocks)
                product = 1
                for block in blocks:
                    product *= weights[unique_minimum(p, block)]
                certs[beta] = certs.get(beta, 0) + product
        results["Lstar"] = certs
    if route in ("all", "Ostar"):
        certs = {}
        for alpha in compositions(p.n):
            for f in star_surjections(p, alpha):
                fibers = f.fibers()
                beta = tuple(sum(weights[x] for x in fiber) for fiber in fibers)
                product = 1
                for fiber in fibers:
                    product *= weights[unique_minimum(p, fiber)]
                certs[beta] = certs.get(beta, 0) + product
        results["Ostar"] = certs
    cleaned = {
        name: {beta: c for beta, c in certs.items() if c}
        for name, certs in results.items()
    }
    reference = next(iter(cleaned.values()))
    if any(certs != reference for certs in cleaned.values()):
        raise AssertionError(f"certificate routes disagree: {cleaned}")
    report = _report(degree, reference)
    oracle = _kpd_from_monomial(p, weights)
    if not qsym_equal(report.element, oracle.element):
        raise AssertionError("weighted routes disagree with the monomial route")
    return report


def _kpd_from_monomial(
    p: LabeledPoset, weights: Tuple[int, ...]
) -> PartitionExpansionReport:
    """The weighted expansion via surjection counts: each surjection
    contributes the composition of fiber weight sums, zero sums dropped."""
    degree = sum(weights)
    terms: Dict[Composition, int] = {}
    for values_list in _surjections_by_type(p.leq).values():
        for values in values_list:
            parts = [0] * max(values)
            for x, v in enumerate(values):
                parts[v - 1] += weights[x]
            beta = tuple(part for part in parts if part)
            terms[beta] = terms.get(beta, 0) + 1
    element = to_basis(make_qsym("M", degree, terms), "Psi")
    certs = {}
    for alpha in element.support():
        scaled = pp_as_fraction(element.coefficient(alpha)) * z_of(alpha)
        if scaled.denominator != 1:
            raise AssertionError(f"certificate for {alpha} is not an integer")
        certs[alpha] = int(scaled)
    return _report(degree, certs)
