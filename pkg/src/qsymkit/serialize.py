"""Canonical text and JSON formats for elements and combinatorial inputs.

Text form: terms ordered by (length, lexicographic) index, polynomial
coefficients by graded-lexicographic exponent, e.g. ``4/3*q^2*Psi[2,3,1]``.
Terms are joined with `` + `` / `` - ``; a coefficient with several
monomials is parenthesized.  The same renderer serves quasisymmetric
(M, F, Psi) and symmetric (m, h, e, p, s) elements, so identical inputs
always produce byte-identical output.

JSON form: ``{"basis": ..., "degree": n, "terms": [{"index": [...],
"coeff": {"terms": [{"exps": {"q": e, ...}, "num": N, "den": D}]}}]}``.
Fundamental terms may carry ``{"set": [...]}`` instead of an index.
Posets are ``{"n": N, "covers": [[i, j], ...], "labels": [...]}``, graphs
``{"n": N, "edges": [[i, j], ...]}`` (repetition encodes multiplicity),
equivalences ``{"blocks": [[...], ...]}`` and matroids
``{"n": N, "bases": [[...], ...]}``.  Vertices and ground-set elements in
JSON are numbered 1..n; library objects use 0..n-1.
"""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .coeffs import ParamPoly
from .compositions import set_to_comp
from .posets import (
    DirectedGraph,
    Equivalence,
    LabeledPoset,
    make_equivalence,
    poset_from_relations,
)
from .qsym import QSYM_BASES, QSymElement, SYM_BASES, SymElement, make_qsym, make_sym

PARAMS = ("q", "y", "z")

Element = Union[QSymElement, SymElement]


def _exponent_order(exps: Tuple[int, int, int]) -> Tuple[int, Tuple[int, ...]]:
    return sum(exps), tuple(-e for e in exps)


def _monomial_text(exps: Tuple[int, int, int]) -> str:
    parts = []
    for name, e in zip(PARAMS, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_text(poly: ParamPoly) -> str:
    """A polynomial in canonical text, e.g. ``2 + q - 4/3*q^2*z``."""
    if not poly:
        return "0"
    pieces = []
    for exps in sorted(poly, key=_exponent_order):
        value = poly[exps]
        monomial = _monomial_text(exps)
        magnitude = abs(value)
        if monomial and magnitude == 1:
            body = monomial
        elif monomial:
            body = f"{magnitude}*{monomial}"
        else:
            body = str(magnitude)
        if not pieces:
            pieces.append(body if value > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if value > 0 else f" - {body}")
    return "".join(pieces)


def _term_text(basis: str, index: Sequence[int], coeff: ParamPoly) -> Tuple[int, str]:
    """Sign and unsigned text of one term, e.g. ``4/3*q^2*Psi[2,3,1]``."""
    bracket = f"{basis}[{','.join(str(part) for part in index)}]"
    if len(coeff) == 1:
        [(exps, value)] = coeff.items()
        sign = 1 if value > 0 else -1
        monomial = _monomial_text(exps)
        factors = []
        if abs(value) != 1:
            factors.append(str(abs(value)))
        if monomial:
            factors.append(monomial)
        factors.append(bracket)
        return sign, "*".join(factors)
    return 1, f"({poly_to_text(coeff)})*{bracket}"


def element_to_text(element: Element) -> str:
    """The canonical text form of a (quasi)symmetric element."""
    if not element.coeffs:
        return "0"
    pieces = []
    for index in element.support():
        sign, body = _term_text(element.basis, index, element.coeffs[index])
        if not pieces:
            pieces.append(body if sign > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if sign > 0 else f" - {body}")
    return "".join(pieces)


def poly_to_json(poly: ParamPoly) -> Dict[str, Any]:
    terms = []
    for exps in sorted(poly, key=_exponent_order):
        value = poly[exps]
        entry: Dict[str, Any] = {
            "exps": {name: e for name, e in zip(PARAMS, exps) if e},
            "num": value.numerator,
            "den": value.denominator,
        }
        terms.append(entry)
    return {"terms": terms}


def poly_from_json(data: Mapping[str, Any]) -> ParamPoly:
    poly: ParamPoly = {}
    for entry in data["terms"]:
        exps = entry.get("exps", {})
        unknown = set(exps) - set(PARAMS)
        if unknown:
            raise ValueError(f"unknown parameters {sorted(unknown)}")
        key = tuple(int(exps.get(name, 0)) for name in PARAMS)
        value = Fraction(int(entry["num"]), int(entry.get("den", 1)))
        if value:
            poly[key] = poly.get(key, Fraction(0)) + value
    return {k: v for k, v in poly.items() if v}


def element_to_json(element: Element) -> Dict[str, Any]:
    return {
        "basis": element.basis,
        "degree": element.n,
        "terms": [
            {"index": list(index), "coeff": poly_to_json(element.coeffs[index])}
            for index in element.support()
        ],
    }


def element_from_json(data: Mapping[str, Any]) -> Element:
    basis = data["basis"]
    degree = int(data["degree"])
    coeffs: Dict[Tuple[int, ...], ParamPoly] = {}
    for term in data["terms"]:
        if "index" in term:
            index = tuple(int(part) for part in term["index"])
        elif "set" in term and basis == "F":
            index = set_to_comp(frozenset(int(s) for s in term["set"]), degree)
        else:
            raise ValueError("term needs an 'index' (or a 'set' for basis F)")
        coeff = poly_from_json(term["coeff"])
        if coeff:
            coeffs[index] = coeff
    if basis in QSYM_BASES:
        return make_qsym(basis, degree, coeffs)
    if basis in SYM_BASES:
        return make_sym(basis, degree, coeffs)
    raise ValueError(f"unknown basis {basis!r}")


def _shifted_pairs(pairs: Any, n: int, what: str) -> List[Tuple[int, int]]:
    out = []
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"{what} ({u}, {v}) leaves the range 1..{n}")
        out.append((u - 1, v - 1))
    return out


def poset_to_json(poset: LabeledPoset) -> Dict[str, Any]:
    return {
        "n": poset.n,
        "covers": [[x + 1, y + 1] for x, y in poset.covers()],
        "labels": list(poset.labels),
    }


def poset_from_json(data: Mapping[str, Any]) -> LabeledPoset:
    n = int(data["n"])
    covers = _shifted_pairs(data.get("covers", []), n, "cover")
    labels = data.get("labels")
    if labels is not None:
        labels = [int(w) for w in labels]
    return poset_from_relations(n, covers, labels=labels)


def graph_to_json(graph: DirectedGraph) -> Dict[str, Any]:
    return {"n": graph.n, "edges": [[u + 1, v + 1] for u, v in graph.edges]}


def graph_from_json(data: Mapping[str, Any]) -> DirectedGraph:
    n = int(data["n"])
    return DirectedGraph(n, tuple(_shifted_pairs(data.get("edges", []), n, "edge")))


def equivalence_to_json(equivalence: Equivalence) -> Dict[str, Any]:
    return {
        "blocks": [[x + 1 for x in block] for block in equivalence.blocks]
    }


def equivalence_from_json(data: Mapping[str, Any], n: int) -> Equivalence:
    listed = [tuple(int(x) - 1 for x in block) for block in data["blocks"]]
    for block in listed:
        for x in block:
            if not 0 <= x < n:
                raise ValueError(f"block member {x + 1} leaves the range 1..{n}")
    covered = {x for block in listed for x in block}
    blocks = listed + [(x,) for x in range(n) if x not in covered]
    return make_equivalence(n, blocks)


def matroid_to_json(matroid: Any) -> Dict[str, Any]:
    return {
        "n": matroid.n,
        "bases": [[x + 1 for x in basis] for basis in matroid.bases],
    }


def matroid_from_json(data: Mapping[str, Any]) -> Any:
    from .families import make_matroid

    n = int(data["n"])
    bases = []
    for basis in data["bases"]:
        members = tuple(int(x) - 1 for x in basis)
        if any(not 0 <= x < n for x in members):
            raise ValueError(f"basis {sorted(basis)} leaves the range 1..{n}")
        bases.append(members)
    return make_matroid(n, bases)


def weights_from_json(data: Any, n: int) -> Tuple[int, ...]:
    """A weight vector d, one nonnegative integer per vertex."""
    weights = tuple(int(x) for x in data)
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    return weights
