"""Quasisymmetric functions in three bases, with exact conversions.

A homogeneous quasisymmetric element of degree n is stored as a mapping from
compositions of n to ParamPoly coefficients, tagged with one of three bases:

  M    monomial: M_alpha = sum over i_1 < ... < i_l of x_{i_1}^{a_1} ...
  F    fundamental: F_alpha = sum of M_beta over refinements beta of alpha
  Psi  power sum: Psi_alpha = z_alpha * sum over coarsenings beta of alpha
       of M_beta / pi_rel(alpha, beta)

The monomial basis is the single conversion pivot.  The direct F -> Psi
expansion (signed sum over compositions making the descent set unimodal)
coexists with the pivot route and the two are cross-checked in tests, never
trusted alone.

Symmetric elements can be extracted into the classical bases m, p, h, e, s;
the p extraction reads coefficients straight off the Psi basis (power sums
are the class sums of Psi), while h/e/s extraction solves an exact linear
system against internally generated basis elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .coeffs import ParamPoly, pp_add, pp_const, pp_mul, pp_scale, pp_sub
from .compositions import (
    Composition,
    Partition,
    coarsenings,
    comp_to_set,
    compositions,
    partitions,
    pi_rel,
    rearrangements,
    refinements,
    set_to_comp,
    sort_to_partition,
    z_of,
)
from .unimodal import is_alpha_unimodal, mask_of

QSYM_BASES = ("M", "F", "Psi")
SYM_BASES = ("m", "p", "h", "e", "s")

CoeffMap = Dict[Composition, ParamPoly]


def _as_poly(value: int | Fraction | ParamPoly) -> ParamPoly:
    if isinstance(value, dict):
        return value
    return pp_const(value)


@dataclass(frozen=True)
class QSymElement:
    """Homogeneous quasisymmetric element: degree, basis tag, coefficients."""

    n: int
    basis: str
    coeffs: CoeffMap

    def __post_init__(self) -> None:
        if self.basis not in QSYM_BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        for alpha in self.coeffs:
            if sum(alpha) != self.n:
                raise ValueError(f"{alpha} is not a composition of {self.n}")

    def support(self) -> List[Composition]:
        return sorted(self.coeffs, key=lambda a: (len(a), a))

    def coefficient(self, alpha: Composition) -> ParamPoly:
        return dict(self.coeffs.get(tuple(alpha), {}))

    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class SymElement:
    """Homogeneous symmetric element in one of the classical bases."""

    n: int
    basis: str
    coeffs: Dict[Partition, ParamPoly]

    def __post_init__(self) -> None:
        if self.basis not in SYM_BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        for lam in self.coeffs:
            if sum(lam) != self.n or tuple(sorted(lam, reverse=True)) != lam:
                raise ValueError(f"{lam} is not a partition of {self.n}")

    def support(self) -> List[Partition]:
        return sorted(self.coeffs, key=lambda a: (len(a), a))

    def coefficient(self, lam: Partition) -> ParamPoly:
        return dict(self.coeffs.get(tuple(lam), {}))


def make_qsym(basis: str, n: int, terms: Dict[Composition, object]) -> QSymElement:
    """Build an element, normalizing coefficients and dropping zeros."""
    coeffs: CoeffMap = {}
    for alpha, value in terms.items():
        poly = _as_poly(value)
        if poly:
            coeffs[tuple(alpha)] = dict(poly)
    return QSymElement(n, basis, coeffs)


def monomial(alpha: Composition) -> QSymElement:
    """The single monomial basis element of its composition."""
    alpha = tuple(alpha)
    return make_qsym("M", sum(alpha), {alpha: 1})


def fundamental(alpha: Composition) -> QSymElement:
    """The fundamental basis element indexed by a composition."""
    alpha = tuple(alpha)
    return make_qsym("F", sum(alpha), {alpha: 1})


def fundamental_of_set(n: int, subset: Iterable[int]) -> QSymElement:
    """The fundamental element of degree n indexed by a subset of [n-1]."""
    return fundamental(set_to_comp(subset, n))


def psi(alpha: Composition) -> QSymElement:
    """The quasisymmetric power sum indexed by a composition."""
    alpha = tuple(alpha)
    return make_qsym("Psi", sum(alpha), {alpha: 1})


def qsym_add(*elements: QSymElement) -> QSymElement:
    """Sum of elements of equal degree and basis."""
    if not elements:
        raise ValueError("empty sum has no degree")
    n, basis = elements[0].n, elements[0].basis
    out: CoeffMap = {}
    for e in elements:
        if (e.n, e.basis) != (n, basis):
            raise ValueError("sum requires equal degree and basis")
        for alpha, c in e.coeffs.items():
            s = pp_add(out.get(alpha, {}), c)
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
    return QSymElement(n, basis, out)


def qsym_sub(a: QSymElement, b: QSymElement) -> QSymElement:
    return qsym_add(a, qsym_scale(b, -1))


def qsym_scale(e: QSymElement, value: int | Fraction | ParamPoly) -> QSymElement:
    """Multiply every coefficient by a scalar or parameter polynomial."""
    poly = _as_poly(value)
    out: CoeffMap = {}
    for alpha, c in e.coeffs.items():
        p = pp_mul(c, poly)
        if p:
            out[alpha] = p
    return QSymElement(e.n, e.basis, out)


# ---------------------------------------------------------------------------
# Basis conversions (monomial pivot)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _refinement_list(alpha: Composition) -> Tuple[Composition, ...]:
    return tuple(refinements(alpha))


@lru_cache(maxsize=None)
def _coarsening_list(alpha: Composition) -> Tuple[Composition, ...]:
    return tuple(coarsenings(alpha))


def f_to_m(e: QSymElement) -> QSymElement:
    """Expand fundamentals into monomials (sum over refinements)."""
    if e.basis != "F":
        raise ValueError(f"f_to_m expects basis F, got {e.basis}")
    out: CoeffMap = {}
    for alpha, c in e.coeffs.items():
        for beta in _refinement_list(alpha):
            s = pp_add(out.get(beta, {}), c)
            if s:
                out[beta] = s
            else:
                out.pop(beta, None)
    return QSymElement(e.n, "M", out)


def psi_to_m(e: QSymElement) -> QSymElement:
    """Expand power sums into monomials (scaled sum over coarsenings)."""
    if e.basis != "Psi":
        raise ValueError(f"psi_to_m expects basis Psi, got {e.basis}")
    out: CoeffMap = {}
    for alpha, c in e.coeffs.items():
        z = z_of(alpha)
        for beta in _coarsening_list(alpha):
            scaled = pp_scale(c, Fraction(z, pi_rel(alpha, beta)))
            s = pp_add(out.get(beta, {}), scaled)
            if s:
                out[beta] = s
            else:
                out.pop(beta, None)
    return QSymElement(e.n, "M", out)


def m_to_f(e: QSymElement) -> QSymElement:
    """Invert f_to_m by back-substitution, sweeping coarsest to finest.

    Elimination can introduce compositions outside the input support, so the
    sweep runs over every composition of the degree, not just the support.
    """
    if e.basis != "M":
        raise ValueError(f"m_to_f expects basis M, got {e.basis}")
    work: CoeffMap = {a: dict(c) for a, c in e.coeffs.items()}
    out: CoeffMap = {}
    for alpha in compositions(e.n):
        c = work.pop(alpha, None)
        if not c:
            continue
        out[alpha] = c
        for beta in _refinement_list(alpha):
            if beta == alpha:
                continue
            s = pp_sub(work.get(beta, {}), c)
            if s:
                work[beta] = s
            else:
                work.pop(beta, None)
    return QSymElement(e.n, "F", out)


def m_to_psi(e: QSymElement) -> QSymElement:
    """Invert psi_to_m by back-substitution, sweeping finest to coarsest.

    As in m_to_f, elimination fills in coarsenings outside the input
    support, so the sweep covers every composition of the degree.
    """
    if e.basis != "M":
        raise ValueError(f"m_to_psi expects basis M, got {e.basis}")
    work: CoeffMap = {a: dict(c) for a, c in e.coeffs.items()}
    out: CoeffMap = {}
    for alpha in sorted(compositions(e.n), key=lambda a: (-len(a), a)):
        c = work.pop(alpha, None)
        if not c:
            continue
        z = z_of(alpha)
        lead = pp_scale(c, Fraction(pi_rel(alpha, alpha), z))
        out[alpha] = lead
        for beta in _coarsening_list(alpha):
            if beta == alpha:
                continue
            scaled = pp_scale(lead, Fraction(z, pi_rel(alpha, beta)))
            s = pp_sub(work.get(beta, {}), scaled)
            if s:
                work[beta] = s
            else:
                work.pop(beta, None)
    return QSymElement(e.n, "Psi", out)


def f_to_psi(e: QSymElement) -> QSymElement:
    """Expand fundamentals directly into power sums: F_{n,S} collects
    Psi_alpha / z_alpha with sign (-1)^{|S minus Set(alpha)|} over all alpha
    for which S is alpha-unimodal."""
    if e.basis != "F":
        raise ValueError(f"f_to_psi expects basis F, got {e.basis}")
    out: CoeffMap = {}
    for gamma, c in e.coeffs.items():
        smask = mask_of(comp_to_set(gamma))
        bits = bin(smask).count("1")
        for alpha in compositions(e.n):
            if not is_alpha_unimodal(smask, alpha):
                continue
            common = bin(smask & mask_of(comp_to_set(alpha))).count("1")
            sign = (-1) ** (bits - common)
            scaled = pp_scale(c, Fraction(sign, z_of(alpha)))
            s = pp_add(out.get(alpha, {}), scaled)
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
    return QSymElement(e.n, "Psi", out)


_CONVERTERS = {
    ("F", "M"): f_to_m,
    ("Psi", "M"): psi_to_m,
    ("M", "F"): m_to_f,
    ("M", "Psi"): m_to_psi,
}


def to_basis(e: QSymElement, basis: str) -> QSymElement:
    """Convert an element to any of the three bases via the monomial pivot."""
    if basis not in QSYM_BASES:
        raise ValueError(f"unknown basis {basis!r}")
    if e.basis == basis:
        return e
    if (e.basis, basis) in _CONVERTERS:
        return _CONVERTERS[(e.basis, basis)](e)
    return _CONVERTERS[("M", basis)](_CONVERTERS[(e.basis, "M")](e))


def qsym_equal(a: QSymElement, b: QSymElement) -> bool:
    """Equality of elements (compared in the monomial basis)."""
    if a.n != b.n:
        return False
    return to_basis(a, "M").coeffs == to_basis(b, "M").coeffs


# ---------------------------------------------------------------------------
# Product (overlapping shuffle on the monomial basis)
# ---------------------------------------------------------------------------


def _overlapping_shuffles(
    alpha: Composition, beta: Composition
) -> Iterator[Composition]:
    """All ways to interleave alpha and beta, optionally merging one part of
    each when they meet; emitted with multiplicity."""
    if not alpha:
        yield beta
        return
    if not beta:
        yield alpha
        return
    for rest in _overlapping_shuffles(alpha[1:], beta):
        yield (alpha[0],) + rest
    for rest in _overlapping_shuffles(alpha, beta[1:]):
        yield (beta[0],) + rest
    for rest in _overlapping_shuffles(alpha[1:], beta[1:]):
        yield (alpha[0] + beta[0],) + rest


def qsym_mul(a: QSymElement, b: QSymElement) -> QSymElement:
    """Product of two elements; the result is monomial-basis."""
    am, bm = to_basis(a, "M"), to_basis(b, "M")
    out: CoeffMap = {}
    for alpha, ca in am.coeffs.items():
        for beta, cb in bm.coeffs.items():
            c = pp_mul(ca, cb)
            for gamma in _overlapping_shuffles(alpha, beta):
                s = pp_add(out.get(gamma, {}), c)
                if s:
                    out[gamma] = s
                else:
                    out.pop(gamma, None)
    return QSymElement(a.n + b.n, "M", out)


# ---------------------------------------------------------------------------
# The involution omega
# ---------------------------------------------------------------------------


def omega(e: QSymElement) -> QSymElement:
    """The involution acting on the fundamental basis by complementing the
    index set inside [n-1]; other bases route through the fundamental basis.

    On symmetric elements this restricts to the classical involution
    (h and e swap, s transposes, p_lambda scales by (-1)^(n - length)).
    """
    f = to_basis(e, "F")
    n = e.n
    full = frozenset(range(1, n))
    out: CoeffMap = {}
    for alpha, c in f.coeffs.items():
        image = set_to_comp(full - comp_to_set(alpha), n)
        out[image] = pp_add(out.get(image, {}), c)
    return to_basis(QSymElement(n, "F", out), e.basis)


def power_substitution(e: QSymElement, d: int) -> QSymElement:
    """Replace every variable x by x^d: monomial indices scale by d and the
    degree multiplies by d."""
    if d < 1:
        raise ValueError(f"substitution power must be positive, got {d}")
    m = to_basis(e, "M")
    out: CoeffMap = {}
    for alpha, c in m.coeffs.items():
        out[tuple(d * part for part in alpha)] = dict(c)
    return QSymElement(e.n * d, "M", out)


# ---------------------------------------------------------------------------
# Truncated expansion into finitely many variables
# ---------------------------------------------------------------------------


def expand_truncated(e: QSymElement, m: int) -> Dict[Tuple[int, ...], ParamPoly]:
    """Expand into the variables x_1 .. x_m (all later variables set to 0).

    Returns a mapping from exponent vectors of length m to coefficients.
    Two degree-n elements are equal iff their truncations at m = n agree.
    """
    mono = to_basis(e, "M")
    out: Dict[Tuple[int, ...], ParamPoly] = {}
    for alpha, c in mono.coeffs.items():
        ell = len(alpha)
        if ell > m:
            continue
        for places in itertools.combinations(range(m), ell):
            exps = [0] * m
            for pos, part in zip(places, alpha):
                exps[pos] = part
            key = tuple(exps)
            s = pp_add(out.get(key, {}), c)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


# ---------------------------------------------------------------------------
# Symmetry and extraction to classical bases
# ---------------------------------------------------------------------------


def symmetry_witness(e: QSymElement) -> Optional[Tuple[Composition, Composition]]:
    """None if e is symmetric; otherwise a pair of rearranged compositions
    with unequal coefficients (in the Psi basis)."""
    return _class_witness(to_basis(e, "Psi").coeffs)


def _class_witness(coeffs: CoeffMap) -> Optional[Tuple[Composition, Composition]]:
    seen = set()
    for alpha in sorted(coeffs, key=lambda a: (len(a), a)):
        lam = sort_to_partition(alpha)
        if lam in seen:
            continue
        seen.add(lam)
        reference = coeffs.get(lam, {})
        for beta in rearrangements(lam):
            if coeffs.get(beta, {}) != reference:
                return (lam, beta)
    return None


def is_symmetric(e: QSymElement) -> bool:
    """True iff coefficients are constant on rearrangement classes, checked
    independently in the Psi and monomial bases (the two criteria must and do
    agree)."""
    psi_ok = _class_witness(to_basis(e, "Psi").coeffs) is None
    mono_ok = _class_witness(to_basis(e, "M").coeffs) is None
    if psi_ok != mono_ok:
        raise AssertionError(
            "power-sum and monomial symmetry criteria disagree; conversion bug"
        )
    return psi_ok


def make_sym(basis: str, n: int, terms: Dict[Partition, object]) -> SymElement:
    coeffs: Dict[Partition, ParamPoly] = {}
    for lam, value in terms.items():
        poly = _as_poly(value)
        if poly:
            coeffs[tuple(lam)] = dict(poly)
    return SymElement(n, basis, coeffs)


def sym_h(n: int) -> QSymElement:
    """Complete homogeneous generator: the fundamental element with empty
    index set (all order-preserving fillings)."""
    return fundamental((n,)) if n else fundamental(())


def sym_e(n: int) -> QSymElement:
    """Elementary generator: the single monomial with n unit parts."""
    return monomial((1,) * n)


def sym_p(n: int) -> QSymElement:
    """Power sum generator: the one-part power sum element."""
    return psi((n,)) if n else psi(())


def _product_over_parts(generator, lam: Partition) -> QSymElement:
    out = monomial(())
    for part in lam:
        out = qsym_mul(out, to_basis(generator(part), "M"))
    return out


@lru_cache(maxsize=None)
def h_qsym(lam: Partition) -> QSymElement:
    """h_lambda as a quasisymmetric element (monomial basis)."""
    return _product_over_parts(sym_h, tuple(lam))


@lru_cache(maxsize=None)
def e_qsym(lam: Partition) -> QSymElement:
    """e_lambda as a quasisymmetric element (monomial basis)."""
    return _product_over_parts(sym_e, tuple(lam))


@lru_cache(maxsize=None)
def p_qsym(lam: Partition) -> QSymElement:
    """p_lambda as the class sum of quasisymmetric power sums."""
    lam = tuple(lam)
    return make_qsym("Psi", sum(lam), {alpha: 1 for alpha in rearrangements(lam)})


@lru_cache(maxsize=None)
def m_qsym(lam: Partition) -> QSymElement:
    """Monomial symmetric function as the class sum of monomial elements."""
    lam = tuple(lam)
    return make_qsym("M", sum(lam), {alpha: 1 for alpha in rearrangements(lam)})


def standard_tableaux(lam: Partition) -> List[Tuple[int, ...]]:
    """Standard Young tableaux of a partition shape, each encoded as the
    row index (0-based) of every entry 1..n in order."""
    lam = tuple(lam)
    n = sum(lam)
    rows = len(lam)
    out: List[Tuple[int, ...]] = []
    filled = [0] * rows

    def rec(entry: int, placement: List[int]) -> None:
        if entry > n:
            out.append(tuple(placement))
            return
        for r in range(rows):
            if filled[r] < lam[r] and (r == 0 or filled[r] < filled[r - 1]):
                filled[r] += 1
                placement.append(r)
                rec(entry + 1, placement)
                placement.pop()
                filled[r] -= 1

    rec(1, [])
    return out


def tableau_descents(placement: Tuple[int, ...]) -> FrozenSet[int]:
    """Descent set of a standard tableau: entries followed by an entry in a
    lower row (larger row index)."""
    return frozenset(
        i + 1 for i in range(len(placement) - 1) if placement[i + 1] > placement[i]
    )


@lru_cache(maxsize=None)
def s_qsym(lam: Partition) -> QSymElement:
    """Schur function as the descent-set sum of fundamentals over standard
    Young tableaux (monomial basis)."""
    lam = tuple(lam)
    n = sum(lam)
    terms: CoeffMap = {}
    for placement in standard_tableaux(lam):
        alpha = set_to_comp(tableau_descents(placement), n)
        terms[alpha] = pp_add(terms.get(alpha, {}), pp_const(1))
    return f_to_m(QSymElement(n, "F", terms))


_SYM_GENERATORS = {"h": h_qsym, "e": e_qsym, "p": p_qsym, "m": m_qsym, "s": s_qsym}


def sym_to_qsym(s: SymElement) -> QSymElement:
    """Embed a classical symmetric element as a quasisymmetric element
    (monomial basis)."""
    generator = _SYM_GENERATORS[s.basis]
    total: CoeffMap = {}
    for lam, c in s.coeffs.items():
        for alpha, c0 in to_basis(generator(lam), "M").coeffs.items():
            t = pp_add(total.get(alpha, {}), pp_mul(c, c0))
            if t:
                total[alpha] = t
            else:
                total.pop(alpha, None)
    return QSymElement(s.n, "M", total)


def _solve_exact(
    matrix: List[List[Fraction]], rhs: List[ParamPoly]
) -> List[ParamPoly]:
    """Solve a square rational system with polynomial right-hand sides by
    Gaussian elimination; the matrix must be invertible."""
    size = len(matrix)
    a = [row[:] for row in matrix]
    b = [dict(p) for p in rhs]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular extraction system")
        a[col], a[pivot] = a[pivot], a[col]
        b[col], b[pivot] = b[pivot], b[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [value * inv for value in a[col]]
        b[col] = pp_scale(b[col], inv)
        for r in range(size):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [vr - factor * vc for vr, vc in zip(a[r], a[col])]
                b[r] = pp_sub(b[r], pp_scale(b[col], factor))
    return b


def to_sym(e: QSymElement, target: str) -> SymElement:
    """Extract a symmetric quasisymmetric element into a classical basis.

    Rejects non-symmetric input, reporting a witness pair of rearranged
    compositions with unequal coefficients.
    """
    if target not in SYM_BASES:
        raise ValueError(f"unknown symmetric basis {target!r}")
    witness = symmetry_witness(e)
    if witness is not None:
        raise ValueError(
            f"element is not symmetric: coefficients differ at {witness[0]} vs {witness[1]}"
        )
    n = e.n
    lams = list(partitions(n))
    if target == "p":
        psi_e = to_basis(e, "Psi")
        return make_sym(
            "p", n, {lam: psi_e.coeffs.get(lam, {}) for lam in lams}
        )
    if target == "m":
        mono = to_basis(e, "M")
        return make_sym("m", n, {lam: mono.coeffs.get(lam, {}) for lam in lams})
    mono = to_basis(e, "M")
    generator = _SYM_GENERATORS[target]
    matrix = [
        [
            to_basis(generator(lam), "M").coeffs.get(mu, {}).get((0, 0, 0), Fraction(0))
            for lam in lams
        ]
        for mu in lams
    ]
    rhs = [mono.coeffs.get(mu, {}) for mu in lams]
    solution = _solve_exact(matrix, rhs)
    return make_sym(target, n, dict(zip(lams, solution)))


def sym_add(*elements: SymElement) -> SymElement:
    if not elements:
        raise ValueError("empty sum has no degree")
    n, basis = elements[0].n, elements[0].basis
    out: Dict[Partition, ParamPoly] = {}
    for e in elements:
        if (e.n, e.basis) != (n, basis):
            raise ValueError("sum requires equal degree and basis")
        for lam, c in e.coeffs.items():
            s = pp_add(out.get(lam, {}), c)
            if s:
                out[lam] = s
            else:
                out.pop(lam, None)
    return SymElement(n, basis, out)


def sym_scale(e: SymElement, value: int | Fraction | ParamPoly) -> SymElement:
    poly = _as_poly(value)
    out: Dict[Partition, ParamPoly] = {}
    for lam, c in e.coeffs.items():
        p = pp_mul(c, poly)
        if p:
            out[lam] = p
    return SymElement(e.n, e.basis, out)


# ---------------------------------------------------------------------------
# Eulerian polynomials and q-integers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def eulerian_poly(k: int) -> ParamPoly:
    """The descent generating polynomial of the symmetric group on k letters
    (1 for k = 0), computed by the classical two-term recurrence."""
    if k < 0:
        raise ValueError(f"negative index {k}")
    if k == 0:
        return pp_const(1)
    row = [1]  # row for k = 1
    for size in range(2, k + 1):
        prev = row + [0]
        row = [0] * size
        for j in range(size):
            up = (j + 1) * (prev[j] if j < len(prev) else 0)
            down = (size - j) * (prev[j - 1] if j >= 1 else 0)
            row[j] = up + down
    out: ParamPoly = {}
    for j, value in enumerate(row):
        if value:
            out[(j, 0, 0)] = Fraction(value)
    return out


def q_int(a: int) -> ParamPoly:
    """The q-integer 1 + q + ... + q^(a-1)."""
    if a < 0:
        raise ValueError(f"negative q-integer {a}")
    return {(j, 0, 0): Fraction(1) for j in range(a)}
