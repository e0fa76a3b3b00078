"""Exact sparse polynomial coefficients in the parameters q, y, z.

Every coefficient in this package is a polynomial over the rationals in up to
three parameters.  A coefficient is represented as a dictionary mapping an
exponent triple to a Fraction:

  ParamPoly = Dict[Exponent, Fraction]
  Exponent  = (e_q, e_y, e_z)   nonnegative integer exponents

The zero polynomial is the empty dict.  Zero coefficients are never stored,
so two polynomials are equal iff their dicts are equal.  All arithmetic is
exact; no floating point is used anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

Exponent = Tuple[int, int, int]
ParamPoly = Dict[Exponent, Fraction]

#: Index of each parameter in the exponent triple.
PARAMS = ("q", "y", "z")

_ZERO_EXP: Exponent = (0, 0, 0)


def pp_zero() -> ParamPoly:
    """Return the zero polynomial."""
    return {}


def pp_const(value: int | Fraction) -> ParamPoly:
    """Return the constant polynomial `value`."""
    c = Fraction(value)
    if c == 0:
        return {}
    return {_ZERO_EXP: c}


PP_ONE: ParamPoly = pp_const(1)


def pp_var(name: str) -> ParamPoly:
    """Return the polynomial consisting of the single parameter q, y or z."""
    idx = PARAMS.index(name)
    exp = [0, 0, 0]
    exp[idx] = 1
    return {tuple(exp): Fraction(1)}


def pp_canonical(p: ParamPoly) -> ParamPoly:
    """Drop zero coefficients (arithmetic below already does this)."""
    return {e: c for e, c in p.items() if c != 0}


def pp_add(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Return a + b."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def pp_sub(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Return a - b."""
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def pp_neg(a: ParamPoly) -> ParamPoly:
    """Return -a."""
    return {e: -c for e, c in a.items()}


def pp_scale(a: ParamPoly, value: int | Fraction) -> ParamPoly:
    """Return value * a for a scalar value."""
    c = Fraction(value)
    if c == 0:
        return {}
    return {e: c * v for e, v in a.items()}


def pp_mul(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Return a * b."""
    if not a or not b:
        return {}
    out: ParamPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            s = out.get(e, Fraction(0)) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def pp_pow(a: ParamPoly, k: int) -> ParamPoly:
    """Return a**k for a nonnegative integer k."""
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    out = pp_const(1)
    for _ in range(k):
        out = pp_mul(out, a)
    return out


def pp_subst(a: ParamPoly, assignments: Mapping[str, ParamPoly]) -> ParamPoly:
    """Substitute parameters by polynomials; unmentioned parameters stay.

    Example: pp_subst(p, {"q": pp_add(pp_var("q"), PP_ONE)}) sends q to q+1.
    """
    images = []
    for i, name in enumerate(PARAMS):
        if name in assignments:
            images.append(assignments[name])
        else:
            images.append(pp_var(name))
    out: ParamPoly = {}
    for e, c in a.items():
        term = pp_const(c)
        for i in range(3):
            if e[i]:
                term = pp_mul(term, pp_pow(images[i], e[i]))
        out = pp_add(out, term)
    return out


def pp_eval(a: ParamPoly, values: Mapping[str, int | Fraction]) -> Fraction:
    """Evaluate a at numeric parameter values (all parameters required
    unless they do not occur)."""
    total = Fraction(0)
    for e, c in a.items():
        v = c
        for i, name in enumerate(PARAMS):
            if e[i]:
                if name not in values:
                    raise ValueError(f"parameter {name} occurs but has no value")
                v *= Fraction(values[name]) ** e[i]
        total += v
    return total


def pp_coefficient(a: ParamPoly, name: str, power: int) -> ParamPoly:
    """Return the coefficient of name**power as a polynomial in the
    remaining parameters."""
    idx = PARAMS.index(name)
    out: ParamPoly = {}
    for e, c in a.items():
        if e[idx] == power:
            e2 = list(e)
            e2[idx] = 0
            out[tuple(e2)] = c
    return out


def pp_degree(a: ParamPoly, name: str) -> int:
    """Degree of a in one parameter (-1 for the zero polynomial)."""
    idx = PARAMS.index(name)
    if not a:
        return -1
    return max(e[idx] for e in a)


def pp_is_constant(a: ParamPoly) -> bool:
    """True iff a has no parameter dependence."""
    return all(e == _ZERO_EXP for e in a)


def pp_as_fraction(a: ParamPoly) -> Fraction:
    """Return the value of a constant polynomial."""
    if not a:
        return Fraction(0)
    if not pp_is_constant(a):
        raise ValueError(f"polynomial is not constant: {a}")
    return a[_ZERO_EXP]


def pp_has_nonneg_int_coeffs(a: ParamPoly) -> bool:
    """True iff every stored coefficient is a nonnegative integer."""
    return all(c.denominator == 1 and c >= 0 for c in a.values())


def pp_coeff_list(a: ParamPoly, name: str = "q") -> List[Fraction]:
    """Coefficient list [c_0, c_1, ...] of a univariate polynomial in `name`.

    Raises if a involves any other parameter.
    """
    idx = PARAMS.index(name)
    coeffs = [Fraction(0)] * (pp_degree(a, name) + 1)
    for e, c in a.items():
        for j, v in enumerate(e):
            if j != idx and v:
                raise ValueError(f"polynomial involves {PARAMS[j]}, not univariate")
        coeffs[e[idx]] = c
    return coeffs


def is_unimodal(values: Iterable[Fraction]) -> bool:
    """True iff the sequences rises then falls (weakly).

    Leading and trailing zeros are ignored; the empty (zero) sequence counts
    as unimodal.
    """
    vals = list(values)
    while vals and vals[0] == 0:
        vals.pop(0)
    while vals and vals[-1] == 0:
        vals.pop()
    if not vals:
        return True
    i = 0
    while i + 1 < len(vals) and vals[i] <= vals[i + 1]:
        i += 1
    while i + 1 < len(vals) and vals[i] >= vals[i + 1]:
        i += 1
    return i == len(vals) - 1


def pp_sort_key(e: Exponent) -> Tuple[int, Exponent]:
    """Graded-lexicographic sort key for exponent triples."""
    return (e[0] + e[1] + e[2], e)


def pp_terms_sorted(a: ParamPoly) -> List[Tuple[Exponent, Fraction]]:
    """Terms of a in canonical (graded-lex) order."""
    return sorted(a.items(), key=lambda item: pp_sort_key(item[0]))
