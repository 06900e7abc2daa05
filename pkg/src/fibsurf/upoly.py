"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients are Fractions or QuadraticNumbers.  Factorisation over Q is
delegated to sympy; everything else is done here.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

from .qfield import (
    QuadraticNumber,
    as_fraction,
    field_for_sqrt,
    normalize_number,
    number_sort_key,
    sqrt_in_field,
)

_X = sympy.Symbol("_x")


def trim(p: Sequence) -> list:
    p = [normalize_number(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1


def evaluate(p: Sequence, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> list:
    return trim([i * p[i] for i in range(1, len(p))])


def add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p: Sequence, q: Sequence) -> list:
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(p: Sequence, q: Sequence) -> tuple[list, list]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - c * b
        r = trim(r)
    return trim(quot), r


def monic(p: Sequence) -> list:
    p = trim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def gcd(p: Sequence, q: Sequence) -> list:
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def gcd_many(polys) -> list:
    out: list = []
    for p in polys:
        out = gcd(out, p)
    return out


def is_squarefree(p: Sequence) -> bool:
    p = trim(p)
    if len(p) <= 1:
        return True
    return degree(gcd(p, derivative(p))) == 0


def root_multiplicity(p: Sequence, r) -> int:
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial has no root multiplicity")
    k = 0
    while p and evaluate(p, r) == 0:
        p, rem = divmod_(p, [-r, Fraction(1)])
        if rem:
            raise ArithmeticError("inexact deflation")
        k += 1
    return k


def interpolate(xs: Sequence, ys: Sequence) -> list:
    """Newton interpolation through the points (xs[i], ys[i])."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: list = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-Fraction(xs[i]), Fraction(1)]), [coef[i]])
    return trim(out)


def _to_sympy(p: Sequence) -> sympy.Poly:
    coeffs = [sympy.Rational(as_fraction(c).numerator, as_fraction(c).denominator) for c in reversed(trim(p))]
    return sympy.Poly.from_list(coeffs, _X, domain=sympy.QQ)


def _from_sympy(poly: sympy.Poly) -> list:
    return trim([Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())])


def factor_rational(p: Sequence) -> list[tuple[list, int]]:
    """Irreducible monic factors over Q with multiplicities (constant dropped)."""
    p = trim(p)
    if len(p) <= 1:
        return []
    _, factors = _to_sympy(p).factor_list()
    out = [(monic(_from_sympy(f)), k) for f, k in factors]
    out.sort(key=lambda fk: (len(fk[0]), [str(c) for c in fk[0]]))
    return out


def rational_roots(p: Sequence) -> tuple[list[tuple[Fraction, int]], bool]:
    """Rational roots with multiplicity, plus a flag: True if every root is rational."""
    roots = []
    complete = True
    for f, k in factor_rational(p):
        if len(f) == 2:
            roots.append((-f[0] / f[1], k))
        else:
            complete = False
    roots.sort(key=lambda rk: rk[0])
    return roots, complete


def _conjugate_poly(p: Sequence) -> list:
    return [c.conjugate() if isinstance(c, QuadraticNumber) else c for c in p]


def _field_of(p: Sequence) -> int | None:
    for c in p:
        if isinstance(c, QuadraticNumber) and c.b != 0:
            return c.d
    return None


class ExtensionRequired(ArithmeticError):
    """Roots of a polynomial are not available in any supported field."""


def roots_in_field(p: Sequence, field: int | None = None):
    """Roots of ``p`` in Q (field None) or Q(sqrt(field)).

    Returns ``(roots, field, unresolved)`` where roots is a list of
    ``(root, multiplicity)``, ``field`` is the (possibly newly adjoined)
    quadratic field the roots live in, and ``unresolved`` counts the roots
    (with multiplicity) that could not be expressed.  When ``field`` is None
    and an irreducible quadratic factor appears, its splitting field is
    adjoined; a second, different quadratic extension is reported as
    unresolved.
    """
    p = trim(p)
    if len(p) <= 1:
        return [], field, 0
    own = _field_of(p)
    if own is not None:
        if field is not None and field != own:
            raise ValueError("polynomial coefficients live in a different field")
        field = own
    if field is None:
        rational = p
    else:
        norm = mul(p, _conjugate_poly(p))
        rational = [as_fraction(normalize_number(c)) for c in norm]
    candidates: list = []
    for f, k in factor_rational(rational):
        if len(f) == 2:
            candidates.append(-f[0] / f[1])
        elif len(f) == 3:
            c0, c1, c2 = f
            disc = c1 * c1 - 4 * c2 * c0
            if field is None:
                field, _ = field_for_sqrt(disc)
            s = sqrt_in_field(disc, field)
            if s is None:
                continue
            candidates.append((-c1 + s) / (2 * c2))
            candidates.append((-c1 - s) / (2 * c2))
    roots = []
    for r in candidates:
        r = normalize_number(r)
        if evaluate(p, r) == 0:
            roots.append((r, root_multiplicity(p, r)))
    roots.sort(key=lambda rk: number_sort_key(rk[0]))
    # roots of the norm that are not roots of p belong to the conjugate polynomial
    unresolved = degree(p) - sum(k for _, k in roots)
    return roots, field, unresolved
