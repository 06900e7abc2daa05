from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fibsurf.qfield import QuadraticNumber, field_for_sqrt, sqrt_in_field, squarefree_decomposition
from fibsurf.upoly import evaluate, gcd, interpolate, roots_in_field

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def test_squarefree_decomposition():
    assert squarefree_decomposition(12) == (2, 3)
    assert squarefree_decomposition(-18) == (3, -2)


def test_sqrt_in_field():
    r = sqrt_in_field(Fraction(-12), -3)
    assert r * r == -12
    assert sqrt_in_field(Fraction(2), -3) is None
    assert field_for_sqrt(Fraction(-12)) == (-3, 2)


@given(rationals, rationals, rationals, rationals)
def test_field_axioms(a, b, c, d):
    x, y = QuadraticNumber(a, b, 5), QuadraticNumber(c, d, 5)
    assert (x + y) - y == x
    assert x * y == y * x
    if y:
        assert (x / y) * y == x
    assert (x * x.conjugate()).is_rational()


def test_cube_roots_of_unity():
    roots, field, unresolved = roots_in_field([1, 1, 1])
    assert field == -3 and unresolved == 0
    for r, k in roots:
        assert k == 1 and evaluate([1, 1, 1], r) == 0


def test_second_quadratic_field_is_unresolved():
    roots, field, unresolved = roots_in_field([-2, 0, 1], -3)
    assert roots == [] and unresolved == 2


@given(st.lists(rationals, min_size=1, max_size=6, unique=True))
def test_interpolation_recovers_values(xs):
    ys = [x * x - 3 * x + 1 for x in xs]
    p = interpolate(xs, ys)
    assert all(evaluate(p, x) == y for x, y in zip(xs, ys))


def test_gcd():
    # (x - 1)(x + 2) and (x - 1)(x - 5)
    assert gcd([-2, 1, 1], [5, -6, 1]) == [-1, 1]
