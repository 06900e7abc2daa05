from fractions import Fraction

import pytest

from fibsurf.orbifold import (
    Classification,
    OrbifoldBase,
    OrbifoldError,
    classify,
    cover_genus,
    delta_degree,
    exception_family,
)


@pytest.mark.parametrize(
    "mults, degree",
    [((), -2), ((2, 3, 6), 0), ((2, 3, 7), Fraction(1, 42)), ((2, 2, 2, 2), 0), ((2, 2, 2, 2, 2), Fraction(1, 2))],
)
def test_degree(mults, degree):
    assert delta_degree(OrbifoldBase(0, mults)) == degree


def test_exception_strings():
    assert exception_family(()) == "()"
    assert exception_family((5,)) == "(n)"
    assert exception_family((2, 2, 9)) == "(2,2,n)"
    assert exception_family((3, 2, 5)) == "(2,3,k)"
    assert exception_family((2, 3, 7)) is None
    assert exception_family((3, 3, 3)) == "(3,3,3)"
    assert exception_family((2, 2, 2, 3)) is None


def test_positive_base_genus():
    assert classify(OrbifoldBase(1, ())).classification is Classification.SPECIAL
    assert classify(OrbifoldBase(1, (2,))).classification is Classification.GENERAL_TYPE
    assert classify(OrbifoldBase(2, ())).general_type


def test_invalid_multiplicity():
    with pytest.raises(OrbifoldError):
        OrbifoldBase(0, (1, 2))
    assert OrbifoldBase.from_fibres(0, [1, 2, 1, 3]).mults == (2, 3)


def test_cover_genus():
    # degree-168 cover of the (2,3,7) orbifold is Klein's quartic: genus 3
    assert cover_genus(OrbifoldBase(0, (2, 3, 7)), 168) == 3
