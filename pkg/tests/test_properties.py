"""The property suites, run individually (the acceptance gate runs them together)."""
import pytest

from strategies import PROPERTY_CHECKS


@pytest.mark.parametrize("check", PROPERTY_CHECKS, ids=lambda c: c.__name__.removeprefix("check_"))
def test_property(check):
    check()
