import pathlib

import pytest
from hypothesis import settings

from hilbheight.ideal import VarietyInput

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def point(c):
    """The point [1:c] in P^1, as the ideal <x1 - c x0>."""
    return VarietyInput.from_strings(2, [f"x1 - {c}*x0"], name=f"point [1:{c}]")


@pytest.fixture
def point12():
    return point(2)


@pytest.fixture
def coord_line():
    return VarietyInput.from_strings(3, ["x2"], name="V(x2)")


@pytest.fixture
def line():
    return VarietyInput.from_strings(3, ["x0 + x1 + x2"], name="V(x0+x1+x2)")


@pytest.fixture
def conic():
    return VarietyInput.from_strings(3, ["x0*x2 - x1^2"], name="conic")
