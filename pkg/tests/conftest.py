import pathlib

import pytest

from gbs.words import GbsGroup

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

BS23_TEXT = (FIXTURES / "bs23.gbs").read_text()
GBS2_TEXT = (FIXTURES / "gbs2.gbs").read_text()
TWO_VERTEX_TEXT = (FIXTURES / "two_vertex.gbs").read_text()
CHAIN3_TEXT = (FIXTURES / "chain3.gbs").read_text()


def bs_text(n, m):
    """BS(n, m) encoding: t a^m t^-1 = a^n, so alpha_y = m, alpha_ybar = n."""
    return f"vertex P\nedge y : P -> P alpha {m} {n}\n"


@pytest.fixture(scope="session")
def bs23():
    return GbsGroup.from_text(BS23_TEXT)


@pytest.fixture(scope="session")
def gbs2():
    return GbsGroup.from_text(GBS2_TEXT)


@pytest.fixture(scope="session")
def two_vertex():
    return GbsGroup.from_text(TWO_VERTEX_TEXT)


@pytest.fixture(scope="session")
def chain3():
    return GbsGroup.from_text(CHAIN3_TEXT)
