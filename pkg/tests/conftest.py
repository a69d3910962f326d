import sys
from pathlib import Path

import pytest

from latagg.catalog import builtin
from latagg.lattice import Lattice

sys.path.insert(0, str(Path(__file__).parent))


def make(names, covers):
    return Lattice.from_covers(names, covers)


@pytest.fixture
def chain2():
    return builtin("chain-2")


@pytest.fixture
def chain3():
    return make(["0", "m", "1"], [("0", "m"), ("m", "1")])


@pytest.fixture
def chain4():
    return make(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1")])


@pytest.fixture
def diamond():
    return make(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def n5():
    return make(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


@pytest.fixture
def m3():
    return make(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


@pytest.fixture
def glued():
    return builtin("glued-m3")
