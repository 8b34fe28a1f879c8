import numpy as np
import pytest

from trussalg.fixtures import load_fixtures
from trussalg.heaps import FiniteHeap, cyclic_group, heap_from_group
from trussalg.trusses import FiniteTruss
from trussalg.utils.config import config


@pytest.fixture(scope="session")
def fixtures():
    """The shipped fixtures, loaded once."""
    return load_fixtures()


@pytest.fixture
def H4():
    return heap_from_group(cyclic_group(4), name="H4")


@pytest.fixture
def H2():
    return heap_from_group(cyclic_group(2), name="H2")


@pytest.fixture
def empty_heap():
    return FiniteHeap(np.zeros((0, 0, 0), dtype=np.int64), name="E")


@pytest.fixture
def small_window():
    """Shrink the integer window of symbolic checks for the duration of a test."""
    previous = config.verification_window
    config.verification_window = 3
    yield 3
    config.verification_window = previous


@pytest.fixture
def empty_truss(empty_heap):
    return FiniteTruss(empty_heap, np.zeros((0, 0), dtype=np.int64), name="TE")
