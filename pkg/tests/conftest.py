import pytest

from fixlat.geometry import pgl_generators
from fixlat.group import PermutationGroup


@pytest.fixture(scope="session")
def fano_group():
    """PGL(3,2) acting on the 7 points of the binary projective plane."""
    return pgl_generators(2, 2)


@pytest.fixture(scope="session")
def pgl25():
    """PGL(2,5) acting on the 6 points of the projective line over GF(5)."""
    return pgl_generators(5, 1)


@pytest.fixture(scope="session")
def pgl42():
    """PGL(4,2) acting on the 15 points of PG(3,2)."""
    return pgl_generators(2, 3)


@pytest.fixture(scope="session")
def d6():
    return PermutationGroup.dihedral(6)


@pytest.fixture(scope="session")
def sym4():
    return PermutationGroup.symmetric(4)
