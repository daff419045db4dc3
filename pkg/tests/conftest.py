import pytest

from lattice_sb import build_named_lattice, build_powerset_lattice, build_projective_lattice


@pytest.fixture(scope="session")
def pow3():
    return build_powerset_lattice(3)


@pytest.fixture(scope="session")
def pow4():
    return build_powerset_lattice(4)


@pytest.fixture(scope="session")
def sub2():
    return build_projective_lattice(2, 2)


@pytest.fixture(scope="session")
def sub3():
    return build_projective_lattice(3, 2)


@pytest.fixture(scope="session")
def sub4():
    return build_projective_lattice(4, 2)


@pytest.fixture(scope="session")
def m3():
    return build_named_lattice("M3")


@pytest.fixture(scope="session")
def n5():
    return build_named_lattice("N5")


@pytest.fixture(scope="session")
def l1():
    return build_named_lattice("L1")


@pytest.fixture(scope="session")
def l2():
    return build_named_lattice("L2")
