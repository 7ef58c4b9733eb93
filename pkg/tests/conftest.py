import pytest

from ainf_bialgebra.algebra import QQ, Z2, GradedModule, exterior
from ainf_bialgebra.catalog import exterior_hopf, make_ex1, make_theorem1


@pytest.fixture
def ex1():
    return make_ex1()


@pytest.fixture
def z2_module():
    return GradedModule(Z2, [("1", 0), ("y", -2)])


@pytest.fixture
def ext_module():
    # odd |x| and odd |y| so every Koszul sign is live
    return GradedModule(exterior(QQ, 1), [("1", 0), ("y", 3), ("z", 2)])


@pytest.fixture
def odd_hopf():
    return exterior_hopf(QQ, 3)


@pytest.fixture
def t1_case_iii():
    return make_theorem1((3, 4, 1, 3))
