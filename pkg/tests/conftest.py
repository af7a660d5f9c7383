import pytest

from encat.instances import (
    build_bool,
    build_cyc,
    build_poset_module,
    build_trop,
    module_self,
)


@pytest.fixture(scope="session")
def bool_m():
    return build_bool()


@pytest.fixture(scope="session")
def trop3():
    return build_trop(3)


@pytest.fixture(scope="session")
def trop4():
    return build_trop(4)


@pytest.fixture(scope="session")
def cyc1():
    return build_cyc(1)


@pytest.fixture(scope="session")
def cyc2():
    return build_cyc(2)


@pytest.fixture(scope="session")
def cyc3():
    return build_cyc(3)


@pytest.fixture(scope="session")
def poset_cm():
    return build_poset_module()


@pytest.fixture(scope="session")
def self_trop3(trop3):
    return module_self(trop3)


@pytest.fixture(scope="session")
def self_cyc3(cyc3):
    return module_self(cyc3)


@pytest.fixture(scope="session")
def self_bool(bool_m):
    return module_self(bool_m)
