import numpy as np
import pytest

from fcat import load_builtin

NAMES = ["fibonacci", "ising", "vec_z2", "vec_z3"]
BRAIDED = ["fibonacci", "ising", "vec_z2"]
MODULAR = ["fibonacci", "ising"]


@pytest.fixture(scope="session")
def specs():
    return {name: load_builtin(name) for name in NAMES}


@pytest.fixture(scope="session")
def fib(specs):
    return specs["fibonacci"]


@pytest.fixture(scope="session")
def ising(specs):
    return specs["ising"]


@pytest.fixture(scope="session")
def z2(specs):
    return specs["vec_z2"]


@pytest.fixture(scope="session")
def z3(specs):
    return specs["vec_z3"]


@pytest.fixture()
def rng():
    return np.random.default_rng(0x5EED)
