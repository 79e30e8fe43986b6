"""
Shared fixtures: the catalog algebras and their decompositions.
"""

from fractions import Fraction

import pytest

from src.algebra.homlie import QuadraticHomLieAlgebra, killing
from src.catalog.examples import killing_twisted_cotangent
from src.catalog.sl import sl
from src.settings import reset_settings
from src.structure.decomposition import decompose

MU_234 = {(2, 3, 4): 1}


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Tests see default settings regardless of the developer's .env."""
    for name in ("LOG_LEVEL", "LOG_FORMAT", "LOG_FILE", "HOMLIE_THREADS", "HOMLIE_MAX_ENLARGEMENTS"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def sl2():
    return sl(2)


@pytest.fixture(scope="session")
def sl3():
    return sl(3)


@pytest.fixture(scope="session")
def sl2_quadratic(sl2):
    """sl2 with identity twist and its Killing form."""
    return QuadraticHomLieAlgebra(sl2, killing(sl2))


@pytest.fixture(scope="session")
def twisted_sl3():
    """sl3 ⋉ sl3* with T = K and mu_234 = 1."""
    return killing_twisted_cotangent(3, MU_234)


@pytest.fixture(scope="session")
def twisted_sl3_lie():
    return killing_twisted_cotangent(3)


@pytest.fixture(scope="session")
def twisted_sl2():
    return killing_twisted_cotangent(2, scale=Fraction(1, 2))


@pytest.fixture(scope="session")
def twisted_sl3_decomposition(twisted_sl3):
    return decompose(twisted_sl3)


@pytest.fixture(scope="session")
def twisted_sl2_decomposition(twisted_sl2):
    return decompose(twisted_sl2)
