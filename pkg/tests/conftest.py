"""Shared fixtures."""
import math

import pytest

from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.state import QuantumState
from rydberg.services import asympt

LN_PI = math.log(math.pi)


@pytest.fixture
def cfg() -> QuadratureConfig:
    """Default quadrature configuration."""
    return QuadratureConfig()


@pytest.fixture
def fast_cfg() -> QuadratureConfig:
    """Looser tolerance for tests that only check trends or identities."""
    return QuadratureConfig(rel_tol=1e-8)


@pytest.fixture
def ground_state() -> QuantumState:
    return QuantumState(n=1, l=0, m=0, Z=1.0)


@pytest.fixture
def clear_constant_caches():
    asympt.bessel_constant.cache_clear()
    asympt.airy_constant.cache_clear()
    yield
    asympt.bessel_constant.cache_clear()
    asympt.airy_constant.cache_clear()
