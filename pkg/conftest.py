# -*- coding: utf-8 -*-
import numpy as np
import pytest

from cpyx.domain import build_torus
from cpyx.lattice import TriangleBody


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs a full acceptance suite (deselect with -m 'not slow')")


@pytest.fixture
def body11():
    return TriangleBody(1, 1)


@pytest.fixture
def body23():
    return TriangleBody(2, 3)


@pytest.fixture(scope="session")
def unit_torus():
    return build_torus(1.0, 1.0, 16)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
