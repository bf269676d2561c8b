from __future__ import annotations

from functools import lru_cache

import pytest

from galois_sums import build_ring


@lru_cache(maxsize=None)
def ring(p: int, n: int, s: int):
    return build_ring(p, n, s)


@pytest.fixture
def z9():
    return ring(3, 2, 1)


@pytest.fixture
def z27():
    return ring(3, 3, 1)


@pytest.fixture
def gr4_16():
    return ring(2, 2, 2)


@pytest.fixture
def gr8_64():
    return ring(2, 3, 2)


@pytest.fixture
def f4():
    return ring(2, 1, 2)
