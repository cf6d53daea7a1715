"""Shared fixtures: the worked ladder examples used across the suite."""

from __future__ import annotations

import numpy as np
import pytest

from indumatch import GridInterval, Morphism, PersistenceModule
from indumatch import gf


def mat(rows):
    return np.array(rows, dtype=np.int64)


@pytest.fixture
def reference_ladder():
    """Three-step ladder with source bars [2,3], [2,2] and target bar [1,2].

    Decomposes as the sum of the catalog codes 000/011 and 110/010; the
    counting matching pairs [2,2] with [1,2] while the greedy matching
    pairs [2,3] with [1,2] instead.
    """
    source = PersistenceModule(2, (0, 2, 1), [gf.zeros(2, 0), mat([[1, 0]])])
    target = PersistenceModule(2, (1, 1, 0), [mat([[1]]), gf.zeros(0, 1)])
    return Morphism(
        source, target, [gf.zeros(1, 0), mat([[0, 1]]), gf.zeros(0, 1)]
    ).validate()


@pytest.fixture
def thick_ladder():
    """The 121/011 catalog ladder: k -> k^2 -> k over 0 -> k -> k."""
    source = PersistenceModule(2, (0, 1, 1), [gf.zeros(1, 0), mat([[1]])])
    target = PersistenceModule(
        2, (1, 2, 1), [mat([[1], [0]]), mat([[0, 1]])]
    )
    return Morphism(
        source, target, [gf.zeros(1, 0), mat([[1], [1]]), mat([[1]])]
    ).validate()


@pytest.fixture
def wide_ladder():
    """Four-step ladder with source bars [1,3], [2,4] and target bars
    [1,3], [1,4], [2,3]; the shift-by-one stability example."""
    source = PersistenceModule(
        2, (1, 2, 2, 1), [mat([[1], [0]]), gf.identity(2), mat([[0, 1]])]
    )
    target = PersistenceModule(
        2,
        (2, 3, 3, 1),
        [mat([[1, 0], [0, 1], [0, 0]]), gf.identity(3), mat([[0, 1, 0]])],
    )
    comps = [
        mat([[1], [0]]),
        mat([[1, 0], [0, 1], [0, 1]]),
        mat([[1, 0], [0, 1], [0, 1]]),
        mat([[1]]),
    ]
    return Morphism(source, target, comps).validate()


@pytest.fixture
def chain_module():
    """k_{[1,2]}^2 + k_{[2,3]} written with explicit matrices."""
    return PersistenceModule(
        2, (2, 3, 1), [mat([[1, 0], [0, 1], [0, 0]]), mat([[0, 0, 1]])]
    ).validate()


def iv(a, b):
    return GridInterval(a, b)
