"""Shared fixtures. Expensive lattices are session-scoped."""
from __future__ import annotations

import numpy as np
import pytest

from rellat import (
    Schema,
    build_countermodel,
    build_from_leq,
    build_R,
    extract_od_graph,
    hamming_space,
    reconstruct,
)


def leq_from_covers(n, covers):
    """Reflexive-transitive closure of a strict-cover edge list."""
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        leq[a, b] = True
    for _ in range(n):
        leq = leq | (leq @ leq)
    return leq


def diamond_m3():
    # bottom 0, atoms 1 2 3, top 4
    leq = leq_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    return build_from_leq(5, leq, labels=["0", "a", "b", "c", "1"])


def pentagon_n5():
    # bottom 0, chain 1 < 3, lone atom 2, top 4
    leq = leq_from_covers(5, [(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)])
    return build_from_leq(5, leq, labels=["0", "a", "b", "c", "1"])


def boolean_cube(k):
    n = 1 << k
    leq = np.array([[i & j == i for j in range(n)] for i in range(n)])
    return build_from_leq(n, leq, labels=[format(i, f"0{k}b") for i in range(n)])


def chain(k):
    leq = np.array([[i <= j for j in range(k)] for i in range(k)])
    return build_from_leq(k, leq, labels=[str(i) for i in range(k)])


@pytest.fixture
def m3():
    return diamond_m3()


@pytest.fixture
def n5():
    return pentagon_n5()


@pytest.fixture
def b2():
    return boolean_cube(2)


@pytest.fixture
def b3():
    return boolean_cube(3)


@pytest.fixture(scope="session")
def schema22():
    return Schema(("a", "b"), ("0", "1"))


@pytest.fixture(scope="session")
def r11():
    return build_R(Schema(("a",), ("0",)))


@pytest.fixture(scope="session")
def r22(schema22):
    return build_R(schema22)


@pytest.fixture(scope="session")
def g22(r22):
    return extract_od_graph(r22.lattice)


@pytest.fixture(scope="session")
def hamming22(schema22):
    return hamming_space(schema22)


@pytest.fixture(scope="session")
def cm_graph():
    return build_countermodel()


@pytest.fixture(scope="session")
def cm_lattice(cm_graph):
    return reconstruct(cm_graph)
