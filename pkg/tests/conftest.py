import numpy as np
import pytest

from mbckit import CostedInstance, Graph


@pytest.fixture
def p3():
    # a - b - c
    return Graph([("a", "b"), ("b", "c")])


@pytest.fixture
def p4():
    return Graph([("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture
def c4():
    return Graph([("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")])


@pytest.fixture
def k4():
    labs = ["0", "1", "2", "3"]
    return Graph([(labs[i], labs[j]) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def star4():
    # center c, leaves x y z
    return Graph([("c", "x"), ("c", "y"), ("c", "z")])


def make_instance(g, costs=None, budget=1.0):
    cost = np.ones(g.n) if costs is None else np.asarray(costs, dtype=np.float64)
    return CostedInstance(g, cost, float(budget))
