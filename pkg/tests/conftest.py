import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zetalg.algebra import IntersectionArray, analyze, complete_graph, from_intersection_array  # noqa: E402
from zetalg.inputs import builtin  # noqa: E402
from zetalg.zeta import LocalOrder  # noqa: E402

_cache = {}


def analysis(name):
    if name not in _cache:
        _cache[name] = analyze(builtin(name))
    return _cache[name]


def local(name, p):
    key = (name, p)
    if key not in _cache:
        _cache[key] = LocalOrder(analysis(name), p)
    return _cache[key]


@pytest.fixture
def petersen():
    return analysis("petersen")


@pytest.fixture
def square():
    return analysis("square")


@pytest.fixture
def gq21():
    return analysis("gq21")


def srg(k, b1, c2):
    return from_intersection_array(IntersectionArray((k, b1), (1, c2)), association_scheme=False)


__all__ = ["analysis", "local", "srg", "complete_graph"]
