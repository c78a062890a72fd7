import itertools
import sys
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tuttealg.fixtures import corpus
from tuttealg.matroid import GraphInput, direct_sum, from_bases, from_graph, uniform

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fixture_corpus():
    return corpus()


@st.composite
def graphs(draw, max_vertices=5, max_edges=7):
    v = draw(st.integers(1, max_vertices))
    k = draw(st.integers(0, max_edges))
    edges = draw(st.lists(st.tuples(st.integers(1, v), st.integers(1, v)), min_size=k, max_size=k))
    return GraphInput(v, tuple(edges))


@st.composite
def sparse_paving(draw, max_n=7):
    """Sparse paving matroid from a random family of r-sets meeting pairwise in < r-1 points."""
    n = draw(st.integers(2, max_n))
    r = draw(st.integers(1, n - 1))
    rng = random.Random(draw(st.integers(0, 10**6)))
    rsets = list(itertools.combinations(range(1, n + 1), r))
    hyper = []
    for s in rng.sample(rsets, k=min(6, len(rsets))):
        if all(len(set(s) & set(h)) < r - 1 for h in hyper):
            hyper.append(s)
    bases = [b for b in itertools.combinations(range(1, n + 1), r) if b not in hyper]
    return from_bases(n, bases)


@st.composite
def matroids(draw, max_n=7):
    """Small matroids from graphs, sparse paving families, uniform matroids and direct sums."""
    kinds = ["graph", "uniform"] + (["paving", "sum"] if max_n >= 4 else [])
    kind = draw(st.sampled_from(kinds))
    if kind == "graph":
        return from_graph(draw(graphs(max_vertices=5, max_edges=max_n)))
    if kind == "paving":
        return draw(sparse_paving(max_n))
    if kind == "uniform":
        n = draw(st.integers(0, max_n))
        return uniform(draw(st.integers(0, n)), n)
    a = draw(matroids(max_n=max_n // 2))
    b = draw(matroids(max_n=max_n - max_n // 2))
    return direct_sum(a, b)


def subsets(n):
    return st.integers(0, (1 << n) - 1) if n else st.just(0)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
