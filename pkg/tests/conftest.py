import random

import pytest
from hypothesis import strategies as st

from harbourne.arrangement import Arrangement, Curve, SingularPoint, SurfaceKind
from harbourne.catalog import IncidenceGraph

KINDS = [SurfaceKind.k3(), SurfaceKind.enriques()]


def random_arrangement(rng: random.Random, max_curves=9, max_points=12, max_r=5, kind=None):
    """Arrangement with random incidence; points may have any multiplicity 2..max_r."""
    n = rng.randint(2, max_curves)
    ids = [f"C{i}" for i in range(n)]
    points = []
    for j in range(rng.randint(0, max_points)):
        r = rng.randint(2, min(max_r, n))
        points.append(SingularPoint(f"P{j}", rng.sample(ids, r)))
    kind = kind or rng.choice(KINDS)
    return Arrangement(kind, [Curve(c) for c in ids], points)


def random_graph(rng: random.Random, max_vertices=10, max_edges=20):
    n = rng.randint(2, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        u, v = rng.sample(vs, 2)
        edges.append((u, v))
    return IncidenceGraph(vs, edges)


def disjoint_double(arr):
    """Two disjoint copies of ``arr`` plus the swap involution."""
    curves = [Curve(f"{c.id}'{k}", c.self_intersection) for k in (0, 1) for c in arr.curves]
    points = [
        SingularPoint(f"{p.id}'{k}", [f"{c}'{k}" for c in p.curves]) for k in (0, 1) for p in arr.points
    ]
    swap = lambda x: x[:-1] + ("1" if x.endswith("0") else "0")
    return (
        Arrangement(arr.surface, curves, points),
        {c.id: swap(c.id) for c in curves},
        {p.id: swap(p.id) for p in points},
    )


@st.composite
def arrangements(draw, max_curves=8, max_points=10, max_r=5):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_arrangement(random.Random(seed), max_curves, max_points, max_r)


@st.composite
def t_vectors(draw, max_r=8, max_count=40):
    return draw(st.dictionaries(st.integers(2, max_r), st.integers(0, max_count), max_size=6))


@pytest.fixture
def rng():
    return random.Random(20161)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
