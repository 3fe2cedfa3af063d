"""Builders for concrete arrangements and the table of published configurations.

Most configurations are "dual graph" arrangements: vertices are curves and
edges are double points. ``from_graph_dual`` reads a graph the other way
round (edges are curves, vertices are points of multiplicity deg(v)).
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import (
    Arrangement,
    ArrangementSummary,
    Curve,
    SingularPoint,
    SurfaceKind,
    check,
)
from .negativity import NegativityReport, report


@dataclass(frozen=True)
class IncidenceGraph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {e!r} does not have two endpoints")
            u, v = e
            if u not in known or v not in known:
                raise ValueError(f"edge {e!r} has an unknown endpoint")
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")

    def degree(self) -> Counter:
        deg = Counter({v: 0 for v in self.vertices})
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbours(self, v) -> list:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]


def complete_graph_on(vertices) -> IncidenceGraph:
    vertices = list(vertices)
    return IncidenceGraph(vertices, itertools.combinations(vertices, 2))


def complete_graph(n: int) -> IncidenceGraph:
    return complete_graph_on(str(i) for i in range(1, n + 1))


def complete_bipartite(a: int, b: int) -> IncidenceGraph:
    left = [f"a{i}" for i in range(1, a + 1)]
    right = [f"b{j}" for j in range(1, b + 1)]
    return IncidenceGraph(left + right, itertools.product(left, right))


def petersen_graph() -> IncidenceGraph:
    # outer 5-cycle, spokes, inner pentagram
    outer = [f"o{i}" for i in range(5)]
    inner = [f"i{i}" for i in range(5)]
    edges = [(outer[i], outer[(i + 1) % 5]) for i in range(5)]
    edges += [(outer[i], inner[i]) for i in range(5)]
    edges += [(inner[i], inner[(i + 2) % 5]) for i in range(5)]
    return IncidenceGraph(outer + inner, edges)


def circulant_graph(n: int, jumps) -> IncidenceGraph:
    vs = [f"v{i}" for i in range(n)]
    edges = set()
    for i in range(n):
        for j in jumps:
            a, b = sorted((i, (i + j) % n))
            edges.add((a, b))
    return IncidenceGraph(vs, [(vs[a], vs[b]) for a, b in sorted(edges)])


def cycle_graph(n: int) -> IncidenceGraph:
    return circulant_graph(n, [1])


def subdivide(g: IncidenceGraph) -> IncidenceGraph:
    """Insert a new vertex in the middle of every edge."""
    vertices = list(g.vertices)
    edges = []
    for i, (u, v) in enumerate(g.edges):
        mid = f"{u}-{v}" if g.edges.count((u, v)) == 1 else f"{u}-{v}#{i}"
        vertices.append(mid)
        edges += [(u, mid), (mid, v)]
    return IncidenceGraph(vertices, edges)


def from_graph(g: IncidenceGraph, kind: SurfaceKind, self_int: int = -2) -> Arrangement:
    """Vertices become curves, edges become double points."""
    curves = [Curve(str(v), self_int) for v in g.vertices]
    points = [SingularPoint(f"p{i}", (str(u), str(v))) for i, (u, v) in enumerate(g.edges)]
    return check(Arrangement(kind, curves, points))


def from_graph_dual(g: IncidenceGraph, kind: SurfaceKind, self_int: int = -2) -> Arrangement:
    """Edges become curves, each vertex a point of multiplicity deg(v)."""
    seen = set()
    for u, v in g.edges:
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"multi-edge between {u!r} and {v!r}")
        seen.add(key)
    deg = g.degree()
    low = [v for v in g.vertices if deg[v] < 2]
    if low:
        raise ValueError(f"vertices of degree < 2: {low}")
    names = [f"{u}-{v}" for u, v in g.edges]
    curves = [Curve(name, self_int) for name in names]
    points = [
        SingularPoint(str(v), [name for name, e in zip(names, g.edges) if v in e])
        for v in g.vertices
    ]
    return check(Arrangement(kind, curves, points))


def insert_chains(arr: Arrangement, chain_length: int) -> Arrangement:
    """Replace every double point C_i . C_j by a chain C_i - X_1 - ... - X_l - C_j of (-2)-curves."""
    if chain_length < 1:
        raise ValueError("chain length must be positive")
    check(arr)
    high = [p.id for p in arr.points if p.multiplicity != 2]
    if high:
        raise ValueError(f"chains need double points only; points {high} have higher multiplicity")
    curves = list(arr.curves)
    points = []
    for p in arr.points:
        a, b = p.curves
        links = [f"{p.id}.{k}" for k in range(1, chain_length + 1)]
        curves += [Curve(x, -2) for x in links]
        path = [a, *links, b]
        points += [SingularPoint(f"{p.id}:{k}", (path[k], path[k + 1])) for k in range(len(path) - 1)]
    return check(Arrangement(arr.surface, curves, points))


def _check_involution(mapping: dict, domain, what: str):
    if set(mapping) != set(domain):
        raise ValueError(f"{what} involution must be defined on every {what}")
    for x, y in mapping.items():
        if mapping.get(y) != x:
            raise ValueError(f"{what} map is not an involution at {x!r}")
        if x == y:
            raise ValueError(f"fixed point found: {what} {x!r}")


def quotient_free_involution(x, surface: SurfaceKind, curve_map: dict | None = None,
                             point_map: dict | None = None):
    """Quotient by a fixed-point-free involution.

    Summaries only need even counts. Full arrangements need the involution
    on curves and on points; it must be free, preserve incidence, and never
    put a curve and its image through the same point.
    """
    if isinstance(x, ArrangementSummary):
        odd = [f"n={x.n}"] if x.n % 2 else []
        odd += [f"t{r}={c}" for r, c in x.t.items() if c % 2]
        if odd:
            raise ValueError(f"odd count at summary fidelity: {', '.join(odd)}")
        return ArrangementSummary(
            surface, x.n // 2, {r: c // 2 for r, c in x.t.items()}, x.self_intersection, x.rational
        )

    arr = check(x)
    if curve_map is None or point_map is None:
        raise ValueError("full-fidelity quotient needs curve and point involutions")
    _check_involution(curve_map, arr.curve_ids(), "curve")
    _check_involution(point_map, [p.id for p in arr.points], "point")

    by_id = {p.id: p for p in arr.points}
    for p in arr.points:
        image = {curve_map[c] for c in p.curves}
        if image != set(by_id[point_map[p.id]].curves):
            raise ValueError(f"incidence not preserved at point {p.id!r}")

    order = {cid: i for i, cid in enumerate(arr.curve_ids())}
    rep = {c: min(c, curve_map[c], key=order.__getitem__) for c in order}
    curves = []
    for c in arr.curves:
        if rep[c.id] != c.id:
            continue
        if arr.curve(curve_map[c.id]).self_intersection != c.self_intersection:
            raise ValueError(f"involution changes the self-intersection of {c.id!r}")
        curves.append(c)

    porder = {p.id: i for i, p in enumerate(arr.points)}
    points = []
    for p in arr.points:
        if min(p.id, point_map[p.id], key=porder.__getitem__) != p.id:
            continue
        images = [rep[c] for c in p.curves]
        if len(set(images)) != len(images):
            raise ValueError(f"a curve and its image meet at point {p.id!r}")
        points.append(SingularPoint(p.id, images))
    return check(Arrangement(surface, curves, points))


def general_position_lines(n: int) -> Arrangement:
    """n lines in general position in the plane: C(n, 2) double points."""
    if n < 2:
        raise ValueError("need at least two lines")
    lines = [f"L{i}" for i in range(1, n + 1)]
    return from_graph(complete_graph_on(lines), SurfaceKind.other(3), self_int=1)


# --- 16_6 configuration -------------------------------------------------

DIFFERENCE_SET = ("0000", "1000", "0100", "0010", "0001", "1111")


def _xor(a: str, b: str) -> str:
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


def kummer_16_6_graph() -> IncidenceGraph:
    """Bipartite node/trope incidence: node x lies on trope y iff x + y is in the difference set."""
    group = ["".join(bits) for bits in itertools.product("01", repeat=4)]
    nodes = [f"n{g}" for g in group]
    tropes = [f"t{g}" for g in group]
    edges = [(f"n{x}", f"t{y}") for x in group for y in group if _xor(x, y) in DIFFERENCE_SET]
    return IncidenceGraph(nodes + tropes, edges)


# --- hexagonal six-line configuration ----------------------------------

# Coordinates (x1, x2, x3, y, z) of the nine A2 points.
HEX_POINTS = {
    "p1": (0, 1, 0, 1, 0),
    "p2": (0, 1, 0, -1, 0),
    "p3": (0, 1, 1, 0, 0),
    "p4": (1, 1, 0, 0, 0),
    "p5": (0, 0, 1, 1, 0),
    "p6": (0, 0, 1, -1, 0),
    "p7": (1, 0, 1, 0, 0),
    "p8": (1, 0, 0, 1, 0),
    "p9": (1, 0, 0, -1, 0),
}


def _on_hex_line(point, i: int, j: int, k: int) -> bool:
    # line L_ijk: z = x_i = y - (x_j - x_k) = 0
    x = point[:3]
    y, z = point[3], point[4]
    return z == 0 and x[i - 1] == 0 and y - (x[j - 1] - x[k - 1]) == 0


def hexagonal_arrangement(kind: SurfaceKind | None = None) -> Arrangement:
    """Six lines L_ijk through the nine A2 points, each point on exactly two lines."""
    kind = kind or SurfaceKind.k3()
    lines = list(itertools.permutations((1, 2, 3)))
    names = [f"L{i}{j}{k}" for i, j, k in lines]
    points = [
        SingularPoint(pid, [name for name, ijk in zip(names, lines) if _on_hex_line(xyz, *ijk)])
        for pid, xyz in HEX_POINTS.items()
    ]
    return check(Arrangement(kind, [Curve(name) for name in names], points))


# --- Mukai-Ohashi cube -------------------------------------------------

def cube_arrangement() -> Arrangement:
    """Four tropes T_l and four D4 stars (centre P_m, leaves Q_ml for l != m).

    Leaf Q_ml of the star at P_m meets the trope T_l, which gives the cube
    graph with every edge subdivided: 20 curves and 24 double points.
    """
    idx = range(1, 5)
    curves = [Curve(f"T{l}") for l in idx] + [Curve(f"P{m}") for m in idx]
    curves += [Curve(f"Q{m}{l}") for m in idx for l in idx if l != m]
    points = []
    for m in idx:
        for l in idx:
            if l != m:
                points.append(SingularPoint(f"c{m}{l}", (f"P{m}", f"Q{m}{l}")))
                points.append(SingularPoint(f"t{m}{l}", (f"Q{m}{l}", f"T{l}")))
    return check(Arrangement(SurfaceKind.k3(), curves, points))


def cube_involution() -> tuple[dict, dict]:
    """Antipodal map of the cube: T_l <-> P_l, Q_ml <-> Q_lm, c_ml <-> t_lm."""
    curve_map, point_map = {}, {}
    for l in range(1, 5):
        curve_map[f"T{l}"], curve_map[f"P{l}"] = f"P{l}", f"T{l}"
        for m in range(1, 5):
            if l != m:
                curve_map[f"Q{m}{l}"] = f"Q{l}{m}"
                point_map[f"c{m}{l}"] = f"t{l}{m}"
                point_map[f"t{m}{l}"] = f"c{l}{m}"
    return curve_map, point_map


# --- catalog table -------------------------------------------------------

@dataclass(frozen=True)
class Expected:
    n: int
    t: dict
    h: Fraction
    lower_bound: Fraction
    miyaoka_cap: int


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fidelity: str  # "full" or "summary"
    build: Callable[[], Arrangement | ArrangementSummary]
    expected: Expected
    source: str
    metadata: dict = field(default_factory=dict)

    def construct(self):
        return self.build()

    def report(self) -> NegativityReport:
        return report(self.build(), name=self.name)

    @property
    def kind(self) -> str:
        x = self.build()
        return x.surface.variant


def _cube_quotient() -> Arrangement:
    return quotient_free_involution(cube_arrangement(), SurfaceKind.enriques(), *cube_involution())


def _hessian_k3() -> ArrangementSummary:
    return ArrangementSummary(SurfaceKind.k3(), 40, {2: 130})


_K3 = SurfaceKind.k3()
F = Fraction

_ENTRIES = [
    CatalogEntry(
        "k3-six-lines-cover", "full",
        lambda: from_graph(subdivide(complete_graph(6)), _K3),
        Expected(21, {2: 30}, F(-17, 5), F(-4), 72),
        "six general lines, double cover",
    ),
    CatalogEntry(
        "vinberg-x4", "full",
        lambda: from_graph(subdivide(petersen_graph()), _K3),
        Expected(25, {2: 30}, F(-11, 3), F(-56, 15), 72),
        "Vinberg X4, subdivided Petersen graph",
    ),
    CatalogEntry(
        "vinberg-x3", "full",
        lambda: insert_chains(hexagonal_arrangement(), 2),
        Expected(24, {2: 27}, F(-34, 9), F(-35, 9), 72),
        "Vinberg X3, six lines with A2 chains",
    ),
    CatalogEntry(
        "kummer-16-6", "full",
        lambda: from_graph(kummer_16_6_graph(), _K3),
        Expected(32, {2: 96}, F(-8, 3), F(-37, 12), 72),
        "16_6 Kummer configuration",
        {"difference_set": DIFFERENCE_SET},
    ),
    CatalogEntry(
        "schur-2nd-kind", "full",
        lambda: from_graph_dual(circulant_graph(8, (1, 2)), _K3),
        Expected(16, {4: 8}, F(-8), F(-9), 72),
        "Schur quartic, lines of the second kind",
        {"incidence_model": "circulant graph C8(1,2); only the counts are determined"},
    ),
    CatalogEntry(
        "double-kummer", "full",
        lambda: from_graph(subdivide(complete_bipartite(4, 4)), _K3),
        Expected(24, {2: 32}, F(-7, 2), F(-15, 4), 72),
        "double Kummer pencil",
    ),
    CatalogEntry(
        "mukai-ohashi-cube", "full",
        cube_arrangement,
        Expected(20, {2: 24}, F(-11, 3), F(-13, 3), 72),
        "Mukai-Ohashi symmetric quartic, resolved D4 points and tropes",
        {"leaf_convention": "leaf Q_ml of the star at P_m meets trope T_l"},
    ),
    CatalogEntry(
        "10A", "full",
        _cube_quotient,
        Expected(10, {2: 12}, F(-11, 3), F(-13, 3), 36),
        "Enriques quotient of the cube configuration",
    ),
    CatalogEntry(
        "hessian-k3", "summary",
        _hessian_k3,
        Expected(40, {2: 130}, F(-34, 13), F(-191, 65), 72),
        "Hessian K3 surface of a Sylvester cubic",
    ),
    CatalogEntry(
        "hessian-enriques", "summary",
        lambda: quotient_free_involution(_hessian_k3(), SurfaceKind.enriques()),
        Expected(20, {2: 65}, F(-34, 13), F(-191, 65), 36),
        "Enriques quotient of the Hessian K3 surface",
    ),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def entry_names() -> list[str]:
    return list(CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None


@dataclass(frozen=True)
class VerifyResult:
    name: str
    kind: str
    report: NegativityReport
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_entry(entry: CatalogEntry) -> VerifyResult:
    rep = entry.report()
    exp = entry.expected
    mismatches = []
    for label, got, want in [
        ("n", rep.n, exp.n),
        ("t", rep.t, dict(exp.t)),
        ("h", rep.h, exp.h),
        ("lower_bound", rep.lower_bound, exp.lower_bound),
        ("miyaoka_cap", rep.miyaoka_cap, exp.miyaoka_cap),
    ]:
        if got != want:
            mismatches.append(f"{label}: computed {got}, expected {want}")
    if rep.miyaoka_respected is not True:
        mismatches.append("miyaoka inequality not satisfied")
    if rep.bound_respected is not True:
        mismatches.append("h below lower bound")
    return VerifyResult(entry.name, rep.kind.variant, rep, tuple(mismatches))


def full_fidelity_arrangements() -> dict[str, Arrangement]:
    return {e.name: e.build() for e in CATALOG.values() if e.fidelity == "full"}

