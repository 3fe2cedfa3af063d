"""Incidence model of transversal curve arrangements on a surface.

An arrangement is a list of smooth curves plus a list of singular points,
each point recording which curves pass through it. Intersections are
assumed transversal, so the local intersection number of two curves at a
shared point is 1 and the multiplicity of the total divisor at a point is
the number of curves through it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from math import comb

K3 = "K3"
ENRIQUES = "Enriques"
OTHER = "Other"

_FIXED_C2 = {K3: 24, ENRIQUES: 12}


class ArrangementError(ValueError):
    """Raised when an arrangement fails validation.

    ``violations`` holds the individual messages returned by :func:`validate`.
    """

    def __init__(self, violations: Iterable[str]):
        self.violations = list(violations)
        super().__init__("invalid arrangement: " + "; ".join(self.violations))


@dataclass(frozen=True)
class SurfaceKind:
    variant: str
    c2: int

    def __post_init__(self):
        if self.variant in _FIXED_C2:
            if self.c2 != _FIXED_C2[self.variant]:
                raise ValueError(
                    f"{self.variant} surfaces have c2 = {_FIXED_C2[self.variant]}, got {self.c2}"
                )
        elif self.variant == OTHER:
            if not isinstance(self.c2, int) or self.c2 < 0:
                raise ValueError(f"c2 must be a nonnegative integer, got {self.c2!r}")
        else:
            raise ValueError(f"unknown surface variant {self.variant!r}")

    @classmethod
    def k3(cls) -> SurfaceKind:
        return cls(K3, 24)

    @classmethod
    def enriques(cls) -> SurfaceKind:
        return cls(ENRIQUES, 12)

    @classmethod
    def other(cls, c2: int) -> SurfaceKind:
        return cls(OTHER, c2)

    @property
    def canonical_trivial(self) -> bool:
        """K_X numerically trivial (true for K3 and Enriques)."""
        return self.variant in _FIXED_C2

    def miyaoka_cap(self) -> int:
        return 3 * self.c2

    def __str__(self):
        if self.variant == OTHER:
            return f"Other(c2={self.c2})"
        return self.variant


@dataclass(frozen=True)
class Curve:
    id: Hashable
    self_intersection: int = -2
    rational: bool = True


@dataclass(frozen=True)
class SingularPoint:
    id: Hashable
    curves: tuple

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))

    @property
    def multiplicity(self) -> int:
        return len(set(self.curves))


def _pair_key(a, b) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class Arrangement:
    surface: SurfaceKind
    curves: tuple
    points: tuple = ()
    declared_pairwise: Mapping[frozenset, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "points", tuple(self.points))
        if self.declared_pairwise is not None:
            pairs = {frozenset(k): v for k, v in dict(self.declared_pairwise).items()}
            object.__setattr__(self, "declared_pairwise", pairs)

    @property
    def n(self) -> int:
        return len(self.curves)

    @property
    def s(self) -> int:
        return len(self.points)

    def curve_ids(self) -> list:
        return [c.id for c in self.curves]

    def curve(self, curve_id) -> Curve:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise KeyError(curve_id)

    def shared_points(self) -> Counter:
        """Number of listed points on each unordered pair of distinct curves."""
        counts = Counter()
        for p in self.points:
            for a, b in itertools.combinations(set(p.curves), 2):
                counts[_pair_key(a, b)] += 1
        return counts

    def isolated_curves(self) -> list:
        """Curves passing through no singular point."""
        used = {c for p in self.points for c in p.curves}
        return [c.id for c in self.curves if c.id not in used]


def validate(arr: Arrangement) -> list[str]:
    """Return every invariant violation of ``arr``; empty iff well-formed."""
    violations = []
    if arr.n < 1:
        violations.append("arrangement has no curves")

    ids = Counter(arr.curve_ids())
    for cid, k in ids.items():
        if k > 1:
            violations.append(f"duplicate curve id {cid!r}")
    point_ids = Counter(p.id for p in arr.points)
    for pid, k in point_ids.items():
        if k > 1:
            violations.append(f"duplicate point id {pid!r}")

    for p in arr.points:
        dangling = [c for c in p.curves if c not in ids]
        for c in dangling:
            violations.append(f"point {p.id!r} references unknown curve {c!r}")
        repeated = [c for c, k in Counter(p.curves).items() if k > 1]
        for c in repeated:
            violations.append(f"point {p.id!r} lists curve {c!r} more than once")
        if p.multiplicity < 2:
            violations.append(f"point {p.id!r}: point multiplicity < 2 ({p.multiplicity})")

    if arr.declared_pairwise is not None:
        shared = arr.shared_points()
        for key in sorted(set(shared) | set(arr.declared_pairwise), key=lambda k: sorted(map(repr, k))):
            declared = arr.declared_pairwise.get(key, 0)
            if len(key) != 2:
                violations.append(f"declared pairwise entry {sorted(key, key=repr)} is not a pair")
                continue
            if declared < 0:
                violations.append(f"negative declared intersection for {sorted(key, key=repr)}")
            if shared.get(key, 0) != declared:
                violations.append(
                    f"pairwise mismatch for {sorted(key, key=repr)}: "
                    f"declared {declared}, listed points {shared.get(key, 0)}"
                )
    return violations


def check(arr: Arrangement) -> Arrangement:
    violations = validate(arr)
    if violations:
        raise ArrangementError(violations)
    return arr


def _normalize_t(t: Mapping[int, int]) -> dict[int, int]:
    out = {}
    for r, count in t.items():
        r, count = int(r), int(count)
        if r < 2:
            raise ValueError(f"t-vector keys must be >= 2, got {r}")
        if count < 0:
            raise ValueError(f"t-vector counts must be >= 0, got t_{r} = {count}")
        if count:
            out[r] = out.get(r, 0) + count
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class ArrangementSummary:
    """Counts-only view of an arrangement: n, the t-vector and a uniform C^2.

    ``rational`` records whether every curve is smooth rational; it is
    needed to decide whether the K3/Enriques bounds apply.
    """

    surface: SurfaceKind
    n: int
    t: Mapping[int, int] = field(default_factory=dict)
    self_intersection: int = -2
    rational: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        object.__setattr__(self, "t", _normalize_t(self.t))

    @property
    def s(self) -> int:
        return sum(self.t.values())

    def t_r(self, r: int) -> int:
        return self.t.get(r, 0)


def t_vector(arr: Arrangement) -> dict[int, int]:
    check(arr)
    counts = Counter(p.multiplicity for p in arr.points)
    return dict(sorted(counts.items()))


def incidence_count(summary: ArrangementSummary) -> int:
    """Twice the sum of pairwise intersection numbers, sum_r r(r-1) t_r."""
    return sum(r * (r - 1) * t for r, t in summary.t.items())


def divisor_self_intersection(summary: ArrangementSummary) -> int:
    return summary.n * summary.self_intersection + incidence_count(summary)


def sum_r_squared_t(summary: ArrangementSummary) -> int:
    return sum(r * r * t for r, t in summary.t.items())


def sum_r_t(summary: ArrangementSummary) -> int:
    return sum(r * t for r, t in summary.t.items())


def pair_count(summary: ArrangementSummary) -> int:
    """sum_r C(r, 2) t_r: incident curve pairs summed over points."""
    return sum(comb(r, 2) * t for r, t in summary.t.items())


def summarize(arr: Arrangement) -> ArrangementSummary:
    t = t_vector(arr)
    values = {c.self_intersection for c in arr.curves}
    if len(values) != 1:
        raise ArrangementError(
            ["non-uniform arrangement; supply per-curve D^2 manually "
             f"(self-intersections {sorted(values)})"]
        )
    return ArrangementSummary(
        surface=arr.surface,
        n=arr.n,
        t=t,
        self_intersection=values.pop(),
        rational=all(c.rational for c in arr.curves),
    )


def multiplicities(arr: Arrangement) -> list[int]:
    check(arr)
    return [p.multiplicity for p in arr.points]
