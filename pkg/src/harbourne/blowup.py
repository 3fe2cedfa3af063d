"""Divisor classes on the blow-up of a surface at singular points of an arrangement.

The Neron-Severi part we need is spanned by pullbacks of the arrangement's
curves and by the exceptional curves over the blown-up points. Pullbacks
pair with each other as on the base surface, exceptional curves are
mutually orthogonal with square -1, and pullbacks are orthogonal to
exceptional curves.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping
from dataclasses import dataclass, field

from .arrangement import (
    Arrangement,
    ArrangementSummary,
    check,
    pair_count,
    summarize,
)


class HypothesisError(ValueError):
    """The arrangement is outside the K3/Enriques rational-curve setting."""


@dataclass(frozen=True, order=True)
class Pullback:
    curve: Hashable


@dataclass(frozen=True, order=True)
class Exceptional:
    point: Hashable


@dataclass(frozen=True)
class DivisorClass:
    """Finitely supported integer combination of basis elements."""

    coefficients: Mapping = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {b: int(c) for b, c in dict(self.coefficients).items() if c}
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, basis) -> DivisorClass:
        return cls({basis: 1})

    def __getitem__(self, basis) -> int:
        return self.coefficients.get(basis, 0)

    def __add__(self, other: DivisorClass) -> DivisorClass:
        out = dict(self.coefficients)
        for b, c in other.coefficients.items():
            out[b] = out.get(b, 0) + c
        return DivisorClass(out)

    def __neg__(self) -> DivisorClass:
        return DivisorClass({b: -c for b, c in self.coefficients.items()})

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __rmul__(self, k: int) -> DivisorClass:
        return DivisorClass({b: k * c for b, c in self.coefficients.items()})

    def __eq__(self, other):
        return isinstance(other, DivisorClass) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __bool__(self):
        return bool(self.coefficients)


ZERO = DivisorClass()


@dataclass(frozen=True)
class Selector:
    """Which singular points to blow up: those of multiplicity >= threshold."""

    threshold: int = 2

    def picks(self, multiplicity: int) -> bool:
        return multiplicity >= self.threshold


ALL_SINGULAR_POINTS = Selector(2)


def multiplicity_at_least(threshold: int) -> Selector:
    return Selector(max(2, threshold))


class BlowUpModel:
    """Intersection pairing on the blow-up of ``source`` at ``blown_points``."""

    def __init__(self, source: Arrangement, blown_points):
        self.source = source
        self.blown_points = tuple(blown_points)
        self._curves = {c.id: c for c in source.curves}
        self._points = {p.id: p for p in source.points}
        self._blown = set(self.blown_points)
        self._shared = source.shared_points()

    @property
    def k(self) -> int:
        return len(self.blown_points)

    @property
    def is_full(self) -> bool:
        return self._blown == set(self._points)

    def basis(self) -> list:
        return [Pullback(c) for c in self._curves] + [Exceptional(p) for p in self.blown_points]

    def _check_basis(self, b):
        if isinstance(b, Pullback):
            if b.curve not in self._curves:
                raise KeyError(f"unknown curve {b.curve!r}")
        elif isinstance(b, Exceptional):
            if b.point not in self._blown:
                raise KeyError(f"point {b.point!r} is not blown up in this model")
        else:
            raise KeyError(f"not a basis element: {b!r}")

    def gram(self, a, b) -> int:
        self._check_basis(a)
        self._check_basis(b)
        if isinstance(a, Exceptional) or isinstance(b, Exceptional):
            return -1 if a == b else 0
        if a.curve == b.curve:
            return self._curves[a.curve].self_intersection
        return self._shared.get(frozenset((a.curve, b.curve)), 0)

    def gram_matrix(self) -> list[list[int]]:
        basis = self.basis()
        return [[self.gram(a, b) for b in basis] for a in basis]

    def pair(self, a: DivisorClass, b: DivisorClass) -> int:
        return sum(
            ca * cb * self.gram(ba, bb)
            for ba, ca in a.coefficients.items()
            for bb, cb in b.coefficients.items()
        )

    def pullback(self, curve_id) -> DivisorClass:
        self._check_basis(Pullback(curve_id))
        return DivisorClass.of(Pullback(curve_id))

    def exceptional(self, point_id) -> DivisorClass:
        self._check_basis(Exceptional(point_id))
        return DivisorClass.of(Exceptional(point_id))

    def strict_transform(self, curve_id) -> DivisorClass:
        """Pullback minus each blown-up exceptional curve through the curve (all with coefficient 1)."""
        if curve_id not in self._curves:
            raise KeyError(f"unknown curve {curve_id!r}")
        coeffs = {Pullback(curve_id): 1}
        for pid in self.blown_points:
            if curve_id in self._points[pid].curves:
                coeffs[Exceptional(pid)] = -1
        return DivisorClass(coeffs)

    def total_transform(self) -> DivisorClass:
        """Sum of the strict transforms of all curves."""
        total = ZERO
        for cid in self._curves:
            total = total + self.strict_transform(cid)
        return total

    def canonical_class(self) -> DivisorClass:
        """K_Y, with the numerically trivial pullback of K_X dropped."""
        if not self.source.surface.canonical_trivial:
            raise HypothesisError("canonical class is only modelled for K3 and Enriques surfaces")
        total = ZERO
        for pid in self.blown_points:
            total = total + self.exceptional(pid)
        return total


def blow_up(arr: Arrangement, selector: Selector = ALL_SINGULAR_POINTS) -> BlowUpModel:
    check(arr)
    chosen = [p.id for p in arr.points if selector.picks(p.multiplicity)]
    return BlowUpModel(arr, chosen)


def strict_transform(model: BlowUpModel, curve_id) -> DivisorClass:
    return model.strict_transform(curve_id)


def pair(model: BlowUpModel, a: DivisorClass, b: DivisorClass) -> int:
    return model.pair(a, b)


@dataclass(frozen=True)
class SNCReport:
    disjoint_transforms: bool
    exceptional_valences: dict
    verdict: bool


def snc_check(model: BlowUpModel) -> SNCReport:
    """Check that strict transforms plus exceptional curves form an SNC divisor.

    Strict transforms must be pairwise disjoint, and every exceptional curve
    must meet exactly the m_P curves through its point, once each.
    """
    if not model.is_full:
        raise ValueError("SNC check requires full blow-up")
    curves = list(model._curves)
    transforms = {c: model.strict_transform(c) for c in curves}
    disjoint = all(
        model.pair(transforms[a], transforms[b]) == 0
        for i, a in enumerate(curves)
        for b in curves[i + 1:]
    )
    valences = {}
    valences_ok = True
    for pid in model.blown_points:
        e = model.exceptional(pid)
        hits = [model.pair(transforms[c], e) for c in curves]
        valences[pid] = sum(1 for h in hits if h != 0)
        if any(h not in (0, 1) for h in hits) or sum(hits) != model._points[pid].multiplicity:
            valences_ok = False
    return SNCReport(disjoint, valences, disjoint and valences_ok)


@dataclass(frozen=True)
class MiyaokaTerms:
    """Intermediate quantities of the Miyaoka-Yau argument on the partial blow-up."""

    k: int
    c2Y: int
    eM: int
    L2: int
    KYM2_a: int
    KYM2_b: int
    lhs: int
    cap: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.cap


def require_rational_k3_or_enriques(summary: ArrangementSummary) -> None:
    if not summary.surface.canonical_trivial:
        raise HypothesisError(
            f"Miyaoka-type bound hypotheses violated: surface is {summary.surface}, not K3 or Enriques"
        )
    if not summary.rational or summary.self_intersection != -2:
        raise HypothesisError(
            "Miyaoka-type bound hypotheses violated: curves must be smooth rational (-2)-curves"
        )


def _as_summary(x) -> ArrangementSummary:
    if isinstance(x, Arrangement):
        bad = [c.id for c in x.curves if not c.rational or c.self_intersection != -2]
        if bad:
            raise HypothesisError(
                f"Miyaoka-type bound hypotheses violated: curves {bad} are not smooth rational (-2)-curves"
            )
        return summarize(x)
    return x


def miyaoka_terms(x: Arrangement | ArrangementSummary) -> MiyaokaTerms:
    summary = _as_summary(x)
    require_rational_k3_or_enriques(summary)
    n, t = summary.n, summary.t
    t2 = t.get(2, 0)
    high = {r: c for r, c in t.items() if r >= 3}

    k = sum(high.values())
    L2 = -2 * n + 2 * pair_count(summary)
    KYM2_a = L2 - sum((r - 1) ** 2 * c for r, c in high.items())
    KYM2_b = -2 * n + 2 * t2 + sum((r - 1) * c for r, c in high.items())
    if KYM2_a != KYM2_b:
        raise AssertionError(f"(K_Y+M)^2 mismatch: {KYM2_a} != {KYM2_b}")
    return MiyaokaTerms(
        k=k,
        c2Y=summary.surface.c2 + k,
        eM=2 * n - t2,
        L2=L2,
        KYM2_a=KYM2_a,
        KYM2_b=KYM2_b,
        lhs=4 * n - t2 + sum((r - 4) * c for r, c in high.items()),
        cap=summary.surface.miyaoka_cap(),
    )
