"""Harbourne constants and the K3/Enriques lower bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import (
    Arrangement,
    ArrangementSummary,
    SurfaceKind,
    check,
    divisor_self_intersection,
    incidence_count,
    multiplicities,
    sum_r_squared_t,
    sum_r_t,
    summarize,
)
from .blowup import HypothesisError, miyaoka_terms, require_rational_k3_or_enriques


class UndefinedConstantError(ValueError):
    pass


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction, digits: int = 6) -> str:
    """Fixed-point rendering with round-half-even on the last digit."""
    scaled = round(Fraction(q) * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def render(q: Fraction) -> str:
    return f"{format_fraction(q)} ({format_decimal(q)})"


def harbourne_constant(summary: ArrangementSummary) -> Fraction:
    if summary.s == 0:
        raise UndefinedConstantError("Harbourne constant undefined without singular points")
    return Fraction(divisor_self_intersection(summary) - sum_r_squared_t(summary), summary.s)


def harbourne_constant_from_multiplicities(arr: Arrangement) -> Fraction:
    """(D^2 - sum of m_P^2) / s straight from the incidence data.

    D^2 is expanded as sum of C_i^2 plus twice the number of shared points
    over unordered curve pairs, so this path never touches the t-vector.
    """
    check(arr)
    if arr.s == 0:
        raise UndefinedConstantError("Harbourne constant undefined without singular points")
    d2 = sum(c.self_intersection for c in arr.curves) + 2 * sum(arr.shared_points().values())
    return Fraction(d2 - sum(m * m for m in multiplicities(arr)), arr.s)


def lower_bound(summary: ArrangementSummary) -> Fraction:
    try:
        require_rational_k3_or_enriques(summary)
    except HypothesisError as exc:
        raise HypothesisError(f"lower bound inapplicable: {exc}") from None
    if summary.s == 0:
        raise UndefinedConstantError("lower bound needs at least one singular point")
    t2 = summary.t_r(2)
    return -4 + Fraction(2 * summary.n + t2 - summary.surface.miyaoka_cap(), summary.s)


@dataclass(frozen=True)
class MiyaokaCheck:
    lhs: int
    cap: int
    holds: bool


def miyaoka_inequality(summary: ArrangementSummary) -> MiyaokaCheck:
    require_rational_k3_or_enriques(summary)
    t2 = summary.t_r(2)
    lhs = 4 * summary.n - t2 + sum((r - 4) * c for r, c in summary.t.items() if r >= 3)
    cap = summary.surface.miyaoka_cap()
    return MiyaokaCheck(lhs, cap, lhs <= cap)


def incidence_identity_check(summary: ArrangementSummary) -> bool:
    # regression guard on the three sums, not a mathematical test
    return incidence_count(summary) - sum_r_squared_t(summary) == -sum_r_t(summary)


def global_bound(kind: SurfaceKind) -> int:
    """Floor for the global rational Harbourne constant: -3 c2(X)."""
    if not kind.canonical_trivial:
        raise HypothesisError(f"no global bound for surface {kind}")
    return -kind.miyaoka_cap()


@dataclass(frozen=True)
class NegativityReport:
    name: str | None
    kind: SurfaceKind
    n: int
    s: int
    t: dict
    d_squared: int
    h: Fraction | None
    lower_bound: Fraction | None
    miyaoka_lhs: int | None
    miyaoka_cap: int | None
    global_floor: int | None
    bound_respected: bool | None
    miyaoka_respected: bool | None
    theorem_hypotheses_met: bool
    notes: tuple = field(default=())

    @property
    def passed(self) -> bool:
        """Every applicable flag is true."""
        flags = (self.bound_respected, self.miyaoka_respected)
        return all(f is not False for f in flags)

    def to_dict(self) -> dict:
        def frac(q):
            return None if q is None else {"num": q.numerator, "den": q.denominator}

        return {
            "name": self.name,
            "kind": self.kind.variant,
            "c2": self.kind.c2,
            "n": self.n,
            "s": self.s,
            "t": {str(r): c for r, c in self.t.items()},
            "d_squared": self.d_squared,
            "h": frac(self.h),
            "lower_bound": frac(self.lower_bound),
            "miyaoka_lhs": self.miyaoka_lhs,
            "miyaoka_cap": self.miyaoka_cap,
            "global_floor": self.global_floor,
            "flags": {
                "bound_respected": self.bound_respected,
                "miyaoka_respected": self.miyaoka_respected,
                "theorem_hypotheses_met": self.theorem_hypotheses_met,
            },
            "notes": list(self.notes),
        }

    def render(self) -> str:
        def opt(q):
            return "undefined" if q is None else render(q)

        def flag(b):
            return "n/a" if b is None else ("yes" if b else "NO")

        t = ", ".join(f"t{r}={c}" for r, c in self.t.items()) or "none"
        lines = []
        if self.name:
            lines.append(f"name: {self.name}")
        lines += [
            f"surface: {self.kind}",
            f"n: {self.n}",
            f"s: {self.s}",
            f"t: {t}",
            f"D^2: {self.d_squared}",
            f"h: {opt(self.h)}",
            f"lower bound: {opt(self.lower_bound)}",
        ]
        if self.miyaoka_lhs is None:
            lines.append("miyaoka: n/a")
        else:
            lines.append(f"miyaoka: {self.miyaoka_lhs} <= {self.miyaoka_cap}")
        if self.global_floor is not None:
            lines.append(f"global floor: {self.global_floor}")
        lines += [
            f"bound respected: {flag(self.bound_respected)}",
            f"miyaoka respected: {flag(self.miyaoka_respected)}",
            f"hypotheses met: {flag(self.theorem_hypotheses_met)}",
        ]
        lines += [f"note: {note}" for note in self.notes]
        return "\n".join(lines)


def report(x: Arrangement | ArrangementSummary, name: str | None = None) -> NegativityReport:
    notes = []
    if isinstance(x, Arrangement):
        summary = summarize(x)
        isolated = x.isolated_curves()
        if isolated:
            notes.append(f"curves meeting no other curve: {', '.join(map(str, isolated))}")
    else:
        summary = x

    h = None
    if summary.s == 0:
        notes.append("h undefined: no singular points")
    else:
        h = harbourne_constant(summary)
        if isinstance(x, Arrangement):
            h_direct = harbourne_constant_from_multiplicities(x)
            if h_direct != h:
                raise AssertionError(f"Harbourne constant mismatch: {h_direct} != {h}")

    hypotheses = True
    try:
        terms = miyaoka_terms(x)
    except HypothesisError as exc:
        hypotheses = False
        terms = None
        notes.append(f"bounds inapplicable: {exc}")

    bound = None
    if terms is not None and summary.s > 0:
        bound = lower_bound(summary)

    return NegativityReport(
        name=name,
        kind=summary.surface,
        n=summary.n,
        s=summary.s,
        t=dict(summary.t),
        d_squared=divisor_self_intersection(summary),
        h=h,
        lower_bound=bound,
        miyaoka_lhs=None if terms is None else terms.lhs,
        miyaoka_cap=None if terms is None else terms.cap,
        global_floor=global_bound(summary.surface) if hypotheses else None,
        bound_respected=None if h is None or bound is None else h >= bound,
        miyaoka_respected=None if terms is None else terms.holds,
        theorem_hypotheses_met=hypotheses,
        notes=tuple(notes),
    )

