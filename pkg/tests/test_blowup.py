import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import arrangements, t_vectors
from harbourne.arrangement import (
    Arrangement,
    ArrangementSummary,
    Curve,
    SingularPoint,
    SurfaceKind,
    divisor_self_intersection,
    summarize,
)
from harbourne.blowup import (
    ALL_SINGULAR_POINTS,
    ZERO,
    DivisorClass,
    Exceptional,
    HypothesisError,
    Pullback,
    blow_up,
    miyaoka_terms,
    multiplicity_at_least,
    pair,
    snc_check,
    strict_transform,
)
from harbourne.catalog import (
    catalog_entry,
    full_fidelity_arrangements,
    general_position_lines,
    kummer_16_6_graph,
)

K3 = SurfaceKind.k3()


def quadratic_form(model, a, b):
    """Independent oracle: v_a^T G v_b with an explicit Gram matrix."""
    basis = model.basis()
    G = model.gram_matrix()
    va = [a[x] for x in basis]
    vb = [b[x] for x in basis]
    return sum(va[i] * G[i][j] * vb[j] for i in range(len(basis)) for j in range(len(basis)))


class TestBlowUp:
    def test_six_lines_full(self):
        model = blow_up(general_position_lines(6), ALL_SINGULAR_POINTS)
        assert model.k == 15
        assert model.is_full

    def test_threshold_without_high_points(self):
        arr = general_position_lines(5)
        model = blow_up(arr, multiplicity_at_least(3))
        assert model.k == 0
        full = blow_up(arr)
        for cid_a in arr.curve_ids():
            for cid_b in arr.curve_ids():
                assert model.gram(Pullback(cid_a), Pullback(cid_b)) == full.gram(Pullback(cid_a), Pullback(cid_b))

    def test_schur_quadruple_points(self):
        model = blow_up(catalog_entry("schur-2nd-kind").build(), multiplicity_at_least(3))
        assert model.k == 8

    def test_gram_entries(self):
        model = blow_up(general_position_lines(3))
        assert model.gram(Pullback("L1"), Pullback("L1")) == 1
        assert model.gram(Pullback("L1"), Pullback("L2")) == 1
        e = model.blown_points[0]
        assert model.gram(Exceptional(e), Exceptional(e)) == -1
        assert model.gram(Exceptional(e), Pullback("L1")) == 0


class TestStrictTransform:
    def test_line_through_five_points(self):
        model = blow_up(general_position_lines(6))
        lt = strict_transform(model, "L1")
        assert quadratic_form(model, lt, lt) == -4
        assert pair(model, lt, lt) == -4

    def test_curve_through_no_blown_point(self):
        arr = catalog_entry("schur-2nd-kind").build()
        model = blow_up(arr, multiplicity_at_least(5))
        c = arr.curve_ids()[0]
        ct = strict_transform(model, c)
        assert pair(model, ct, ct) == -2

    def test_pairing_with_exceptionals(self):
        arr = general_position_lines(4)
        model = blow_up(arr)
        for cid in arr.curve_ids():
            ct = model.strict_transform(cid)
            for p in arr.points:
                assert pair(model, ct, model.exceptional(p.id)) == (1 if cid in p.curves else 0)

    def test_two_lines_sharing_a_blown_point(self):
        model = blow_up(general_position_lines(6))
        a, b = model.strict_transform("L1"), model.strict_transform("L2")
        assert quadratic_form(model, a, b) == 0
        assert pair(model, a, b) == 0

    def test_unknown_curve(self):
        with pytest.raises(KeyError):
            blow_up(general_position_lines(2)).strict_transform("nope")


class TestPair:
    def test_exceptional_square(self):
        model = blow_up(general_position_lines(3))
        e = model.exceptional(model.blown_points[0])
        assert pair(model, e, e) == -1

    def test_zero(self):
        model = blow_up(general_position_lines(3))
        assert pair(model, ZERO, model.strict_transform("L1")) == 0

    def test_unknown_basis(self):
        model = blow_up(general_position_lines(3), multiplicity_at_least(3))
        with pytest.raises(KeyError):
            pair(model, DivisorClass.of(Exceptional("p0")), ZERO + DivisorClass.of(Pullback("L1")))

    def test_class_arithmetic(self):
        a = DivisorClass({Pullback("x"): 2})
        b = DivisorClass({Pullback("x"): -2, Exceptional("p"): 1})
        assert (a + b) == DivisorClass.of(Exceptional("p"))
        assert 3 * a - a == DivisorClass({Pullback("x"): 4})
        assert not (a - a)


class TestSNC:
    def test_six_lines_cover(self):
        rep = snc_check(blow_up(catalog_entry("k3-six-lines-cover").build()))
        assert rep.verdict and rep.disjoint_transforms

    def test_kummer_valences(self):
        # conics as curves, nodes as 6-fold points
        g = kummer_16_6_graph()
        conic_side = [v for v in g.vertices if v.startswith("t")]
        node_side = [v for v in g.vertices if v.startswith("n")]
        arr = Arrangement(
            K3,
            [Curve(t) for t in conic_side],
            [SingularPoint(n, g.neighbours(n)) for n in node_side],
        )
        rep = snc_check(blow_up(arr))
        assert rep.verdict
        assert set(rep.exceptional_valences.values()) == {6}
        assert len(rep.exceptional_valences) == 16

    def test_requires_full(self):
        model = blow_up(catalog_entry("schur-2nd-kind").build(), multiplicity_at_least(5))
        with pytest.raises(ValueError, match="SNC check requires full blow-up"):
            snc_check(model)

    def test_unlisted_intersection_caught_upstream(self):
        arr = Arrangement(
            K3, [Curve("a"), Curve("b")], [SingularPoint("P", ["a", "b"])],
            declared_pairwise={("a", "b"): 2},
        )
        with pytest.raises(ValueError):
            blow_up(arr)

    @pytest.mark.parametrize("name", list(full_fidelity_arrangements()))
    def test_catalog_entries(self, name):
        assert snc_check(blow_up(catalog_entry(name).build())).verdict


class TestMiyaokaTerms:
    def test_six_lines_cover(self):
        t = miyaoka_terms(catalog_entry("k3-six-lines-cover").build())
        assert (t.k, t.c2Y, t.eM, t.L2, t.KYM2_a, t.KYM2_b, t.lhs, t.cap) == (0, 24, 12, 18, 18, 18, 54, 72)

    def test_schur(self):
        t = miyaoka_terms(ArrangementSummary(K3, 16, {4: 8}))
        assert (t.k, t.c2Y, t.eM, t.L2, t.KYM2_a, t.KYM2_b, t.lhs, t.cap) == (8, 32, 32, 64, -8, -8, 64, 72)

    @pytest.mark.parametrize("kind,cap", [(SurfaceKind.k3(), 72), (SurfaceKind.enriques(), 36)])
    def test_single_curve(self, kind, cap):
        t = miyaoka_terms(ArrangementSummary(kind, 1, {}))
        assert (t.k, t.eM, t.L2, t.lhs, t.cap) == (0, 2, -2, 4, cap)

    def test_hypotheses(self):
        with pytest.raises(HypothesisError):
            miyaoka_terms(ArrangementSummary(SurfaceKind.other(3), 2, {2: 1}))
        with pytest.raises(HypothesisError):
            miyaoka_terms(ArrangementSummary(K3, 2, {2: 1}, self_intersection=-1))
        arr = Arrangement(K3, [Curve("a"), Curve("b", rational=False)], [SingularPoint("P", ["a", "b"])])
        with pytest.raises(HypothesisError):
            miyaoka_terms(arr)

    def test_model_cross_check(self):
        # (K_Y + M)^2 and e(M) recomputed on the partial blow-up
        arr = catalog_entry("schur-2nd-kind").build()
        model = blow_up(arr, multiplicity_at_least(3))
        m = model.total_transform()
        kym = model.canonical_class() + m
        terms = miyaoka_terms(arr)
        assert model.pair(kym, kym) == terms.KYM2_a
        ids = arr.curve_ids()
        meets = sum(
            model.pair(model.strict_transform(a), model.strict_transform(b))
            for i, a in enumerate(ids) for b in ids[i + 1:]
        )
        assert 2 * arr.n - meets == terms.eM


@settings(max_examples=300, deadline=None)
@given(t_vectors(), st.integers(1, 60), st.sampled_from([SurfaceKind.k3(), SurfaceKind.enriques()]))
def test_kym_identity(t, n, kind):
    terms = miyaoka_terms(ArrangementSummary(kind, n, t))
    assert terms.KYM2_a == terms.KYM2_b


@settings(max_examples=150, deadline=None)
@given(arrangements())
def test_strict_total_transform_square(arr):
    model = blow_up(arr)
    d = model.total_transform()
    s = summarize(arr)
    expected = divisor_self_intersection(s) - sum(p.multiplicity ** 2 for p in arr.points)
    assert model.pair(d, d) == expected == quadratic_form(model, d, d)


@settings(max_examples=150, deadline=None)
@given(arrangements(), st.data())
def test_gram_symmetry(arr, data):
    model = blow_up(arr)
    basis = model.basis()
    coeff = st.integers(-3, 3)
    a = DivisorClass({b: data.draw(coeff) for b in basis})
    b = DivisorClass({b: data.draw(coeff) for b in basis})
    assert model.pair(a, b) == model.pair(b, a)
