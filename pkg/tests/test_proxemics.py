import math

import pytest
from hypothesis import given, strategies as st

from avoidsim.proxemics import (
    CrossingConstraint,
    DislikeCurve,
    FitError,
    HallZones,
    RelationshipProfile,
    clamp_distance,
    fit_curve,
    momentary_dislike,
)


def iterate_first_crossing(n, c, e_th, max_t=10_000):
    """Independent oracle: brute-force accumulator iteration."""
    s = 0.0
    for t in range(1, max_t + 1):
        s = n + c * s
        if s > e_th:
            return t
    return None


class TestClampDistance:
    def test_below_range_reads_as_contact(self):
        assert clamp_distance(1.0) == 0.0

    def test_above_range_reads_as_out_of_range(self):
        assert clamp_distance(500.0) == 700.0

    def test_in_range_identity(self):
        assert clamp_distance(30.0) == 30.0

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(ValueError):
            clamp_distance(bad)

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_idempotent(self, x):
        assert clamp_distance(clamp_distance(x)) == clamp_distance(x)

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_range_invariant(self, x):
        d = clamp_distance(x)
        assert d == 0.0 or 2.0 <= d <= 450.0 or d == 700.0


class TestMomentaryDislike:
    def test_friend_at_30cm(self, profiles):
        assert momentary_dislike(profiles["friend"], 30.0) == pytest.approx(0.25, abs=0.01)

    def test_acquaintance_at_30cm(self, profiles):
        assert momentary_dislike(profiles["acquaintance"], 30.0) == pytest.approx(
            0.56, abs=0.01
        )

    def test_friend_at_10cm(self, profiles):
        # Pinned so the friend accumulator first crosses e_th=0.75 at t=3.
        assert momentary_dislike(profiles["friend"], 10.0) == pytest.approx(0.39, abs=1e-6)

    @pytest.mark.parametrize("label", ["stranger", "acquaintance", "friend", "partner"])
    def test_zero_beyond_activation_radius(self, profiles, label):
        p = profiles[label]
        assert momentary_dislike(p, p.activation_radius_cm) == 0.0
        assert momentary_dislike(p, 700.0) == 0.0

    @given(
        st.floats(min_value=0.0, max_value=40.0),
        st.floats(min_value=0.01, max_value=4.0),
    )
    def test_strictly_decreasing_inside_radius(self, d1, gap):
        d2 = d1 + gap
        p = RelationshipProfile(
            label="friend",
            curve=DislikeCurve(a=0.5, b=-0.02),
            decay_c=0.7,
            e_th=0.75,
            e_max=2.5,
            activation_radius_cm=45.0,
            dominance="High",
        )
        assert momentary_dislike(p, d1) > momentary_dislike(p, d2)

    def test_negative_distance_rejected(self, profiles):
        with pytest.raises(ValueError):
            momentary_dislike(profiles["friend"], -1.0)


class TestCurveInvariants:
    def test_amplitude_must_be_positive(self):
        with pytest.raises(ValueError):
            DislikeCurve(a=-1.0, b=-0.01)

    def test_rate_must_be_negative(self):
        with pytest.raises(ValueError):
            DislikeCurve(a=1.0, b=0.01)


class TestFitCurve:
    def test_friend_anchors_two_point_solve(self):
        # Oracle: b = ln(n1/n2)/(d1-d2), a = n1*exp(-b*d1).
        curve = fit_curve([(30.0, 0.25), (10.0, 0.39)])
        b_oracle = math.log(0.25 / 0.39) / (30.0 - 10.0)
        a_oracle = 0.25 * math.exp(-b_oracle * 30.0)
        assert curve.a == pytest.approx(a_oracle, rel=1e-12)
        assert curve.b == pytest.approx(b_oracle, rel=1e-12)
        assert curve.a == pytest.approx(0.488, abs=0.001)
        assert curve.b == pytest.approx(-0.0223, abs=0.0001)
        assert curve.evaluate(30.0) == pytest.approx(0.25, rel=1e-12)
        assert curve.evaluate(10.0) == pytest.approx(0.39, rel=1e-12)

    def test_acquaintance_anchors_two_point_solve(self):
        curve = fit_curve([(30.0, 0.56), (20.0, 0.615)])
        assert curve.a == pytest.approx(0.742, abs=0.001)
        assert curve.b == pytest.approx(-0.00937, abs=0.0001)
        # The fitted curve must reproduce the t=11 crossing at 20 cm.
        assert iterate_first_crossing(curve.evaluate(20.0), 0.7, 2.0) == 11

    def test_single_anchor_without_constraint_fails(self):
        with pytest.raises(FitError):
            fit_curve([(30.0, 0.25)])

    def test_single_anchor_with_crossing_constraint(self):
        con = CrossingConstraint(d_cm=20.0, c=0.7, e_th=2.0, t_star=11)
        curve = fit_curve([(30.0, 0.56)], [con])
        assert curve.b < 0
        assert iterate_first_crossing(curve.evaluate(20.0), 0.7, 2.0) == 11

    def test_infeasible_constraint_reports_violation(self):
        # n(30)=0.56 with c=0.7 saturates at 1.867 < 2.0; t=5 is impossible.
        con = CrossingConstraint(d_cm=30.0, c=0.7, e_th=2.0, t_star=5)
        with pytest.raises(FitError, match="constraint"):
            fit_curve([(30.0, 0.56), (20.0, 0.615)], [con])

    def test_non_decreasing_anchor_set_rejected(self):
        with pytest.raises(FitError):
            fit_curve([(10.0, 0.2), (30.0, 0.5)])

    def test_least_squares_with_three_colinear_anchors(self):
        curve_ref = DislikeCurve(a=0.6, b=-0.015)
        anchors = [(d, curve_ref.evaluate(d)) for d in (10.0, 20.0, 40.0)]
        curve = fit_curve(anchors)
        assert curve.a == pytest.approx(0.6, rel=1e-9)
        assert curve.b == pytest.approx(-0.015, rel=1e-9)

    @given(
        st.floats(min_value=0.05, max_value=5.0),
        st.floats(min_value=-0.2, max_value=-0.001),
        st.floats(min_value=0.0, max_value=100.0),
        st.floats(min_value=5.0, max_value=100.0),
    )
    def test_round_trip(self, a, b, d1, gap):
        curve = DislikeCurve(a=a, b=b)
        d2 = d1 + gap
        refit = fit_curve([(d1, curve.evaluate(d1)), (d2, curve.evaluate(d2))])
        assert refit.a == pytest.approx(a, rel=1e-9)
        assert refit.b == pytest.approx(b, rel=1e-9)


class TestHallZones:
    def test_defaults_are_contiguous(self):
        z = HallZones()
        assert z.intimate[1] == z.personal[0]
        assert z.social[0] == z.personal[1]

    def test_zone_lookup(self):
        z = HallZones()
        assert z.zone_of(30.0) == "intimate"
        assert z.zone_of(100.0) == "personal"
        assert z.zone_of(200.0) == "social"
        assert z.zone_of(500.0) == "public"

    def test_bad_zones_rejected(self):
        with pytest.raises(ValueError):
            HallZones(intimate=(5.0, 45.0))


class TestProfileInvariants:
    def test_thresholds_ordering_enforced(self, profiles):
        kwargs = dict(
            label="friend",
            curve=DislikeCurve(a=0.5, b=-0.02),
            decay_c=0.7,
            activation_radius_cm=45.0,
            dominance="High",
        )
        with pytest.raises(ValueError):
            RelationshipProfile(e_th=2.0, e_max=1.0, **kwargs)

    def test_default_set_orders_dislike_by_closeness(self, profiles):
        # Closer relationship -> lower dislike at the same distance.
        at30 = {k: p.curve.evaluate(30.0) for k, p in profiles.items()}
        assert at30["partner"] < at30["friend"] < at30["acquaintance"] < at30["stranger"]
