"""Distance-to-dislike mapping.

Momentary dislike follows an exponential curve over interpersonal distance,
with per-relationship constants grounded in Hall's proxemic zones. Curves can
be fitted from anchor points and threshold-crossing constraints.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from typing import Sequence

VALID_RELATIONSHIPS = ("stranger", "acquaintance", "friend", "partner")
VALID_DOMINANCE = ("Low", "Medium", "High")

# HC-SR04 usable range; readings outside are mapped to hard sentinels.
CLAMP_LOW_CM = 2.0
CLAMP_HIGH_CM = 450.0
OUT_OF_RANGE_CM = 700.0


class FitError(ValueError):
    """Curve fitting failed (infeasible constraints or too little data)."""


@dataclass(frozen=True)
class DislikeCurve:
    """Exponential dislike curve n(d) = a * exp(b * d), strictly decreasing."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"amplitude a must be positive, got {self.a}")
        if not (math.isfinite(self.b) and self.b < 0):
            raise ValueError(f"decay rate b must be negative, got {self.b}")

    def evaluate(self, d_cm: float) -> float:
        return self.a * math.exp(self.b * d_cm)


@dataclass(frozen=True)
class RelationshipProfile:
    label: str
    curve: DislikeCurve
    decay_c: float
    e_th: float
    e_max: float
    activation_radius_cm: float
    dominance: str

    def __post_init__(self):
        if self.label not in VALID_RELATIONSHIPS:
            raise ValueError(f"unknown relationship label {self.label!r}")
        if not 0.0 <= self.decay_c <= 1.0:
            raise ValueError(f"decay_c must be in [0,1], got {self.decay_c}")
        if not 0.0 < self.e_th <= self.e_max:
            raise ValueError(
                f"thresholds must satisfy 0 < e_th <= e_max, got "
                f"e_th={self.e_th}, e_max={self.e_max}"
            )
        if self.activation_radius_cm <= 0:
            raise ValueError("activation_radius_cm must be positive")
        if self.dominance not in VALID_DOMINANCE:
            raise ValueError(f"unknown dominance level {self.dominance!r}")

    def with_dominance(self, dominance: str) -> "RelationshipProfile":
        return replace(self, dominance=dominance)


@dataclass(frozen=True)
class HallZones:
    """Hall's four proxemic zones as (near_cm, far_cm) bounds."""

    intimate: tuple[float, float] = (0.0, 45.0)
    personal: tuple[float, float] = (45.0, 120.0)
    social: tuple[float, float] = (120.0, 360.0)
    public: tuple[float, float] = (360.0, 760.0)

    def __post_init__(self):
        zones = (self.intimate, self.personal, self.social, self.public)
        if self.intimate[0] != 0.0:
            raise ValueError("intimate zone must start at 0")
        for (n0, f0), (n1, f1) in zip(zones, zones[1:]):
            if not (n0 < f0 and f0 == n1 and n1 < f1):
                raise ValueError("zones must be contiguous and increasing")

    def zone_of(self, d_cm: float) -> str:
        for name in ("intimate", "personal", "social", "public"):
            near, far = getattr(self, name)
            if near <= d_cm < far:
                return name
        return "public"


@dataclass(frozen=True)
class CrossingConstraint:
    """Requires the accumulator to first exceed e_th at exactly frame t_star
    when fed the fitted curve's value at d_cm every frame."""

    d_cm: float
    c: float
    e_th: float
    t_star: int


def clamp_distance(raw_cm: float) -> float:
    """Map a raw sensor reading into the sensor's trusted range.

    Below 2 cm reads as contact (0); above 450 cm reads as out of range (700).
    """
    if not math.isfinite(raw_cm):
        raise ValueError(f"distance must be finite, got {raw_cm}")
    if raw_cm < CLAMP_LOW_CM:
        return 0.0
    if raw_cm > CLAMP_HIGH_CM:
        return OUT_OF_RANGE_CM
    return float(raw_cm)


def momentary_dislike(profile: RelationshipProfile, d_cm: float) -> float:
    """Instantaneous dislike at distance d_cm; zero outside the activation radius."""
    if d_cm < 0:
        raise ValueError(f"distance must be non-negative, got {d_cm}")
    if d_cm >= profile.activation_radius_cm:
        return 0.0
    return profile.curve.evaluate(d_cm)


def _first_crossing(n: float, c: float, e_th: float, max_t: int = 100_000):
    # Exact accumulator iteration; kept local so fitting does not depend on
    # the affect module.
    s = 0.0
    for t in range(1, max_t + 1):
        s = n + c * s
        if s > e_th:
            return t
        if c < 1.0 and n / (1.0 - c) <= e_th:
            return None
    return None


def fit_curve(
    anchors: Sequence[tuple[float, float]],
    constraints: Sequence[CrossingConstraint] = (),
) -> DislikeCurve:
    """Fit (a, b) to anchor points (d_cm, n), honoring crossing constraints.

    Two anchors solve exactly in log space; more use least squares on
    log-residuals. Every crossing constraint is then checked under exact
    accumulator simulation.
    """
    anchors = list(anchors)
    if any(n <= 0 for _, n in anchors):
        raise FitError("anchor dislike values must be positive")
    distances = {d for d, _ in anchors}
    if len(distances) < 2:
        if not (len(distances) == 1 and constraints):
            raise FitError(
                "need at least two anchors with distinct distances, "
                "or one anchor plus a crossing constraint"
            )
        # One anchor pins a ray of (a, b); the first constraint selects b so
        # that the curve passes through the feasibility interval midpoint.
        (d0, n0) = anchors[0]
        con = constraints[0]
        if con.d_cm == d0:
            raise FitError("constraint distance coincides with the anchor")
        lo, hi = _crossing_interval(con.c, con.e_th, con.t_star)
        if lo is None:
            raise FitError(f"crossing constraint at t={con.t_star} is infeasible")
        n_target = (lo + hi) / 2.0
        anchors.append((con.d_cm, n_target))

    if len(anchors) == 2:
        (d1, n1), (d2, n2) = anchors
        b = math.log(n1 / n2) / (d1 - d2)
        a = n1 * math.exp(-b * d1)
    else:
        # Least squares of ln(n) = ln(a) + b*d.
        xs = [d for d, _ in anchors]
        ys = [math.log(n) for _, n in anchors]
        m = len(xs)
        x_mean = sum(xs) / m
        y_mean = sum(ys) / m
        sxx = sum((x - x_mean) ** 2 for x in xs)
        sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
        b = sxy / sxx
        a = math.exp(y_mean - b * x_mean)

    if not b < 0:
        raise FitError(f"fitted curve is not decreasing (b={b:.6g})")
    curve = DislikeCurve(a=a, b=b)

    for con in constraints:
        n = curve.evaluate(con.d_cm)
        got = _first_crossing(n, con.c, con.e_th)
        if got != con.t_star:
            raise FitError(
                f"constraint violated: at d={con.d_cm} cm the accumulator "
                f"first crosses e_th={con.e_th} at t={got}, required t={con.t_star}"
            )
    return curve


def _crossing_interval(c: float, e_th: float, t_star: int):
    """Open-closed interval (lo, hi] of constant n values whose first crossing
    of e_th is exactly at frame t_star."""
    if not (0 <= c < 1) or t_star < 1:
        return None, None
    # s_t = n * (1 - c^t) / (1 - c) > e_th  <=>  n > e_th*(1-c)/(1-c^t)
    lo = e_th * (1 - c) / (1 - c**t_star)
    if t_star == 1:
        return lo, math.inf
    hi = e_th * (1 - c) / (1 - c ** (t_star - 1))
    return lo, hi


def profile_from_dict(label: str, params: dict) -> RelationshipProfile:
    return RelationshipProfile(
        label=label,
        curve=DislikeCurve(a=params["a"], b=params["b"]),
        decay_c=params["c"],
        e_th=params["e_th"],
        e_max=params["e_max"],
        activation_radius_cm=params["activation_radius_cm"],
        dominance=params["dominance"],
    )


def load_profiles(path=None) -> dict[str, RelationshipProfile]:
    """Load the relationship profile set from JSON (default: bundled config)."""
    if path is None:
        text = resources.files("avoidsim.data").joinpath("profiles.json").read_text()
    else:
        with open(path) as f:
            text = f.read()
    raw = json.loads(text)
    return {label: profile_from_dict(label, params) for label, params in raw.items()}
