"""Simulation of a robot's rejective internal state under human approach:
distance-driven dislike, leaky accumulation, and graded endurance/avoidance
behavior selected by relationship and Dominance."""

from .affect import AffectState, Phase, closed_form_s, first_crossing_frame, step
from .behavior import Dominance, MotionKind, select_pattern
from .engine import LiveSession, ScenarioConfig, TickEvent, run, summarize
from .proxemics import (
    DislikeCurve,
    RelationshipProfile,
    clamp_distance,
    fit_curve,
    load_profiles,
    momentary_dislike,
)

__all__ = [
    "AffectState",
    "Phase",
    "closed_form_s",
    "first_crossing_frame",
    "step",
    "Dominance",
    "MotionKind",
    "select_pattern",
    "LiveSession",
    "ScenarioConfig",
    "TickEvent",
    "run",
    "summarize",
    "DislikeCurve",
    "RelationshipProfile",
    "clamp_distance",
    "fit_curve",
    "load_profiles",
    "momentary_dislike",
]

__version__ = "0.1.0"
