"""Fixed-timestep orchestration: distance in, motion command out.

Each 100 ms frame pulls a distance sample, converts it to momentary dislike,
advances the affect state machine, selects a motion command, and records a
TickEvent. Batch runs are fully deterministic; LiveSession adds control
messages applied at tick boundaries so a scripted live run reproduces the
equivalent batch run field for field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import affect, behavior
from .affect import AffectState, Phase
from .behavior import Dominance, PatternLibrary, Trajectory
from .proxemics import (
    RelationshipProfile,
    clamp_distance,
    load_profiles,
    momentary_dislike,
)
from .sensor import DistanceSample

DEFAULT_FRAME_PERIOD_MS = 100


@dataclass(frozen=True)
class ScenarioConfig:
    profile: RelationshipProfile
    frame_period_ms: int = DEFAULT_FRAME_PERIOD_MS
    refractory_frames: int = affect.DEFAULT_REFRACTORY_FRAMES
    idle_epsilon: float = affect.DEFAULT_IDLE_EPSILON
    max_frames: int | None = None

    def __post_init__(self):
        if self.frame_period_ms <= 0:
            raise ValueError("frame_period_ms must be positive")


@dataclass(frozen=True)
class AvoidanceRecord:
    pattern: str
    intensity: float


@dataclass(frozen=True)
class TickEvent:
    frame_t: int
    raw_distance_cm: float
    clamped_distance_cm: float
    n_t: float
    s_t: float
    phase: str
    endurance_intensity: float
    avoidance: AvoidanceRecord | None = None
    command: Trajectory | None = None

    def to_wire(self) -> dict:
        avoid = None
        if self.avoidance is not None:
            avoid = {"pattern": self.avoidance.pattern,
                     "intensity": self.avoidance.intensity}
        return {
            "type": "tick",
            "frame": self.frame_t,
            "d_raw": self.raw_distance_cm,
            "d": self.clamped_distance_cm,
            "n": self.n_t,
            "s": self.s_t,
            "phase": self.phase,
            "e_int": self.endurance_intensity,
            "avoid": avoid,
        }


def _tick(
    state: AffectState,
    raw_cm: float,
    config: ScenarioConfig,
    profile: RelationshipProfile,
    dominance: Dominance,
    library: PatternLibrary,
) -> tuple[AffectState, TickEvent]:
    clamped = clamp_distance(raw_cm)
    n_t = momentary_dislike(profile, clamped)
    out = affect.step(
        state, n_t, profile,
        refractory_frames=config.refractory_frames,
        idle_epsilon=config.idle_epsilon,
    )
    new_state = out.new_state

    avoidance = None
    command = None
    if out.avoidance_event is not None:
        pattern = behavior.select_pattern(dominance, "Avoiding")
        command = behavior.generate_avoidance(
            pattern, out.avoidance_event.intensity, library
        )
        avoidance = AvoidanceRecord(
            pattern=pattern.kind.value, intensity=out.avoidance_event.intensity
        )
    elif new_state.phase == Phase.ENDURING and out.endurance_intensity > 0:
        pattern = behavior.select_pattern(dominance, "Enduring")
        command = behavior.generate_endurance(pattern, out.endurance_intensity, library)
    # During the refractory tail of Avoiding, endurance is suppressed: no command.

    event = TickEvent(
        frame_t=new_state.frame_t,
        raw_distance_cm=float(raw_cm),
        clamped_distance_cm=clamped,
        n_t=n_t,
        s_t=new_state.s,
        phase=new_state.phase.value,
        endurance_intensity=out.endurance_intensity,
        avoidance=avoidance,
        command=command,
    )
    return new_state, event


def run(
    config: ScenarioConfig,
    source: Iterable[DistanceSample | float],
    dominance: Dominance | None = None,
    library: PatternLibrary | None = None,
) -> list[TickEvent]:
    """Run a scenario to source exhaustion (or max_frames) and return the log."""
    profile = config.profile
    dom = dominance or Dominance(profile.dominance)
    lib = library or behavior.default_library()
    state = AffectState()
    events: list[TickEvent] = []
    for sample in source:
        if config.max_frames is not None and len(events) >= config.max_frames:
            break
        raw = sample.distance_cm if isinstance(sample, DistanceSample) else sample
        state, event = _tick(state, raw, config, profile, dom, lib)
        events.append(event)
    return events


def summarize(events: Sequence[TickEvent]) -> dict:
    crossings = [e.frame_t for e in events if e.avoidance is not None]
    return {
        "frames": len(events),
        "first_crossing": crossings[0] if crossings else None,
        "avoidance_count": len(crossings),
        "max_s": max((e.s_t for e in events), default=0.0),
        "max_n": max((e.n_t for e in events), default=0.0),
    }


def write_ndjson(events: Sequence[TickEvent], path):
    with open(path, "w") as f:
        for e in events:
            f.write(json.dumps(e.to_wire()) + "\n")


def write_csv(events: Sequence[TickEvent], path):
    with open(path, "w") as f:
        f.write("frame,d_raw,d,n,s,phase,e_int,avoid_pattern,avoid_intensity\n")
        for e in events:
            pat = e.avoidance.pattern if e.avoidance else ""
            inten = repr(e.avoidance.intensity) if e.avoidance else ""
            f.write(
                f"{e.frame_t},{e.raw_distance_cm!r},{e.clamped_distance_cm!r},"
                f"{e.n_t!r},{e.s_t!r},{e.phase},{e.endurance_intensity!r},"
                f"{pat},{inten}\n"
            )


class ControlError(ValueError):
    """Malformed or unknown control message."""


class LiveSession:
    """Interactive engine: a held distance plus control messages applied at
    the next tick boundary.

    tick() is deterministic; wall-clock pacing belongs to the caller (see
    `service`). The distance holds its last set value, starting out of range.
    """

    def __init__(
        self,
        config: ScenarioConfig,
        profiles: dict[str, RelationshipProfile] | None = None,
        dominance: Dominance | None = None,
        library: PatternLibrary | None = None,
    ):
        self.config = config
        self.profiles = profiles or load_profiles()
        self.profile = config.profile
        self.dominance = dominance or Dominance(config.profile.dominance)
        self.library = library or behavior.default_library()
        self.state = AffectState()
        self.raw_distance_cm = 700.0
        self.events: list[TickEvent] = []
        self._pending: list[dict] = []

    def state_message(self) -> dict:
        return {
            "type": "state",
            "relationship": self.profile.label,
            "dominance": self.dominance.value,
            "e_th": self.profile.e_th,
            "e_max": self.profile.e_max,
            "c": self.profile.decay_c,
            "activation_radius_cm": self.profile.activation_radius_cm,
        }

    def submit(self, message: dict) -> dict:
        """Validate a control message and queue it for the next tick.

        Returns the ack (or raises ControlError); the message takes effect at
        the tick boundary, never mid-tick.
        """
        if not isinstance(message, dict) or "type" not in message:
            raise ControlError("control message must be an object with a 'type'")
        mtype = message["type"]
        if mtype == "set_distance":
            cm = message.get("cm")
            if not isinstance(cm, (int, float)) or not math.isfinite(cm):
                raise ControlError("set_distance needs a finite numeric 'cm'")
        elif mtype == "set_profile":
            rel = message.get("relationship")
            if rel not in self.profiles:
                raise ControlError(f"unknown relationship {rel!r}")
        elif mtype == "set_dominance":
            level = message.get("level")
            if level not in [d.value for d in Dominance]:
                raise ControlError(f"unknown dominance level {level!r}")
        elif mtype != "reset":
            raise ControlError(f"unknown control type {mtype!r}")
        self._pending.append(message)
        return {"type": "ack", "command": mtype}

    def _apply_pending(self):
        for msg in self._pending:
            mtype = msg["type"]
            if mtype == "set_distance":
                self.raw_distance_cm = float(msg["cm"])
            elif mtype == "set_profile":
                # Accumulated dislike carries over; thresholds swap.
                self.profile = self.profiles[msg["relationship"]]
            elif mtype == "set_dominance":
                self.dominance = Dominance(msg["level"])
            elif mtype == "reset":
                self.state = AffectState()
        self._pending.clear()

    def tick(self) -> TickEvent:
        self._apply_pending()
        self.state, event = _tick(
            self.state, self.raw_distance_cm, self.config,
            self.profile, self.dominance, self.library,
        )
        self.events.append(event)
        return event
