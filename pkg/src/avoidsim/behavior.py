"""Motion pattern selection and trajectory generation.

Dominance and phase pick one of six preset patterns (three looping endurance
motions, three one-shot avoidance actions). Endurance intensity scales joint
amplitude around the neutral pose; avoidance intensity scales playback speed
while keeping the pose geometry fixed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

N_JOINTS = 6
DEFAULT_JOINT_LIMIT_DEG = 165.0
MIN_SPEED_SCALE = 0.1  # floor on avoidance intensity to bound duration


class CategoryError(ValueError):
    """Pattern passed to the wrong generator."""


class Dominance(Enum):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"


class MotionKind(Enum):
    SLUMPING = "Slumping"
    DEEP_BREATHING = "DeepBreathing"
    JITTER = "Jitter"
    ESCAPE = "Escape"
    PUSH_AWAY = "PushAway"
    STRIKE = "Strike"


ENDURANCE_KINDS = {MotionKind.SLUMPING, MotionKind.DEEP_BREATHING, MotionKind.JITTER}
AVOIDANCE_KINDS = {MotionKind.ESCAPE, MotionKind.PUSH_AWAY, MotionKind.STRIKE}

# Dominance table: endurance motion / avoidance motion per level.
_PATTERN_TABLE = {
    (Dominance.LOW, "Enduring"): MotionKind.SLUMPING,
    (Dominance.LOW, "Avoiding"): MotionKind.ESCAPE,
    (Dominance.MEDIUM, "Enduring"): MotionKind.DEEP_BREATHING,
    (Dominance.MEDIUM, "Avoiding"): MotionKind.PUSH_AWAY,
    (Dominance.HIGH, "Enduring"): MotionKind.JITTER,
    (Dominance.HIGH, "Avoiding"): MotionKind.STRIKE,
}


@dataclass(frozen=True)
class MotionPattern:
    kind: MotionKind

    @property
    def category(self) -> str:
        return "Endurance" if self.kind in ENDURANCE_KINDS else "Avoidance"


@dataclass(frozen=True)
class Keyframe:
    angles: tuple[float, ...]
    t_ms: int

    def __post_init__(self):
        if len(self.angles) != N_JOINTS:
            raise ValueError(f"expected {N_JOINTS} joint angles")
        if self.t_ms < 0:
            raise ValueError("time offset must be non-negative")


@dataclass(frozen=True)
class Trajectory:
    keyframes: tuple[Keyframe, ...]
    loops: bool
    phase_boundary_ms: int | None = None  # avoidance: reaction/return split

    def __post_init__(self):
        if not self.keyframes:
            raise ValueError("trajectory needs at least one keyframe")
        if self.keyframes[0].t_ms != 0:
            raise ValueError("first keyframe must be at t=0")
        offsets = [k.t_ms for k in self.keyframes]
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError("keyframe time offsets must be strictly increasing")

    @property
    def duration_ms(self) -> int:
        return self.keyframes[-1].t_ms


@dataclass(frozen=True)
class PatternDefinition:
    kind: MotionKind
    category: str
    base_amplitude_deg: float
    keyframes: tuple[Keyframe, ...]
    loops: bool
    phase_boundary_ms: int | None = None


class PatternLibrary:
    """Neutral pose plus the six pattern definitions, loaded once from JSON."""

    def __init__(self, neutral, patterns, joint_limit_deg=DEFAULT_JOINT_LIMIT_DEG):
        self.neutral = tuple(float(a) for a in neutral)
        if len(self.neutral) != N_JOINTS:
            raise ValueError(f"neutral pose needs {N_JOINTS} angles")
        self.patterns: dict[MotionKind, PatternDefinition] = patterns
        self.joint_limit_deg = joint_limit_deg

    @classmethod
    def load(cls, path=None, joint_limit_deg=DEFAULT_JOINT_LIMIT_DEG):
        if path is None:
            text = resources.files("avoidsim.data").joinpath("patterns.json").read_text()
        else:
            with open(path) as f:
                text = f.read()
        raw = json.loads(text)
        patterns = {}
        for name, p in raw["patterns"].items():
            kind = MotionKind(name)
            patterns[kind] = PatternDefinition(
                kind=kind,
                category=p["category"],
                base_amplitude_deg=p["base_amplitude_deg"],
                keyframes=tuple(
                    Keyframe(angles=tuple(kf["angles"]), t_ms=kf["t_ms"])
                    for kf in p["keyframes"]
                ),
                loops=p["loops"],
                phase_boundary_ms=p.get("phase_boundary_ms"),
            )
        missing = set(MotionKind) - set(patterns)
        if missing:
            raise ValueError(f"pattern file missing {sorted(k.value for k in missing)}")
        return cls(raw["neutral"], patterns, joint_limit_deg)


_default_library: PatternLibrary | None = None


def default_library() -> PatternLibrary:
    global _default_library
    if _default_library is None:
        _default_library = PatternLibrary.load()
    return _default_library


def select_pattern(dominance: Dominance, phase: str) -> MotionPattern:
    """Exact Dominance-by-phase lookup; total over {Low,Medium,High} x
    {Enduring, Avoiding}."""
    if phase not in ("Enduring", "Avoiding"):
        raise ValueError(f"phase must be Enduring or Avoiding, got {phase!r}")
    return MotionPattern(kind=_PATTERN_TABLE[(dominance, phase)])


def _check_limits(traj: Trajectory, limit: float):
    for kf in traj.keyframes:
        for angle in kf.angles:
            if abs(angle) > limit:
                raise ValueError(
                    f"keyframe angle {angle} exceeds joint limit +/-{limit}"
                )


def generate_endurance(
    pattern: MotionPattern,
    intensity: float,
    library: PatternLibrary | None = None,
) -> Trajectory:
    """Looping trajectory with joint deviations from neutral scaled by
    intensity; timing is the pattern's fixed period."""
    if pattern.category != "Endurance":
        raise CategoryError(f"{pattern.kind.value} is not an endurance pattern")
    if not 0.0 <= intensity <= 1.0:
        raise ValueError(f"endurance intensity must be in [0,1], got {intensity}")
    lib = library or default_library()
    defn = lib.patterns[pattern.kind]
    neutral = lib.neutral
    keyframes = tuple(
        Keyframe(
            angles=tuple(
                n + intensity * (a - n) for n, a in zip(neutral, kf.angles)
            ),
            t_ms=kf.t_ms,
        )
        for kf in defn.keyframes
    )
    traj = Trajectory(keyframes=keyframes, loops=True)
    _check_limits(traj, lib.joint_limit_deg)
    return traj


def generate_avoidance(
    pattern: MotionPattern,
    intensity: float,
    library: PatternLibrary | None = None,
) -> Trajectory:
    """Two-phase one-shot trajectory; intensity speeds up playback (offsets
    divided by max(intensity, 0.1)) without changing the poses."""
    if pattern.category != "Avoidance":
        raise CategoryError(f"{pattern.kind.value} is not an avoidance pattern")
    if not 0.0 < intensity <= 1.0:
        raise ValueError(f"avoidance intensity must be in (0,1], got {intensity}")
    lib = library or default_library()
    defn = lib.patterns[pattern.kind]
    scale = 1.0 / max(intensity, MIN_SPEED_SCALE)
    keyframes = tuple(
        Keyframe(angles=kf.angles, t_ms=round(kf.t_ms * scale))
        for kf in defn.keyframes
    )
    boundary = defn.phase_boundary_ms
    traj = Trajectory(
        keyframes=keyframes,
        loops=False,
        phase_boundary_ms=round(boundary * scale) if boundary is not None else None,
    )
    _check_limits(traj, lib.joint_limit_deg)
    return traj
