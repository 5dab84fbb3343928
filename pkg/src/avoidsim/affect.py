"""Dislike accumulator and endurance/avoidance state machine.

Accumulated dislike s integrates momentary dislike n with a per-frame decay
factor c. While s stays at or below the tolerance threshold the machine is
Enduring with intensity s/e_th; the first frame s exceeds the threshold fires
a one-shot avoidance event scaled by s/e_max, after which s resets and a
refractory period suspends accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .proxemics import RelationshipProfile

DEFAULT_REFRACTORY_FRAMES = 10
DEFAULT_IDLE_EPSILON = 1e-4


class Phase(Enum):
    IDLE = "Idle"
    ENDURING = "Enduring"
    AVOIDING = "Avoiding"


@dataclass(frozen=True)
class AffectState:
    frame_t: int = 0
    s: float = 0.0
    phase: Phase = Phase.IDLE
    avoidance_latched: bool = False
    refractory_remaining: int = 0

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("accumulated dislike cannot be negative")
        if self.refractory_remaining < 0:
            raise ValueError("refractory_remaining cannot be negative")


@dataclass(frozen=True)
class AvoidanceEvent:
    intensity: float  # in (0, 1], clamped at 1 when s overshoots e_max


@dataclass(frozen=True)
class StepOutput:
    new_state: AffectState
    endurance_intensity: float
    avoidance_event: AvoidanceEvent | None = None


def step(
    state: AffectState,
    n_t: float,
    profile: RelationshipProfile,
    refractory_frames: int = DEFAULT_REFRACTORY_FRAMES,
    idle_epsilon: float = DEFAULT_IDLE_EPSILON,
) -> StepOutput:
    """Advance one 100 ms frame: s' = n_t + c*s, then phase/trigger logic.

    Edge-triggered: the avoidance event fires only on the frame the threshold
    is first exceeded; during the refractory period accumulation is suspended
    and no second event can fire.
    """
    if not math.isfinite(n_t) or n_t < 0:
        raise ValueError(f"momentary dislike must be finite and >= 0, got {n_t}")

    t = state.frame_t + 1

    if state.refractory_remaining > 0:
        remaining = state.refractory_remaining - 1
        if remaining > 0:
            new_state = AffectState(
                frame_t=t,
                s=state.s,
                phase=Phase.AVOIDING,
                avoidance_latched=True,
                refractory_remaining=remaining,
            )
        else:
            # Latch clears with the refractory period; accumulation resumes
            # next frame.
            phase = Phase.IDLE if state.s == 0.0 else Phase.ENDURING
            new_state = AffectState(frame_t=t, s=state.s, phase=phase)
        return StepOutput(new_state=new_state, endurance_intensity=0.0)

    s_new = n_t + profile.decay_c * state.s

    if s_new > profile.e_th and not state.avoidance_latched:
        intensity = min(s_new / profile.e_max, 1.0)
        new_state = AffectState(
            frame_t=t,
            s=0.0,  # post-trigger reset
            phase=Phase.AVOIDING,
            # With a zero-length refractory the latch would never clear;
            # the trigger frame is then its own latch period.
            avoidance_latched=refractory_frames > 0,
            refractory_remaining=refractory_frames,
        )
        return StepOutput(
            new_state=new_state,
            endurance_intensity=0.0,
            avoidance_event=AvoidanceEvent(intensity=intensity),
        )

    if s_new < idle_epsilon:
        s_new = 0.0
    phase = Phase.ENDURING if s_new > 0.0 else Phase.IDLE
    new_state = AffectState(frame_t=t, s=s_new, phase=phase)
    endurance = min(s_new / profile.e_th, 1.0)
    return StepOutput(new_state=new_state, endurance_intensity=endurance)


def closed_form_s(n: float, c: float, t: int) -> float:
    """Accumulated dislike after t frames of constant input n.

    Geometric-series form n*(1-c^t)/(1-c); degenerates to n*t when c = 1.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"decay factor must be in [0,1], got {c}")
    if n < 0:
        raise ValueError(f"input must be non-negative, got {n}")
    if t < 1:
        raise ValueError(f"frame index must be >= 1, got {t}")
    if c == 1.0:
        return n * t
    return n * (1.0 - c**t) / (1.0 - c)


def first_crossing_frame(n: float, c: float, e_th: float) -> int | None:
    """Smallest frame t with closed_form_s(n, c, t) > e_th, or None if the
    accumulator saturates at or below the threshold."""
    if n <= 0 or e_th <= 0 or not 0.0 <= c < 1.0:
        raise ValueError("require n > 0, e_th > 0, 0 <= c < 1")
    if n / (1.0 - c) <= e_th:
        return None
    # n*(1-c^t)/(1-c) > e_th  <=>  c^t < 1 - e_th*(1-c)/n
    rhs = 1.0 - e_th * (1.0 - c) / n
    if c == 0.0:
        return 1
    t = math.ceil(math.log(rhs) / math.log(c) + 1e-12)
    # Guard against floating-point edge: verify with the exact form.
    while t > 1 and closed_form_s(n, c, t - 1) > e_th:
        t -= 1
    while closed_form_s(n, c, t) <= e_th:
        t += 1
    return t
