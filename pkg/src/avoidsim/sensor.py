"""Distance sample sources: CSV trace replay, synthetic generators, and a
mock serial line protocol standing in for the ultrasonic sensor pipeline.

Every emitted sample has already passed through the range clamp, so distances
are always in {0} u [2, 450] u {700} cm.
"""

from __future__ import annotations

import csv
import logging
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .proxemics import clamp_distance

logger = logging.getLogger(__name__)

FRAME_PERIOD_MS = 100  # 10 fps engine rate

_SERIAL_RE = re.compile(r"^R (-?\d+)$")


class TraceError(ValueError):
    """Malformed or non-monotone trace file."""


class ProtocolError(ValueError):
    """Serial line did not match the `R <cm>` framing."""


@dataclass(frozen=True)
class DistanceSample:
    frame_t: int
    distance_cm: float

    def __post_init__(self):
        d = self.distance_cm
        if not (d == 0.0 or 2.0 <= d <= 450.0 or d == 700.0):
            raise ValueError(f"distance {d} violates the clamp invariant")


def read_trace(path, frame_period_ms: int = FRAME_PERIOD_MS) -> list[DistanceSample]:
    """Replay a `t_ms,distance_cm` CSV, resampled to engine frames.

    Each frame holds the nearest earlier row (rows between frame boundaries
    are dropped); values are clamped at ingestion.
    """
    rows: list[tuple[int, float]] = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["t_ms", "distance_cm"]:
            raise TraceError(f"{path}: expected header 't_ms,distance_cm'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                t_ms = int(row[0])
                d = float(row[1])
            except (ValueError, IndexError):
                raise TraceError(f"{path}:{lineno}: malformed row {row!r}") from None
            if not math.isfinite(d):
                raise TraceError(f"{path}:{lineno}: non-finite distance")
            if rows and t_ms <= rows[-1][0]:
                raise TraceError(f"{path}:{lineno}: timestamps must be increasing")
            rows.append((t_ms, d))
    if not rows:
        raise TraceError(f"{path}: trace has no data rows")

    samples = []
    frame = 1
    idx = 0
    t = rows[0][0]
    while t <= rows[-1][0]:
        while idx + 1 < len(rows) and rows[idx + 1][0] <= t:
            idx += 1
        samples.append(DistanceSample(frame, clamp_distance(rows[idx][1])))
        frame += 1
        t += frame_period_ms
    return samples


def synthetic(kind: str, params: dict, n_frames: int) -> list[DistanceSample]:
    """Deterministic generated source: Constant, Ramp, or Sinusoid."""
    if n_frames < 0:
        raise ValueError("n_frames must be non-negative")
    kind = kind.lower()
    if kind == "constant":
        value = float(params["value"])
        raw = [value] * n_frames
    elif kind == "ramp":
        start, end = float(params["start"]), float(params["end"])
        if n_frames == 1:
            raw = [start]
        else:
            raw = [
                start + (end - start) * i / (n_frames - 1) for i in range(n_frames)
            ]
    elif kind == "sinusoid":
        center = float(params["center"])
        amplitude = float(params["amplitude"])
        period_frames = float(params["period_frames"])
        if period_frames <= 0:
            raise ValueError("sinusoid period must be positive")
        raw = [
            center + amplitude * math.sin(2 * math.pi * i / period_frames)
            for i in range(n_frames)
        ]
    else:
        raise ValueError(f"unknown synthetic kind {kind!r}")
    if any(not math.isfinite(v) for v in raw):
        raise ValueError("synthetic parameters produced non-finite values")
    return [
        DistanceSample(frame_t=i + 1, distance_cm=clamp_distance(v))
        for i, v in enumerate(raw)
    ]


def parse_serial_line(line: str) -> float:
    """Parse one `R <integer-cm>` line into a clamped distance."""
    m = _SERIAL_RE.match(line.strip("\r\n"))
    if m is None:
        raise ProtocolError(f"bad serial line {line!r}")
    return clamp_distance(float(m.group(1)))


class SerialMockSource:
    """Reads `R <cm>` lines from any text stream, one per frame.

    A malformed line logs a protocol error and holds the previous value; the
    stream starts at out-of-range (700) until the first good line.
    """

    def __init__(self, stream: Iterable[str]):
        self._stream = iter(stream)
        self._last = 700.0

    def __iter__(self) -> Iterator[DistanceSample]:
        for frame, line in enumerate(self._stream, start=1):
            try:
                self._last = parse_serial_line(line)
            except ProtocolError as exc:
                logger.warning("frame %d: %s (holding %s cm)", frame, exc, self._last)
            yield DistanceSample(frame_t=frame, distance_cm=self._last)
