// Pure render model for the rolling accumulator chart: given the tick window
// and the engine-reported profile, produce the series, threshold lines,
// endurance shading, and avoidance markers that the canvas layer draws.
// Nothing here recomputes model values.

import { StateMessage, TickMessage } from "./protocol.js";

export interface TimelinePoint {
  frame: number;
  s: number;
  phase: string;
}

export interface AvoidanceMarker {
  frame: number;
  pattern: string;
  intensity: number;
}

export interface TimelineModel {
  points: TimelinePoint[];
  avoidanceMarkers: AvoidanceMarker[];
  eTh: number | null;
  eMax: number | null;
  yMax: number;
  frameMin: number;
  frameMax: number;
}

export function buildTimeline(
  window: TickMessage[],
  profile: StateMessage | null,
): TimelineModel {
  const points = window.map((t) => ({ frame: t.frame, s: t.s, phase: t.phase }));
  const avoidanceMarkers = window
    .filter((t) => t.avoid !== null)
    .map((t) => ({
      frame: t.frame,
      pattern: t.avoid!.pattern,
      intensity: t.avoid!.intensity,
    }));
  const eTh = profile ? profile.e_th : null;
  const eMax = profile ? profile.e_max : null;
  const sTop = Math.max(0, ...points.map((p) => p.s));
  const yMax = Math.max(sTop, eMax ?? 0, eTh ?? 0) * 1.1 || 1;
  return {
    points,
    avoidanceMarkers,
    eTh,
    eMax,
    yMax,
    frameMin: points.length ? points[0].frame : 0,
    frameMax: points.length ? points[points.length - 1].frame : 0,
  };
}

// Hall zone bands for the 1-D distance track background.
export interface ZoneBand {
  name: string;
  nearCm: number;
  farCm: number;
}

export const HALL_ZONES: ZoneBand[] = [
  { name: "intimate", nearCm: 0, farCm: 45 },
  { name: "personal", nearCm: 45, farCm: 120 },
  { name: "social", nearCm: 120, farCm: 360 },
  { name: "public", nearCm: 360, farCm: 700 },
];

export function zoneAt(distanceCm: number): string {
  for (const z of HALL_ZONES) {
    if (distanceCm >= z.nearCm && distanceCm < z.farCm) return z.name;
  }
  return "public";
}
