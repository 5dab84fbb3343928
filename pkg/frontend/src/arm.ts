// Schematic 2-D linkage replay: project the first three joint angles of a
// trajectory keyframe onto a planar 3-link arm for the canvas sketch. This is
// presentation only; joint values come from pattern playback, not the model.

export interface PlanarPose {
  // Joint positions from the base, in unit link lengths.
  points: Array<{ x: number; y: number }>;
}

export interface KeyframeLike {
  angles: number[];
  t_ms: number;
}

const LINK_LENGTHS = [1.0, 0.8, 0.6];

export function poseFromAngles(angles: number[]): PlanarPose {
  const points = [{ x: 0, y: 0 }];
  let heading = Math.PI / 2; // pointing up from the base
  let x = 0;
  let y = 0;
  for (let i = 0; i < LINK_LENGTHS.length; i++) {
    heading += ((angles[i + 1] ?? 0) * Math.PI) / 180;
    x += LINK_LENGTHS[i] * Math.cos(heading);
    y += LINK_LENGTHS[i] * Math.sin(heading);
    points.push({ x, y });
  }
  return { points };
}

// Linear interpolation between keyframes at time t_ms.
export function sampleKeyframes(keyframes: KeyframeLike[], tMs: number): number[] {
  if (keyframes.length === 0) throw new Error("no keyframes");
  if (tMs <= keyframes[0].t_ms) return [...keyframes[0].angles];
  const last = keyframes[keyframes.length - 1];
  if (tMs >= last.t_ms) return [...last.angles];
  for (let i = 1; i < keyframes.length; i++) {
    const a = keyframes[i - 1];
    const b = keyframes[i];
    if (tMs <= b.t_ms) {
      const u = (tMs - a.t_ms) / (b.t_ms - a.t_ms);
      return a.angles.map((av, j) => av + u * (b.angles[j] - av));
    }
  }
  return [...last.angles];
}
