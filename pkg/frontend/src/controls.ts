// Control helpers: the distance slider fires at most one set_distance per
// engine frame period, trailing value included so the engine always converges
// on the slider's final position.

import { SessionView } from "./session.js";

export const TICK_PERIOD_MS = 100;

export class DistanceSlider {
  private lastSent = -Infinity;
  private pending: number | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private session: SessionView,
    private now: () => number = () => Date.now(),
    private schedule: (fn: () => void, ms: number) => ReturnType<typeof setTimeout> = setTimeout,
  ) {}

  drag(cm: number): void {
    const elapsed = this.now() - this.lastSent;
    if (elapsed >= TICK_PERIOD_MS) {
      this.sendNow(cm);
    } else {
      this.pending = cm;
      if (this.timer === null) {
        this.timer = this.schedule(() => {
          this.timer = null;
          if (this.pending !== null) {
            const value = this.pending;
            this.pending = null;
            this.sendNow(value);
          }
        }, TICK_PERIOD_MS - elapsed);
      }
    }
  }

  private sendNow(cm: number): void {
    this.lastSent = this.now();
    this.session.send({ type: "set_distance", cm });
  }
}

export function setRelationship(session: SessionView, relationship: string): void {
  session.send({ type: "set_profile", relationship });
}

export function setDominance(
  session: SessionView,
  level: "Low" | "Medium" | "High",
): void {
  session.send({ type: "set_dominance", level });
}

export function reset(session: SessionView): void {
  session.send({ type: "reset" });
}
