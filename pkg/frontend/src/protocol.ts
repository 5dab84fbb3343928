// Wire protocol shared with the engine: newline-delimited JSON objects.
// The UI serializes controls exactly as the engine expects and never
// recomputes model values locally — every displayed number comes off a tick.

export interface AvoidanceInfo {
  pattern: string;
  intensity: number;
}

export interface TickMessage {
  type: "tick";
  frame: number;
  d_raw: number;
  d: number;
  n: number;
  s: number;
  phase: "Idle" | "Enduring" | "Avoiding";
  e_int: number;
  avoid: AvoidanceInfo | null;
}

export interface StateMessage {
  type: "state";
  relationship: string;
  dominance: string;
  e_th: number;
  e_max: number;
  c: number;
  activation_radius_cm: number;
}

export interface AckMessage {
  type: "ack";
  command: string;
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export type ServerMessage = TickMessage | StateMessage | AckMessage | ErrorMessage;

export type ControlMessage =
  | { type: "set_distance"; cm: number }
  | { type: "set_profile"; relationship: string }
  | { type: "set_dominance"; level: "Low" | "Medium" | "High" }
  | { type: "reset" };

const RELATIONSHIPS = ["stranger", "acquaintance", "friend", "partner"];
const DOMINANCE_LEVELS = ["Low", "Medium", "High"];
const PHASES = ["Idle", "Enduring", "Avoiding"];

function isNumber(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

export function isTickMessage(msg: unknown): msg is TickMessage {
  const m = msg as Record<string, unknown>;
  return (
    !!m &&
    m.type === "tick" &&
    isNumber(m.frame) &&
    isNumber(m.d_raw) &&
    isNumber(m.d) &&
    isNumber(m.n) &&
    isNumber(m.s) &&
    PHASES.includes(m.phase as string) &&
    isNumber(m.e_int) &&
    (m.avoid === null ||
      (!!m.avoid &&
        typeof (m.avoid as AvoidanceInfo).pattern === "string" &&
        isNumber((m.avoid as AvoidanceInfo).intensity)))
  );
}

export function isStateMessage(msg: unknown): msg is StateMessage {
  const m = msg as Record<string, unknown>;
  return (
    !!m &&
    m.type === "state" &&
    typeof m.relationship === "string" &&
    typeof m.dominance === "string" &&
    isNumber(m.e_th) &&
    isNumber(m.e_max)
  );
}

export function parseServerMessage(line: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    return null;
  }
  const m = obj as Record<string, unknown>;
  if (!m || typeof m.type !== "string") return null;
  if (m.type === "tick") return isTickMessage(m) ? (m as unknown as TickMessage) : null;
  if (m.type === "state") return isStateMessage(m) ? (m as unknown as StateMessage) : null;
  if (m.type === "ack" && typeof m.command === "string") return m as unknown as AckMessage;
  if (m.type === "error" && typeof m.message === "string") return m as unknown as ErrorMessage;
  return null;
}

// Throws rather than sending anything the engine would reject.
export function validateControl(msg: ControlMessage): ControlMessage {
  switch (msg.type) {
    case "set_distance":
      if (!isNumber(msg.cm)) throw new Error("set_distance needs a finite cm");
      return msg;
    case "set_profile":
      if (!RELATIONSHIPS.includes(msg.relationship))
        throw new Error(`unknown relationship ${msg.relationship}`);
      return msg;
    case "set_dominance":
      if (!DOMINANCE_LEVELS.includes(msg.level))
        throw new Error(`unknown dominance level ${msg.level}`);
      return msg;
    case "reset":
      return msg;
    default:
      throw new Error("unknown control type");
  }
}

export function serializeControl(msg: ControlMessage): string {
  return JSON.stringify(validateControl(msg)) + "\n";
}
