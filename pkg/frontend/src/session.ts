// Client-side session state: connection, the active profile as reported by
// the engine, and a rolling window of recent ticks for plotting.

import {
  ControlMessage,
  ServerMessage,
  StateMessage,
  TickMessage,
  parseServerMessage,
  serializeControl,
} from "./protocol.js";

export interface Transport {
  send(line: string): void;
  onLine(handler: (line: string) => void): void;
  onStatus(handler: (connected: boolean) => void): void;
  close(): void;
}

export const DEFAULT_WINDOW_SIZE = 300;

export class SessionView {
  connected = false;
  latest: TickMessage | null = null;
  profile: StateMessage | null = null;
  window: TickMessage[] = [];
  lastError: string | null = null;
  // Controls are "pending" until the engine acks them.
  private pendingAcks: string[] = [];
  acknowledged: Record<string, ControlMessage> = {};
  private sendQueue: string[] = [];
  private listeners: Array<(msg: ServerMessage) => void> = [];

  constructor(
    private transport: Transport,
    readonly windowSize: number = DEFAULT_WINDOW_SIZE,
  ) {
    transport.onLine((line) => this.handleLine(line));
    transport.onStatus((connected) => {
      this.connected = connected;
      if (connected) this.flushQueue();
    });
  }

  onMessage(listener: (msg: ServerMessage) => void): void {
    this.listeners.push(listener);
  }

  send(msg: ControlMessage): void {
    const line = serializeControl(msg); // throws before anything hits the wire
    this.pendingAcks.push(msg.type);
    this.acknowledged[msg.type] = msg; // optimistic; confirmed by the ack
    if (this.connected) {
      this.transport.send(line);
    } else {
      this.sendQueue.push(line); // queued-until-reconnect
    }
  }

  get queuedCount(): number {
    return this.sendQueue.length;
  }

  private flushQueue(): void {
    for (const line of this.sendQueue) this.transport.send(line);
    this.sendQueue = [];
  }

  private handleLine(line: string): void {
    const msg = parseServerMessage(line);
    if (msg === null) return;
    switch (msg.type) {
      case "tick":
        this.latest = msg;
        this.window.push(msg);
        if (this.window.length > this.windowSize) {
          this.window.splice(0, this.window.length - this.windowSize);
        }
        break;
      case "state":
        this.profile = msg;
        break;
      case "ack":
        this.pendingAcks = this.pendingAcks.filter((t) => t !== msg.command);
        break;
      case "error":
        this.lastError = msg.message;
        break;
    }
    for (const l of this.listeners) l(msg);
  }
}

// Frames in the window must be ordered; the engine guarantees it per
// connection, and a reset does not renumber frames.
export function windowIsOrdered(window: TickMessage[]): boolean {
  return window.every((t, i) => i === 0 || t.frame > window[i - 1].frame);
}
