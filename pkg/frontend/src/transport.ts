// Transports carrying newline-delimited JSON to the engine. The browser page
// uses a WebSocket bridge; headless tests connect straight to the engine's
// TCP socket via Node. Both share the line-splitting logic.

import { Transport } from "./session.js";

export class LineSplitter {
  private buffer = "";

  constructor(private emit: (line: string) => void) {}

  push(chunk: string): void {
    this.buffer += chunk;
    let idx: number;
    while ((idx = this.buffer.indexOf("\n")) >= 0) {
      const line = this.buffer.slice(0, idx);
      this.buffer = this.buffer.slice(idx + 1);
      if (line.trim().length > 0) this.emit(line);
    }
  }
}

export class WebSocketTransport implements Transport {
  private ws: WebSocket;
  private lineHandlers: Array<(line: string) => void> = [];
  private statusHandlers: Array<(connected: boolean) => void> = [];
  private splitter = new LineSplitter((line) =>
    this.lineHandlers.forEach((h) => h(line)),
  );

  constructor(url: string) {
    this.ws = new WebSocket(url);
    this.ws.onopen = () => this.statusHandlers.forEach((h) => h(true));
    this.ws.onclose = () => this.statusHandlers.forEach((h) => h(false));
    this.ws.onmessage = (ev) => this.splitter.push(String(ev.data) + "\n");
  }

  send(line: string): void {
    this.ws.send(line);
  }

  onLine(handler: (line: string) => void): void {
    this.lineHandlers.push(handler);
  }

  onStatus(handler: (connected: boolean) => void): void {
    this.statusHandlers.push(handler);
  }

  close(): void {
    this.ws.close();
  }
}

// Node-only; imported dynamically so browser bundles never touch "net".
export async function connectTcp(host: string, port: number): Promise<Transport> {
  const net = await import("net");
  const lineHandlers: Array<(line: string) => void> = [];
  const statusHandlers: Array<(connected: boolean) => void> = [];
  const splitter = new LineSplitter((line) => lineHandlers.forEach((h) => h(line)));

  const socket: import("net").Socket = await new Promise((resolve, reject) => {
    const s = net.createConnection({ host, port }, () => resolve(s));
    s.once("error", reject);
  });
  socket.setEncoding("utf-8");
  socket.on("data", (chunk: string) => splitter.push(chunk));
  socket.on("close", () => statusHandlers.forEach((h) => h(false)));

  return {
    send: (line: string) => void socket.write(line),
    onLine: (h) => void lineHandlers.push(h),
    onStatus: (h) => {
      statusHandlers.push(h);
      h(true); // already connected
    },
    close: () => socket.destroy(),
  };
}
