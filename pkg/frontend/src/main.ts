// Browser wiring: slider + selectors on the left, rolling accumulator chart
// and schematic arm on the right. All numbers rendered come from engine ticks.

import { DistanceSlider, reset, setDominance, setRelationship } from "./controls.js";
import { SessionView } from "./session.js";
import { HALL_ZONES, buildTimeline, zoneAt } from "./timeline.js";
import { WebSocketTransport } from "./transport.js";

const ZONE_COLORS: Record<string, string> = {
  intimate: "#fde0dd",
  personal: "#fff3cd",
  social: "#e2f0d9",
  public: "#e7eef8",
};

function drawTrack(canvas: HTMLCanvasElement, distanceCm: number): void {
  const ctx = canvas.getContext("2d")!;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  for (const zone of HALL_ZONES) {
    const x0 = (zone.nearCm / 700) * width;
    const x1 = (zone.farCm / 700) * width;
    ctx.fillStyle = ZONE_COLORS[zone.name];
    ctx.fillRect(x0, 0, x1 - x0, height);
    ctx.fillStyle = "#666";
    ctx.font = "10px sans-serif";
    ctx.fillText(zone.name, x0 + 4, 12);
  }
  const x = (Math.min(distanceCm, 700) / 700) * width;
  ctx.fillStyle = "#d62728";
  ctx.beginPath();
  ctx.arc(x, height / 2, 7, 0, 2 * Math.PI);
  ctx.fill();
}

function drawChart(canvas: HTMLCanvasElement, session: SessionView): void {
  const ctx = canvas.getContext("2d")!;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const model = buildTimeline(session.window, session.profile);
  if (model.points.length === 0) return;

  const span = Math.max(1, session.windowSize - 1);
  const xOf = (frame: number) =>
    width - ((model.frameMax - frame) / span) * width; // newest at the right
  const yOf = (s: number) => height - (s / model.yMax) * (height - 10) - 5;

  // Endurance region shading below e_th.
  if (model.eTh !== null) {
    ctx.fillStyle = "rgba(46, 139, 87, 0.08)";
    ctx.fillRect(0, yOf(model.eTh), width, height - yOf(model.eTh));
  }
  for (const [level, color] of [
    [model.eTh, "#2e8b57"],
    [model.eMax, "#b22222"],
  ] as const) {
    if (level === null) continue;
    ctx.strokeStyle = color;
    ctx.setLineDash([6, 4]);
    ctx.beginPath();
    ctx.moveTo(0, yOf(level));
    ctx.lineTo(width, yOf(level));
    ctx.stroke();
    ctx.setLineDash([]);
  }

  ctx.strokeStyle = "#1f77b4";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  model.points.forEach((p, i) => {
    const x = xOf(p.frame);
    const y = yOf(p.s);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();

  ctx.fillStyle = "#d62728";
  for (const marker of model.avoidanceMarkers) {
    const x = xOf(marker.frame);
    ctx.beginPath();
    ctx.moveTo(x, 4);
    ctx.lineTo(x - 5, 14);
    ctx.lineTo(x + 5, 14);
    ctx.closePath();
    ctx.fill();
  }
}

function main(): void {
  const params = new URLSearchParams(location.search);
  const url = params.get("ws") ?? `ws://${location.hostname}:9764/`;
  const transport = new WebSocketTransport(url);
  const session = new SessionView(transport);
  const slider = new DistanceSlider(session);

  const sliderEl = document.getElementById("distance") as HTMLInputElement;
  const relationshipEl = document.getElementById("relationship") as HTMLSelectElement;
  const dominanceEl = document.getElementById("dominance") as HTMLSelectElement;
  const resetEl = document.getElementById("reset") as HTMLButtonElement;
  const trackEl = document.getElementById("track") as HTMLCanvasElement;
  const chartEl = document.getElementById("chart") as HTMLCanvasElement;
  const statusEl = document.getElementById("status")!;
  const readoutEl = document.getElementById("readout")!;
  const banner = document.getElementById("banner")!;

  sliderEl.addEventListener("input", () => {
    const cm = Number(sliderEl.value);
    slider.drag(cm);
    drawTrack(trackEl, cm);
  });
  relationshipEl.addEventListener("change", () =>
    setRelationship(session, relationshipEl.value),
  );
  dominanceEl.addEventListener("change", () =>
    setDominance(session, dominanceEl.value as "Low" | "Medium" | "High"),
  );
  resetEl.addEventListener("click", () => reset(session));

  session.onMessage((msg) => {
    banner.style.display = session.connected ? "none" : "block";
    if (msg.type === "tick") {
      drawChart(chartEl, session);
      readoutEl.textContent =
        `frame ${msg.frame}  d=${msg.d} cm (${zoneAt(msg.d)})  ` +
        `n=${msg.n.toFixed(3)}  s=${msg.s.toFixed(3)}  phase=${msg.phase}` +
        (msg.avoid ? `  AVOID ${msg.avoid.pattern} @${msg.avoid.intensity.toFixed(2)}` : "");
    } else if (msg.type === "state") {
      statusEl.textContent =
        `${msg.relationship} / ${msg.dominance}  e_th=${msg.e_th}  e_max=${msg.e_max}`;
      relationshipEl.value = msg.relationship;
      dominanceEl.value = msg.dominance;
    } else if (msg.type === "error") {
      statusEl.textContent = `error: ${msg.message}`;
    }
  });

  drawTrack(trackEl, Number(sliderEl.value));
}

if (typeof document !== "undefined") {
  window.addEventListener("load", main);
}
