import type { TrajectoryRecord } from "./protocol.js";

// DIST and TARDY live on very different scales (hundreds vs thousands on
// the benchmark), so each series gets its own y axis.

export interface ChartMarker {
  x: number;
  w_dist: number;
}

export interface ChartModel {
  width: number;
  height: number;
  /** SVG path data; empty string when there are no points. */
  distPath: string;
  tardyPath: string;
  markers: ChartMarker[];
  xDomain: [number, number];
  distDomain: [number, number];
  tardyDomain: [number, number];
}

const PAD = { left: 46, right: 46, top: 10, bottom: 22 };

function pathFor(
  points: TrajectoryRecord[],
  pick: (p: TrajectoryRecord) => number,
  sx: (v: number) => number,
  sy: (v: number) => number,
): string {
  return points
    .map((p, i) => `${i === 0 ? "M" : "L"}${sx(p.wall_iteration).toFixed(1)},${sy(pick(p)).toFixed(1)}`)
    .join("");
}

export function buildChart(
  points: TrajectoryRecord[],
  width = 640,
  height = 220,
): ChartModel {
  const empty: ChartModel = {
    width,
    height,
    distPath: "",
    tardyPath: "",
    markers: [],
    xDomain: [0, 1],
    distDomain: [0, 1],
    tardyDomain: [0, 1],
  };
  if (points.length === 0) return empty;

  const xs = points.map((p) => p.wall_iteration);
  const x0 = Math.min(...xs);
  const x1 = Math.max(...xs);
  const dist = points.map((p) => p.dist);
  const tardy = points.map((p) => p.tardy);
  const d0 = Math.min(...dist);
  const d1 = Math.max(...dist);
  const t0 = Math.min(...tardy);
  const t1 = Math.max(...tardy);

  const innerW = width - PAD.left - PAD.right;
  const innerH = height - PAD.top - PAD.bottom;
  const sx = (v: number) => PAD.left + ((v - x0) / (x1 - x0 || 1)) * innerW;
  const syDist = (v: number) => PAD.top + (1 - (v - d0) / (d1 - d0 || 1)) * innerH;
  const syTardy = (v: number) => PAD.top + (1 - (v - t0) / (t1 - t0 || 1)) * innerH;

  return {
    width,
    height,
    distPath: pathFor(points, (p) => p.dist, sx, syDist),
    tardyPath: pathFor(points, (p) => p.tardy, sx, syTardy),
    markers: points
      .filter((p) => p.event === "WeightChanged")
      .map((p) => ({ x: sx(p.wall_iteration), w_dist: p.w_dist })),
    xDomain: [x0, x1],
    distDomain: [d0, d1],
    tardyDomain: [t0, t1],
  };
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderChart(el: SVGSVGElement, points: TrajectoryRecord[]): void {
  const model = buildChart(points);
  while (el.firstChild) el.removeChild(el.firstChild);
  el.setAttribute("viewBox", `0 0 ${model.width} ${model.height}`);

  for (const m of model.markers) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(m.x));
    line.setAttribute("x2", String(m.x));
    line.setAttribute("y1", String(PAD.top));
    line.setAttribute("y2", String(model.height - PAD.bottom));
    line.setAttribute("stroke", "#94a3b8");
    line.setAttribute("stroke-dasharray", "3 3");
    const t = document.createElementNS(SVG_NS, "title");
    t.textContent = `w_dist set to ${m.w_dist}`;
    line.appendChild(t);
    el.appendChild(line);
  }
  if (model.distPath) {
    el.appendChild(seriesPath(model.distPath, "#2563eb"));
    el.appendChild(seriesPath(model.tardyPath, "#dc2626"));
  }
  el.appendChild(axisLabel(String(model.distDomain[1]), 4, 14, "#2563eb"));
  el.appendChild(axisLabel(String(model.distDomain[0]), 4, model.height - 26, "#2563eb"));
  el.appendChild(axisLabel(String(model.tardyDomain[1]), model.width - 42, 14, "#dc2626"));
  el.appendChild(
    axisLabel(String(model.tardyDomain[0]), model.width - 42, model.height - 26, "#dc2626"),
  );
}

function seriesPath(d: string, stroke: string): SVGPathElement {
  const path = document.createElementNS(SVG_NS, "path");
  path.setAttribute("d", d);
  path.setAttribute("fill", "none");
  path.setAttribute("stroke", stroke);
  path.setAttribute("stroke-width", "1.4");
  return path;
}

function axisLabel(text: string, x: number, y: number, fill: string): SVGTextElement {
  const label = document.createElementNS(SVG_NS, "text");
  label.setAttribute("x", String(x));
  label.setAttribute("y", String(y));
  label.setAttribute("fill", fill);
  label.setAttribute("font-size", "10");
  label.textContent = text;
  return label;
}
