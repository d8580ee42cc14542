import type { Snapshot } from "./protocol.js";

// Scene building is pure data-to-data so it can be tested without a DOM;
// the SVG writing below is a thin applier.

export interface ScenePoint {
  x: number;
  y: number;
}

export interface ScenePolyline {
  vehicle: number;
  points: ScenePoint[];
}

export interface MapScene {
  width: number;
  height: number;
  polylines: ScenePolyline[];
  depots: (ScenePoint & { id: number })[];
  customers: (ScenePoint & { id: number; unassigned: boolean })[];
}

const PAD = 14;

/**
 * Fit instance coordinates into a width x height viewport, preserving
 * aspect ratio, and project routes, depots and customers into it. Empty
 * routes (polyline is just depot-depot) are omitted. Returns null when the
 * snapshot carries no coordinates at all, so the caller can show a
 * diagnostic placeholder instead of an empty map.
 */
export function buildScene(snap: Snapshot, width = 640, height = 480): MapScene | null {
  const xs: number[] = [];
  const ys: number[] = [];
  for (const c of snap.customers) {
    xs.push(c.x);
    ys.push(c.y);
  }
  for (const d of snap.depots) {
    xs.push(d.x);
    ys.push(d.y);
  }
  if (xs.length === 0) return null;

  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const scale = Math.min((width - 2 * PAD) / spanX, (height - 2 * PAD) / spanY);
  // SVG y grows downward; instance y grows upward.
  const px = (x: number) => PAD + (x - minX) * scale;
  const py = (y: number) => height - PAD - (y - minY) * scale;

  const polylines: ScenePolyline[] = [];
  for (const route of snap.routes) {
    if (route.sequence.length === 0) continue;
    polylines.push({
      vehicle: route.vehicle,
      points: route.polyline.map(([x, y]) => ({ x: px(x), y: py(y) })),
    });
  }

  const open = new Set(snap.unassigned);
  return {
    width,
    height,
    polylines,
    depots: snap.depots.map((d) => ({ id: d.id, x: px(d.x), y: py(d.y) })),
    customers: snap.customers.map((c) => ({
      id: c.id,
      x: px(c.x),
      y: py(c.y),
      unassigned: open.has(c.id),
    })),
  };
}

const ROUTE_COLORS = [
  "#2563eb",
  "#db2777",
  "#059669",
  "#d97706",
  "#7c3aed",
  "#0891b2",
  "#dc2626",
  "#4d7c0f",
];

export function routeColor(index: number): string {
  return ROUTE_COLORS[index % ROUTE_COLORS.length];
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderMap(el: SVGSVGElement, snap: Snapshot | null): void {
  while (el.firstChild) el.removeChild(el.firstChild);
  const scene = snap ? buildScene(snap) : null;
  if (!scene) {
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", "16");
    text.setAttribute("y", "28");
    text.setAttribute("class", "map-placeholder");
    text.textContent = snap
      ? "snapshot carries no coordinates"
      : "waiting for a snapshot";
    el.appendChild(text);
    return;
  }
  el.setAttribute("viewBox", `0 0 ${scene.width} ${scene.height}`);

  scene.polylines.forEach((line, i) => {
    const poly = document.createElementNS(SVG_NS, "polyline");
    poly.setAttribute("points", line.points.map((p) => `${p.x},${p.y}`).join(" "));
    poly.setAttribute("fill", "none");
    poly.setAttribute("stroke", routeColor(i));
    poly.setAttribute("stroke-width", "1.6");
    el.appendChild(poly);
  });
  for (const c of scene.customers) {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(c.x));
    dot.setAttribute("cy", String(c.y));
    dot.setAttribute("r", "3");
    dot.setAttribute("fill", c.unassigned ? "#ef4444" : "#334155");
    dot.appendChild(title(`customer ${c.id}`));
    el.appendChild(dot);
  }
  for (const d of scene.depots) {
    const box = document.createElementNS(SVG_NS, "rect");
    box.setAttribute("x", String(d.x - 5));
    box.setAttribute("y", String(d.y - 5));
    box.setAttribute("width", "10");
    box.setAttribute("height", "10");
    box.setAttribute("fill", "#0f172a");
    box.appendChild(title(`depot ${d.id}`));
    el.appendChild(box);
  }
}

function title(text: string): SVGTitleElement {
  const t = document.createElementNS(SVG_NS, "title");
  t.textContent = text;
  return t;
}
