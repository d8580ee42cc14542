import { describe, expect, it } from "vitest";
import { buildScene } from "../src/map.js";
import { makeRoute, makeSnap } from "./helpers.js";

describe("buildScene", () => {
  it("draws no polylines when every route is empty", () => {
    const snap = makeSnap({
      routes: [
        makeRoute({ sequence: [], polyline: [[0, 0], [0, 0]] }),
        makeRoute({ vehicle: 2, sequence: [], polyline: [[0, 0], [0, 0]] }),
      ],
    });
    const scene = buildScene(snap);
    expect(scene).not.toBeNull();
    expect(scene!.polylines).toEqual([]);
    expect(scene!.depots.length).toBe(1);
    expect(scene!.customers.length).toBe(2);
  });

  it("draws one closed polyline for a depot-c1-c2-depot route", () => {
    const scene = buildScene(makeSnap())!;
    expect(scene.polylines.length).toBe(1);
    const pts = scene.polylines[0].points;
    expect(pts.length).toBe(4);
    expect(pts[0]).toEqual(pts[pts.length - 1]);
  });

  it("draws exactly one polyline per non-empty route", () => {
    // shaped like a pr01 snapshot: 8 vehicles, some of them idle
    const routes = Array.from({ length: 8 }, (_, i) =>
      i % 4 === 3
        ? makeRoute({ vehicle: i + 1, sequence: [], polyline: [[0, 0], [0, 0]] })
        : makeRoute({ vehicle: i + 1 }),
    );
    const snap = makeSnap({ routes });
    const nonEmpty = snap.routes.filter((r) => r.sequence.length > 0).length;
    expect(buildScene(snap)!.polylines.length).toBe(nonEmpty);
    expect(nonEmpty).toBeLessThanOrEqual(8);
  });

  it("returns null when the snapshot has no coordinates", () => {
    expect(buildScene(makeSnap({ customers: [], depots: [], routes: [] }))).toBeNull();
  });

  it("flags unassigned customers", () => {
    const scene = buildScene(makeSnap({ unassigned: [2] }))!;
    const byId = new Map(scene.customers.map((c) => [c.id, c]));
    expect(byId.get(2)!.unassigned).toBe(true);
    expect(byId.get(1)!.unassigned).toBe(false);
  });

  it("keeps every projected point inside the viewport", () => {
    const snap = makeSnap({
      customers: [
        { id: 1, x: -35, y: 80, demand: 1, tw_open: 0, tw_close: 1 },
        { id: 2, x: 120, y: -40, demand: 1, tw_open: 0, tw_close: 1 },
      ],
      routes: [],
    });
    const scene = buildScene(snap, 640, 480)!;
    for (const p of [...scene.customers, ...scene.depots]) {
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThanOrEqual(640);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeLessThanOrEqual(480);
    }
  });
});
