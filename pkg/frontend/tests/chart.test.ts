import { describe, expect, it } from "vitest";
import { buildChart } from "../src/chart.js";
import { makePoint } from "./helpers.js";

describe("buildChart", () => {
  it("gives empty paths and no markers for an empty buffer", () => {
    const model = buildChart([]);
    expect(model.distPath).toBe("");
    expect(model.tardyPath).toBe("");
    expect(model.markers).toEqual([]);
  });

  it("marks a weight change once", () => {
    const points = [
      makePoint({ wall_iteration: 0, event: "Improved" }),
      makePoint({ wall_iteration: 100, event: "WeightChanged", w_dist: 0.3 }),
      makePoint({ wall_iteration: 200, event: "Improved" }),
    ];
    const model = buildChart(points);
    expect(model.markers.length).toBe(1);
    expect(model.markers[0].w_dist).toBe(0.3);
  });

  it("maps wall_iteration monotonically onto x", () => {
    const points = [0, 50, 400].map((w) => makePoint({ wall_iteration: w }));
    const model = buildChart(points, 640, 220);
    const xs = model.distPath
      .split(/[ML]/)
      .filter(Boolean)
      .map((seg) => Number(seg.split(",")[0]));
    expect(xs.length).toBe(3);
    expect(xs[0]).toBeLessThan(xs[1]);
    expect(xs[1]).toBeLessThan(xs[2]);
    expect(model.xDomain).toEqual([0, 400]);
  });

  it("scales the two series independently", () => {
    // dist in the hundreds, tardy in single digits: on a shared axis the
    // tardy line would be flat; on its own axis it spans the full height
    const points = [
      makePoint({ wall_iteration: 0, dist: 900, tardy: 4 }),
      makePoint({ wall_iteration: 100, dist: 400, tardy: 0 }),
    ];
    const model = buildChart(points, 640, 220);
    const lastY = (path: string) =>
      Number(path.split("L").pop()!.split(",")[1]);
    const firstY = (path: string) =>
      Number(path.slice(1).split("L")[0].split(",")[1]);
    // both series start at their own maximum (top) and end at their own
    // minimum (bottom), so the vertical extents match despite the scales
    expect(firstY(model.distPath)).toBeCloseTo(firstY(model.tardyPath), 6);
    expect(lastY(model.distPath)).toBeCloseTo(lastY(model.tardyPath), 6);
    expect(model.distDomain).toEqual([400, 900]);
    expect(model.tardyDomain).toEqual([0, 4]);
  });

  it("survives a single point without dividing by zero", () => {
    const model = buildChart([makePoint({ wall_iteration: 42 })]);
    expect(model.distPath.startsWith("M")).toBe(true);
    expect(model.distPath).not.toContain("NaN");
  });
});
