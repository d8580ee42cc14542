import type { RouteView, Snapshot, TrajectoryRecord } from "../src/protocol.js";

export function makeRoute(over: Partial<RouteView> = {}): RouteView {
  return {
    vehicle: 1,
    depot: 9,
    sequence: [1, 2],
    distance: 40,
    tardiness: 0,
    duration: 40,
    load: 5,
    polyline: [
      [0, 0],
      [10, 0],
      [10, 10],
      [0, 0],
    ],
    ...over,
  };
}

export function makeSnap(over: Partial<Snapshot> = {}): Snapshot {
  return {
    status: "paused",
    wall_iteration: 0,
    w_dist: 0.5,
    weight_version: 0,
    solution_version: 0,
    objectives: { dist: 40, tardy: 0 },
    utility: 20,
    routes: [makeRoute()],
    unassigned: [],
    customers: [
      { id: 1, x: 10, y: 0, demand: 3, tw_open: 0, tw_close: 100 },
      { id: 2, x: 10, y: 10, demand: 2, tw_open: 0, tw_close: 100 },
    ],
    depots: [{ id: 9, x: 0, y: 0 }],
    best_per_weight: [],
    ...over,
  };
}

export function makePoint(over: Partial<TrajectoryRecord> = {}): TrajectoryRecord {
  return {
    wall_iteration: 0,
    w_dist: 0.5,
    dist: 40,
    tardy: 0,
    utility: 20,
    event: "Improved",
    ...over,
  };
}
