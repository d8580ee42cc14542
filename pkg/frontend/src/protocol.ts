// Wire types for the steering service. These mirror the JSON the service
// sends; the UI treats every number as read-only and never recomputes one.

export interface RouteView {
  vehicle: number;
  depot: number;
  sequence: number[];
  distance: number;
  tardiness: number;
  duration: number;
  load: number;
  /** Depot, visits in order, depot again. Two points means an empty route. */
  polyline: [number, number][];
}

export interface CustomerView {
  id: number;
  x: number;
  y: number;
  demand: number;
  tw_open: number;
  tw_close: number;
}

export interface DepotView {
  id: number;
  x: number;
  y: number;
}

export interface TrajectoryRecord {
  wall_iteration: number;
  w_dist: number;
  dist: number;
  tardy: number;
  utility: number;
  event: string;
}

export interface BestPerWeight {
  w_dist: number;
  dist: number;
  tardy: number;
  utility: number;
}

export interface Snapshot {
  status: string;
  wall_iteration: number;
  w_dist: number;
  weight_version: number;
  solution_version: number;
  objectives: { dist: number; tardy: number };
  utility: number;
  routes: RouteView[];
  unassigned: number[];
  customers: CustomerView[];
  depots: DepotView[];
  best_per_weight: BestPerWeight[];
  seed?: number;
  /** Present on pushed frames: the trajectory record that caused the push. */
  point?: TrajectoryRecord;
}

/** The push channel also emits a bare status before the engine has state. */
export type ServerFrame = Snapshot | { status: string };

export function isSnapshot(frame: ServerFrame): frame is Snapshot {
  return "routes" in frame && "objectives" in frame;
}
