import type { ServerFrame, Snapshot, TrajectoryRecord } from "./protocol.js";
import { isSnapshot } from "./protocol.js";

/** Bounded history of trajectory records; oldest entries fall off first. */
export class TrajectoryRing {
  private buf: TrajectoryRecord[] = [];

  constructor(readonly capacity: number) {
    if (!Number.isInteger(capacity) || capacity < 1) {
      throw new Error(`ring capacity must be a positive integer, got ${capacity}`);
    }
  }

  push(record: TrajectoryRecord): void {
    // Catch-up frames can replay the newest record; drop exact repeats.
    const last = this.buf[this.buf.length - 1];
    if (
      last &&
      last.wall_iteration === record.wall_iteration &&
      last.event === record.event &&
      last.w_dist === record.w_dist &&
      last.utility === record.utility
    ) {
      return;
    }
    this.buf.push(record);
    if (this.buf.length > this.capacity) {
      this.buf.splice(0, this.buf.length - this.capacity);
    }
  }

  replaceAll(records: TrajectoryRecord[]): void {
    this.buf = records.slice(-this.capacity);
  }

  toArray(): TrajectoryRecord[] {
    return this.buf.slice();
  }

  get length(): number {
    return this.buf.length;
  }
}

export type ConnectionState = "connecting" | "live" | "dropped";

/**
 * Single source of truth for everything on screen. All numbers inside come
 * verbatim from service frames; the store only shelves them, it never
 * derives an objective or a schedule value itself.
 */
export class UiStore {
  connection: ConnectionState = "connecting";
  latest: Snapshot | null = null;
  /** Weight sent (or about to be sent) but not yet confirmed by a frame. */
  pendingWeight: number | null = null;
  pinned: Snapshot | null = null;
  readonly trajectory: TrajectoryRing;

  private listeners: (() => void)[] = [];

  constructor(trajectoryCapacity = 2000) {
    this.trajectory = new TrajectoryRing(trajectoryCapacity);
  }

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const l of this.listeners) l();
  }

  setConnection(state: ConnectionState): void {
    if (this.connection !== state) {
      this.connection = state;
      this.notify();
    }
  }

  /** Called by the controller the moment the slider commits a new value. */
  markPending(w: number): void {
    this.pendingWeight = w;
    this.notify();
  }

  /** The engine's currently effective weight from the UI's point of view. */
  effectiveWeight(): number | null {
    if (this.pendingWeight !== null) return this.pendingWeight;
    return this.latest ? this.latest.w_dist : null;
  }

  applyFrame(frame: ServerFrame): void {
    if (!isSnapshot(frame)) {
      // Pre-construction frame: nothing to show yet but the channel is up.
      this.notify();
      return;
    }
    this.latest = frame;
    if (frame.point) {
      this.trajectory.push(frame.point);
    }
    // A frame whose weight equals the request acknowledges it. A frame
    // carrying an older weight does not clear a newer pending request.
    if (this.pendingWeight !== null && frame.w_dist === this.pendingWeight) {
      this.pendingWeight = null;
    }
    this.notify();
  }

  seedTrajectory(records: TrajectoryRecord[]): void {
    this.trajectory.replaceAll(records);
    this.notify();
  }

  pin(): void {
    if (this.latest) {
      this.pinned = this.latest;
      this.notify();
    }
  }

  unpin(): void {
    this.pinned = null;
    this.notify();
  }
}
