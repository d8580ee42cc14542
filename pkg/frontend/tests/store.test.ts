import { describe, expect, it } from "vitest";
import { TrajectoryRing, UiStore } from "../src/store.js";
import { makePoint, makeSnap } from "./helpers.js";

describe("TrajectoryRing", () => {
  it("rejects a non-positive capacity", () => {
    expect(() => new TrajectoryRing(0)).toThrow();
    expect(() => new TrajectoryRing(2.5)).toThrow();
  });

  it("never grows past its capacity and evicts oldest first", () => {
    const ring = new TrajectoryRing(3);
    for (let i = 1; i <= 5; i++) {
      ring.push(makePoint({ wall_iteration: i * 100, utility: i }));
    }
    expect(ring.length).toBe(3);
    expect(ring.toArray().map((p) => p.utility)).toEqual([3, 4, 5]);
  });

  it("drops an exact repeat of the newest record", () => {
    const ring = new TrajectoryRing(10);
    const p = makePoint({ wall_iteration: 400 });
    ring.push(p);
    ring.push({ ...p });
    expect(ring.length).toBe(1);
    // same iteration but a different event is a real second record
    ring.push(makePoint({ wall_iteration: 400, event: "WeightChanged" }));
    expect(ring.length).toBe(2);
  });

  it("replaceAll keeps only the newest capacity records", () => {
    const ring = new TrajectoryRing(2);
    ring.replaceAll([1, 2, 3, 4].map((i) => makePoint({ utility: i })));
    expect(ring.toArray().map((p) => p.utility)).toEqual([3, 4]);
  });
});

describe("UiStore", () => {
  it("applies snapshot frames and files their trajectory points", () => {
    const store = new UiStore(10);
    store.applyFrame(makeSnap({ point: makePoint({ wall_iteration: 120 }) }));
    expect(store.latest?.wall_iteration).toBe(0);
    expect(store.trajectory.length).toBe(1);
    // a catch-up frame without a point leaves the ring alone
    store.applyFrame(makeSnap({ wall_iteration: 120 }));
    expect(store.trajectory.length).toBe(1);
  });

  it("keeps the last snapshot through an initializing frame", () => {
    const store = new UiStore(10);
    store.applyFrame(makeSnap());
    store.applyFrame({ status: "initializing" });
    expect(store.latest).not.toBeNull();
  });

  it("clears pending weight only on the acknowledging frame", () => {
    const store = new UiStore(10);
    store.applyFrame(makeSnap({ w_dist: 0.5 }));
    store.markPending(0.3);
    // stale frame still carrying the old weight must not clear it
    store.applyFrame(makeSnap({ w_dist: 0.5 }));
    expect(store.pendingWeight).toBe(0.3);
    store.applyFrame(makeSnap({ w_dist: 0.3 }));
    expect(store.pendingWeight).toBeNull();
    expect(store.latest?.w_dist).toBe(0.3);
  });

  it("effectiveWeight prefers the pending value over the acknowledged one", () => {
    const store = new UiStore(10);
    expect(store.effectiveWeight()).toBeNull();
    store.applyFrame(makeSnap({ w_dist: 0.5 }));
    expect(store.effectiveWeight()).toBe(0.5);
    store.markPending(0.9);
    expect(store.effectiveWeight()).toBe(0.9);
  });

  it("pins the current snapshot and survives later frames", () => {
    const store = new UiStore(10);
    store.applyFrame(makeSnap({ solution_version: 1 }));
    store.pin();
    store.applyFrame(makeSnap({ solution_version: 7 }));
    expect(store.pinned?.solution_version).toBe(1);
    expect(store.latest?.solution_version).toBe(7);
    store.unpin();
    expect(store.pinned).toBeNull();
  });

  it("notifies subscribers on every applied frame", () => {
    const store = new UiStore(10);
    let called = 0;
    const off = store.subscribe(() => called++);
    store.applyFrame(makeSnap());
    store.setConnection("live");
    off();
    store.applyFrame(makeSnap());
    expect(called).toBe(2);
  });
});
