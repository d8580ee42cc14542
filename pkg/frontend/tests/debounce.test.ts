import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { windowedEmitter } from "../src/debounce.js";

describe("windowedEmitter", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  it("emits nothing before the first window closes", () => {
    const got: number[] = [];
    const em = windowedEmitter<number>((v) => got.push(v), 150);
    em.push(1);
    vi.advanceTimersByTime(149);
    expect(got).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(got).toEqual([1]);
  });

  it("coalesces pushes inside a window to the latest value", () => {
    const got: number[] = [];
    const em = windowedEmitter<number>((v) => got.push(v), 150);
    em.push(1);
    vi.advanceTimersByTime(50);
    em.push(2);
    vi.advanceTimersByTime(50);
    em.push(3);
    vi.advanceTimersByTime(50);
    expect(got).toEqual([3]);
  });

  it("keeps emitting during a long drag instead of waiting for it to end", () => {
    // A plain trailing debounce would stay silent for this whole loop.
    const got: number[] = [];
    const em = windowedEmitter<number>((v) => got.push(v), 150);
    for (let t = 0; t < 900; t += 10) {
      em.push(t);
      vi.advanceTimersByTime(10);
    }
    expect(got.length).toBeGreaterThanOrEqual(4);
    // emissions are spaced at least one window apart: never more than
    // ceil(duration / window) of them
    expect(got.length).toBeLessThanOrEqual(Math.ceil(890 / 150) + 1);
  });

  it("flush fires the held value immediately", () => {
    const got: number[] = [];
    const em = windowedEmitter<number>((v) => got.push(v), 150);
    em.push(7);
    em.flush();
    expect(got).toEqual([7]);
    expect(em.pending).toBe(false);
    // flush with nothing held is a no-op
    em.flush();
    expect(got).toEqual([7]);
  });

  it("cancel drops the held value", () => {
    const got: number[] = [];
    const em = windowedEmitter<number>((v) => got.push(v), 150);
    em.push(7);
    em.cancel();
    vi.advanceTimersByTime(1000);
    expect(got).toEqual([]);
    expect(em.pending).toBe(false);
  });
});
