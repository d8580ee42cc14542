import type { ApiClient } from "./client.js";
import { windowedEmitter, type WindowedEmitter } from "./debounce.js";
import type { UiStore } from "./store.js";

/**
 * Binds user intent to API verbs. Each action is exactly one verb; the
 * slider is rate limited so a drag becomes a sparse stream of set-weight
 * requests carrying the latest handle position.
 */
export class SteeringController {
  private emitter: WindowedEmitter<number>;
  /** A weight that failed to send while disconnected; retried on reconnect. */
  private unsent: number | null = null;

  constructor(
    readonly client: ApiClient,
    readonly store: UiStore,
    debounceMs = 150,
  ) {
    this.emitter = windowedEmitter((w) => this.send(w), debounceMs);
  }

  onSliderInput(w: number): void {
    // Re-committing the value the engine already has (and nothing newer
    // in flight) is a no-op; no request goes out.
    if (w === this.store.effectiveWeight()) return;
    this.store.markPending(w);
    this.emitter.push(w);
  }

  private send(w: number): void {
    this.client.setWeight(w).catch(() => {
      this.unsent = w;
    });
  }

  /** Consume the push channel until the signal aborts; never throws. */
  async connect(signal: AbortSignal): Promise<void> {
    try {
      this.store.seedTrajectory(await this.client.trajectory());
    } catch {
      // history is a nicety; live frames still fill the chart
    }
    await this.client.subscribe(
      {
        onFrame: (frame) => this.store.applyFrame(frame),
        onStatus: (status) => {
          this.store.setConnection(status);
          if (status === "live" && this.unsent !== null) {
            const w = this.unsent;
            this.unsent = null;
            this.send(w);
          }
        },
      },
      signal,
    );
  }

  pause(): Promise<unknown> {
    return this.client.pause();
  }

  resume(): Promise<unknown> {
    return this.client.resume();
  }

  forceReallocate(): Promise<unknown> {
    return this.client.forceReallocate();
  }

  dispose(): void {
    this.emitter.cancel();
  }
}
