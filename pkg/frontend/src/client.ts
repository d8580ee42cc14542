import type { ServerFrame, Snapshot, TrajectoryRecord } from "./protocol.js";

/**
 * Incremental server-sent-events parser. Feed it raw text chunks in
 * arrival order; it emits one {event, data} per blank-line-terminated
 * frame, however the chunk boundaries fall. Comment lines (keep-alives)
 * are dropped.
 */
export class SseFrameParser {
  private tail = "";
  private eventName = "";
  private dataLines: string[] = [];

  feed(chunk: string, onFrame: (event: string, data: string) => void): void {
    this.tail += chunk;
    let nl: number;
    while ((nl = this.tail.indexOf("\n")) >= 0) {
      let line = this.tail.slice(0, nl);
      this.tail = this.tail.slice(nl + 1);
      if (line.endsWith("\r")) line = line.slice(0, -1);

      if (line === "") {
        if (this.dataLines.length > 0) {
          onFrame(this.eventName || "message", this.dataLines.join("\n"));
        }
        this.eventName = "";
        this.dataLines = [];
      } else if (line.startsWith(":")) {
        continue;
      } else if (line.startsWith("event:")) {
        this.eventName = line.slice(6).trimStart();
      } else if (line.startsWith("data:")) {
        this.dataLines.push(line.slice(5).trimStart());
      }
      // other fields (id, retry) are not used by this service
    }
  }
}

export interface SubscribeHandlers {
  onFrame: (frame: ServerFrame) => void;
  onStatus?: (status: "connecting" | "live" | "dropped") => void;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service replied ${status}: ${JSON.stringify(detail)}`);
  }
}

/**
 * Thin wrapper over the service API. Every method is one HTTP request;
 * subscribe() holds a streaming GET open and reconnects with backoff.
 */
export class ApiClient {
  constructor(readonly base = "") {}

  private async post(path: string, body?: unknown): Promise<any> {
    const res = await fetch(this.base + path, {
      method: "POST",
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = await res.json().catch(() => null);
    if (!res.ok) throw new ApiError(res.status, doc?.detail ?? doc);
    return doc;
  }

  private async get(path: string): Promise<any> {
    const res = await fetch(this.base + path);
    const doc = await res.json().catch(() => null);
    if (!res.ok) throw new ApiError(res.status, doc?.detail ?? doc);
    return doc;
  }

  loadInstanceText(text: string) {
    return this.post("/api/load-instance", { text });
  }

  loadInstancePath(path: string) {
    return this.post("/api/load-instance", { path });
  }

  start() {
    return this.post("/api/start");
  }

  pause() {
    return this.post("/api/pause");
  }

  resume() {
    return this.post("/api/resume");
  }

  stop() {
    return this.post("/api/stop");
  }

  forceReallocate() {
    return this.post("/api/force-reallocate");
  }

  setWeight(w: number): Promise<{ ok: boolean; w_dist: number }> {
    return this.post("/api/set-weight", { w_dist: w });
  }

  snapshot(): Promise<ServerFrame> {
    return this.get("/api/snapshot");
  }

  async trajectory(): Promise<TrajectoryRecord[]> {
    const doc = await this.get("/api/trajectory");
    return doc.points;
  }

  /**
   * Consume the push channel until the signal aborts. Runs the reconnect
   * loop itself so callers just see frames and status changes.
   */
  async subscribe(handlers: SubscribeHandlers, signal: AbortSignal): Promise<void> {
    let retryMs = 1000;
    while (!signal.aborted) {
      handlers.onStatus?.("connecting");
      try {
        const res = await fetch(this.base + "/api/subscribe", { signal });
        if (!res.ok || !res.body) throw new ApiError(res.status, await res.text());
        handlers.onStatus?.("live");
        retryMs = 1000;

        const parser = new SseFrameParser();
        const decoder = new TextDecoder();
        const reader = res.body.getReader();
        for (;;) {
          const { done, value } = await reader.read();
          if (done) break;
          parser.feed(decoder.decode(value, { stream: true }), (event, data) => {
            if (event === "snapshot") handlers.onFrame(JSON.parse(data));
          });
        }
      } catch (err) {
        if (signal.aborted) break;
      }
      if (signal.aborted) break;
      handlers.onStatus?.("dropped");
      await new Promise((r) => setTimeout(r, retryMs));
      retryMs = Math.min(retryMs * 2, 8000);
    }
  }
}

export type { Snapshot };
