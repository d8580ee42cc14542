"""HTTP face of the engine: a JSON request API plus a server-sent-events
push channel, for a browser UI or scripted control.

The engine runs in one worker thread; every mutating request becomes a
command on its queue, and reads are served from the latest snapshot the
engine published, so no request ever touches mid-sweep state.
"""

from __future__ import annotations

import json
import queue
import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .cordeau import CordeauFormatError, load_instance, parse_cordeau
from .engine import (
    DEFAULT_EJECTION_SIZE,
    DEFAULT_MICRO_BUDGET,
    DEFAULT_PATIENCE,
    CommandKind,
    Engine,
    EngineCommand,
    EngineSnapshot,
    TrajectoryPoint,
)
from .model import Instance


def snapshot_payload(
    instance: Instance, snap: EngineSnapshot, point: TrajectoryPoint | None = None
) -> dict:
    """Wire form of one snapshot; carries coordinates so the UI needs no
    separate instance download."""
    customers = instance.customers_by_id
    routes = []
    for vid in sorted(snap.solution.routes):
        route = snap.solution.routes[vid]
        sched = snap.schedules[vid]
        depot = instance.depot(instance.vehicle(vid).home_depot)
        polyline = (
            [[depot.x, depot.y]]
            + [[customers[c].x, customers[c].y] for c in route.sequence]
            + [[depot.x, depot.y]]
        )
        routes.append(
            {
                "vehicle": vid,
                "depot": depot.id,
                "sequence": list(route.sequence),
                "distance": sched.distance,
                "tardiness": sched.tardiness,
                "duration": sched.duration,
                "load": sched.load,
                "polyline": polyline,
            }
        )
    payload = {
        "status": snap.status,
        "wall_iteration": snap.wall_iteration,
        "w_dist": snap.w_dist,
        "weight_version": snap.weight_version,
        "solution_version": snap.solution_version,
        "objectives": {"dist": snap.objectives.dist, "tardy": snap.objectives.tardy},
        "utility": snap.utility,
        "routes": routes,
        "unassigned": list(snap.open_orders),
        "customers": [
            {
                "id": c.id,
                "x": c.x,
                "y": c.y,
                "demand": c.demand,
                "tw_open": c.tw_open,
                "tw_close": c.tw_close,
            }
            for c in instance.customers
        ],
        "depots": [{"id": d.id, "x": d.x, "y": d.y} for d in instance.depots],
        "best_per_weight": [
            {
                "w_dist": w,
                "dist": rec.objectives.dist,
                "tardy": rec.objectives.tardy,
                "utility": rec.utility,
            }
            for w, rec in sorted(snap.best_per_weight.items())
        ],
    }
    if point is not None:
        payload["point"] = point.as_record()
    return payload


class _Hub:
    """Fans snapshot events out to any number of SSE subscribers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue(maxsize=256)
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._lock:
            try:
                self._subscribers.remove(q)
            except ValueError:
                pass

    def publish(self, payload: dict) -> None:
        with self._lock:
            targets = list(self._subscribers)
        for q in targets:
            try:
                q.put_nowait(payload)
            except queue.Full:
                # Drop the oldest event so slow readers stay current.
                try:
                    q.get_nowait()
                except queue.Empty:
                    pass
                try:
                    q.put_nowait(payload)
                except queue.Full:
                    pass


class ServiceState:
    """Owns the engine, its worker thread, and the subscriber hub."""

    def __init__(
        self,
        *,
        seed: int = 0,
        patience: int = DEFAULT_PATIENCE,
        ejection_size: int = DEFAULT_EJECTION_SIZE,
        micro_budget: int = DEFAULT_MICRO_BUDGET,
        deterministic: bool = False,
    ):
        self.config = {
            "seed": seed,
            "patience": patience,
            "ejection_size": ejection_size,
            "micro_budget": micro_budget,
            "deterministic": deterministic,
        }
        self.hub = _Hub()
        self.lock = threading.Lock()
        self.engine: Engine | None = None
        self.worker: threading.Thread | None = None
        self.started = False

    def payload(
        self, instance: Instance, snap: EngineSnapshot, point: TrajectoryPoint | None = None
    ) -> dict:
        """Snapshot wire form plus run identity, so the UI can show the seed."""
        doc = snapshot_payload(instance, snap, point)
        doc["seed"] = self.config["seed"]
        return doc

    def load(self, instance: Instance) -> None:
        """Adopt a new instance, replacing any current run."""
        with self.lock:
            self._stop_locked()

            def on_event(snap: EngineSnapshot, point: TrajectoryPoint | None) -> None:
                self.hub.publish(self.payload(instance, snap, point))

            self.engine = Engine(instance, initial_w=0.5, observer=on_event, **self.config)

    def start(self) -> None:
        """Spawn the worker; the engine constructs and then waits paused."""
        with self.lock:
            if self.engine is None:
                raise RuntimeError("no instance loaded")
            if self.started:
                raise RuntimeError("already started")
            self.worker = threading.Thread(
                target=self.engine.run_interactive,
                kwargs={"start_paused": True},
                daemon=True,
                name="engine",
            )
            self.started = True
            self.worker.start()

    def submit(self, command: EngineCommand) -> None:
        with self.lock:
            if self.engine is None or not self.started:
                raise RuntimeError("engine is not running")
            self.engine.submit(command)

    def stop(self) -> None:
        with self.lock:
            self._stop_locked()

    def _stop_locked(self) -> None:
        if self.engine is not None and self.started:
            self.engine.submit(EngineCommand(CommandKind.STOP))
        if self.worker is not None:
            self.worker.join(timeout=10)
        self.worker = None
        self.started = False


class LoadRequest(BaseModel):
    path: str | None = None
    text: str | None = None


class WeightRequest(BaseModel):
    w_dist: float = Field(ge=0.0, le=1.0)


def _sse(payload: dict) -> str:
    return "event: snapshot\ndata: " + json.dumps(payload) + "\n\n"


def create_app(
    instance: Instance | None = None,
    *,
    seed: int = 0,
    patience: int = DEFAULT_PATIENCE,
    ejection_size: int = DEFAULT_EJECTION_SIZE,
    micro_budget: int = DEFAULT_MICRO_BUDGET,
    deterministic: bool = False,
    static_dir: str | None = None,
) -> FastAPI:
    """Build the service; with an instance given, the run starts paused."""
    state = ServiceState(
        seed=seed,
        patience=patience,
        ejection_size=ejection_size,
        micro_budget=micro_budget,
        deterministic=deterministic,
    )

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        state.stop()

    app = FastAPI(title="routemarket service", lifespan=lifespan)
    app.state.service = state

    if instance is not None:
        state.load(instance)
        state.start()

    def _submit(command: EngineCommand) -> None:
        try:
            state.submit(command)
        except RuntimeError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None

    @app.post("/api/load-instance")
    def api_load(req: LoadRequest):
        if (req.path is None) == (req.text is None):
            raise HTTPException(422, "provide exactly one of 'path' or 'text'")
        try:
            inst = load_instance(req.path) if req.path else parse_cordeau(req.text)
        except FileNotFoundError:
            raise HTTPException(404, f"no such file: {req.path}") from None
        except OSError as exc:
            raise HTTPException(400, f"cannot read {req.path}: {exc}") from None
        except CordeauFormatError as exc:
            raise HTTPException(
                422, {"issues": [str(issue) for issue in exc.issues]}
            ) from None
        state.load(inst)
        return {
            "ok": True,
            "customers": len(inst.customers),
            "depots": len(inst.depots),
            "vehicles": len(inst.vehicles),
        }

    @app.post("/api/start")
    def api_start():
        try:
            state.start()
        except RuntimeError as exc:
            raise HTTPException(409, str(exc)) from None
        return {"ok": True}

    @app.post("/api/pause")
    def api_pause():
        _submit(EngineCommand(CommandKind.PAUSE))
        return {"ok": True}

    @app.post("/api/resume")
    def api_resume():
        _submit(EngineCommand(CommandKind.RESUME))
        return {"ok": True}

    @app.post("/api/set-weight")
    def api_set_weight(req: WeightRequest):
        _submit(EngineCommand(CommandKind.SET_WEIGHT, req.w_dist))
        return {"ok": True, "w_dist": req.w_dist}

    @app.post("/api/force-reallocate")
    def api_force_reallocate():
        _submit(EngineCommand(CommandKind.FORCE_REALLOCATE))
        return {"ok": True}

    @app.post("/api/stop")
    def api_stop():
        state.stop()
        return {"ok": True}

    @app.get("/api/snapshot")
    def api_snapshot():
        engine = state.engine
        if engine is None:
            raise HTTPException(404, "no instance loaded")
        snap = engine.latest
        if snap is None:
            return {"status": "initializing"}
        return state.payload(engine.instance, snap)

    @app.get("/api/trajectory")
    def api_trajectory():
        engine = state.engine
        if engine is None:
            raise HTTPException(404, "no instance loaded")
        return {"points": [p.as_record() for p in list(engine.trajectory)]}

    @app.get("/api/subscribe")
    def api_subscribe():
        engine = state.engine
        if engine is None:
            raise HTTPException(404, "no instance loaded")
        q = state.hub.subscribe()

        def stream():
            try:
                snap = engine.latest
                if snap is not None:
                    yield _sse(state.payload(engine.instance, snap))
                else:
                    yield _sse({"status": "initializing"})
                while True:
                    try:
                        payload = q.get(timeout=15)
                    except queue.Empty:
                        yield ": keep-alive\n\n"
                        continue
                    yield _sse(payload)
            finally:
                state.hub.unsubscribe(q)

        return StreamingResponse(
            stream(),
            media_type="text/event-stream",
            headers={"cache-control": "no-cache", "x-accel-buffering": "no"},
        )

    if static_dir is not None:
        root = Path(static_dir)
        if root.is_dir():
            app.mount("/", StaticFiles(directory=str(root), html=True), name="ui")

    return app
