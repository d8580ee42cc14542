"""Core domain types: customers, depots, vehicles, routes, solutions.

Everything here is immutable after construction except :class:`Solution`,
which is the single mutable state owned by the engine. Travel time and
distance are the same Euclidean number throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

#: Sentinel for vehicles without a route-duration limit.
UNBOUNDED = math.inf


def travel_time(a, b) -> float:
    """Euclidean travel time between two points.

    Accepts anything with ``x``/``y`` attributes (customers, depots) or a
    plain ``(x, y)`` pair. Symmetric, zero only for identical points.
    """
    ax, ay = (a.x, a.y) if hasattr(a, "x") else (a[0], a[1])
    bx, by = (b.x, b.y) if hasattr(b, "x") else (b[0], b[1])
    return math.hypot(ax - bx, ay - by)


@dataclass(frozen=True)
class Customer:
    """A customer node with a soft service time window.

    Arriving before ``tw_open`` forces waiting; arriving after ``tw_close``
    is allowed but counted as tardiness.
    """

    id: int
    x: float
    y: float
    demand: float
    service_time: float
    tw_open: float
    tw_close: float

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"customer id must be >= 1, got {self.id}")
        if self.demand < 0:
            raise ValueError(f"customer {self.id}: demand must be nonnegative")
        if self.service_time < 0:
            raise ValueError(f"customer {self.id}: service time must be nonnegative")
        if self.tw_open > self.tw_close:
            raise ValueError(
                f"customer {self.id}: time window closes ({self.tw_close}) "
                f"before it opens ({self.tw_open})"
            )


@dataclass(frozen=True)
class Depot:
    """A depot node with an operating window."""

    id: int
    x: float
    y: float
    tw_open: float
    tw_close: float

    def __post_init__(self):
        if self.tw_open > self.tw_close:
            raise ValueError(
                f"depot {self.id}: operating window closes before it opens"
            )


@dataclass(frozen=True)
class VehicleSpec:
    """One vehicle: home depot, capacity, optional route duration limit.

    ``max_route_duration`` is :data:`UNBOUNDED` (infinity) when the vehicle
    has no duration limit.
    """

    id: int
    home_depot: int
    capacity: float
    max_route_duration: float = UNBOUNDED

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError(f"vehicle {self.id}: capacity must be nonnegative")
        if not self.max_route_duration > 0:
            raise ValueError(
                f"vehicle {self.id}: max route duration must be positive or UNBOUNDED"
            )

    @property
    def duration_bounded(self) -> bool:
        return math.isfinite(self.max_route_duration)


@dataclass(frozen=True)
class Instance:
    """Immutable problem data: customers, depots, vehicles, metric."""

    customers: tuple[Customer, ...]
    depots: tuple[Depot, ...]
    vehicles: tuple[VehicleSpec, ...]
    metric: str = "euclidean"

    def __post_init__(self):
        object.__setattr__(self, "customers", tuple(self.customers))
        object.__setattr__(self, "depots", tuple(self.depots))
        object.__setattr__(self, "vehicles", tuple(self.vehicles))
        if self.metric != "euclidean":
            raise ValueError(f"unsupported metric {self.metric!r}")
        for name, items in (
            ("customer", self.customers),
            ("depot", self.depots),
            ("vehicle", self.vehicles),
        ):
            ids = [item.id for item in items]
            if len(ids) != len(set(ids)):
                raise ValueError(f"duplicate {name} ids")
        depot_ids = {d.id for d in self.depots}
        for v in self.vehicles:
            if v.home_depot not in depot_ids:
                raise ValueError(
                    f"vehicle {v.id} references unknown depot {v.home_depot}"
                )

    @cached_property
    def customers_by_id(self) -> dict[int, Customer]:
        return {c.id: c for c in self.customers}

    @cached_property
    def depots_by_id(self) -> dict[int, Depot]:
        return {d.id: d for d in self.depots}

    @cached_property
    def vehicles_by_id(self) -> dict[int, VehicleSpec]:
        return {v.id: v for v in self.vehicles}

    def customer(self, customer_id: int) -> Customer:
        try:
            return self.customers_by_id[customer_id]
        except KeyError:
            raise ValueError(f"unknown customer id {customer_id}") from None

    def depot(self, depot_id: int) -> Depot:
        try:
            return self.depots_by_id[depot_id]
        except KeyError:
            raise ValueError(f"unknown depot id {depot_id}") from None

    def vehicle(self, vehicle_id: int) -> VehicleSpec:
        try:
            return self.vehicles_by_id[vehicle_id]
        except KeyError:
            raise ValueError(f"unknown vehicle id {vehicle_id}") from None


@dataclass(frozen=True)
class Route:
    """One vehicle's visit order. Starts and ends at the home depot."""

    vehicle: int
    sequence: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError(f"route for vehicle {self.vehicle} visits a customer twice")

    def __len__(self) -> int:
        return len(self.sequence)


@dataclass
class Solution:
    """A set of routes, one per vehicle, plus the pool of unassigned orders.

    The only mutable aggregate in the model. Every customer must sit in
    exactly one route or in ``unassigned``, never both.
    """

    routes: dict[int, Route] = field(default_factory=dict)
    unassigned: set[int] = field(default_factory=set)

    @classmethod
    def empty(cls, instance: Instance) -> "Solution":
        """All customers unassigned, one empty route per vehicle."""
        return cls(
            routes={v.id: Route(v.id) for v in instance.vehicles},
            unassigned={c.id for c in instance.customers},
        )

    def copy(self) -> "Solution":
        return Solution(routes=dict(self.routes), unassigned=set(self.unassigned))

    def assigned_ids(self) -> list[int]:
        out: list[int] = []
        for route in self.routes.values():
            out.extend(route.sequence)
        return out

    def validate(self, instance: Instance) -> None:
        """Raise ValueError unless this solution partitions the customers."""
        if set(self.routes) != set(instance.vehicles_by_id):
            raise ValueError("solution must carry exactly one route per vehicle")
        for vid, route in self.routes.items():
            if route.vehicle != vid:
                raise ValueError(f"route stored under vehicle {vid} belongs to {route.vehicle}")
        assigned = self.assigned_ids()
        seen = set(assigned)
        if len(assigned) != len(seen):
            raise ValueError("a customer appears on more than one route")
        overlap = seen & self.unassigned
        if overlap:
            raise ValueError(f"customers both routed and unassigned: {sorted(overlap)}")
        expected = set(instance.customers_by_id)
        got = seen | self.unassigned
        if got != expected:
            missing = expected - got
            unknown = got - expected
            parts = []
            if missing:
                parts.append(f"missing {sorted(missing)}")
            if unknown:
                parts.append(f"unknown {sorted(unknown)}")
            raise ValueError("solution does not cover the customer set: " + ", ".join(parts))


@dataclass(frozen=True)
class ObjectiveVector:
    """The two criteria: total traveled distance and total tardiness."""

    dist: float
    tardy: float

    def __post_init__(self):
        if self.dist < 0 or self.tardy < 0:
            raise ValueError("objective components must be nonnegative")

    def __add__(self, other: "ObjectiveVector") -> "ObjectiveVector":
        return ObjectiveVector(self.dist + other.dist, self.tardy + other.tardy)

    @classmethod
    def zero(cls) -> "ObjectiveVector":
        return cls(0.0, 0.0)


@dataclass(frozen=True)
class PreferenceWeights:
    """Relative importance of distance vs tardiness, in [0, 1]."""

    w_dist: float

    def __post_init__(self):
        if not 0.0 <= self.w_dist <= 1.0:
            raise ValueError(f"w_dist must be in [0, 1], got {self.w_dist}")

    @property
    def w_tardy(self) -> float:
        return 1.0 - self.w_dist
