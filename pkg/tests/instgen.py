"""Random instances, routes, and solutions for property tests.

Deliberately independent of any production generation code; only the domain
types are imported.
"""

from __future__ import annotations

import random

from routemarket import UNBOUNDED, Customer, Depot, Instance, Route, Solution, VehicleSpec


def random_instance(
    rng: random.Random,
    n_customers: int = 6,
    n_vehicles: int = 2,
    n_depots: int = 1,
    *,
    box: float = 50.0,
    max_demand: int = 8,
    tight_capacity: bool = False,
    bounded_duration: bool = False,
) -> Instance:
    customers = []
    for cid in range(1, n_customers + 1):
        tw_open = rng.uniform(0.0, 150.0)
        customers.append(
            Customer(
                id=cid,
                x=rng.uniform(-box, box),
                y=rng.uniform(-box, box),
                demand=float(rng.randint(1, max_demand)),
                service_time=float(rng.randint(0, 5)),
                tw_open=tw_open,
                tw_close=tw_open + rng.uniform(20.0, 120.0),
            )
        )
    depots = [
        Depot(
            id=1000 + d,
            x=rng.uniform(-box / 2, box / 2),
            y=rng.uniform(-box / 2, box / 2),
            tw_open=0.0,
            tw_close=100000.0,
        )
        for d in range(n_depots)
    ]
    total_demand = sum(c.demand for c in customers)
    if tight_capacity:
        capacity = max(max_demand, total_demand / n_vehicles * 1.3)
    else:
        capacity = total_demand + max_demand
    vehicles = [
        VehicleSpec(
            id=k + 1,
            home_depot=depots[k % n_depots].id,
            capacity=capacity,
            max_route_duration=5000.0 if bounded_duration else UNBOUNDED,
        )
        for k in range(n_vehicles)
    ]
    return Instance(customers=customers, depots=depots, vehicles=vehicles)


def random_route(
    rng: random.Random, instance: Instance, vehicle_id: int, length: int
) -> Route:
    ids = [c.id for c in instance.customers]
    picked = rng.sample(ids, min(length, len(ids)))
    return Route(vehicle_id, tuple(picked))


def random_solution(rng: random.Random, instance: Instance) -> Solution:
    """Partition every customer onto a random vehicle in random order."""
    ids = [c.id for c in instance.customers]
    rng.shuffle(ids)
    buckets: dict[int, list[int]] = {v.id: [] for v in instance.vehicles}
    vids = list(buckets)
    for cid in ids:
        buckets[rng.choice(vids)].append(cid)
    return Solution(
        routes={vid: Route(vid, tuple(seq)) for vid, seq in buckets.items()},
        unassigned=set(),
    )
