"""Vehicle agents: one owner per route.

An agent prices open orders by quoting its cheapest feasible insertion,
executes insertions it wins, hands orders back to the market when the
decider forces a reallocation, and improves its own route with local search.
Each agent's state is owned by exactly one worker at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

from .evaluation import insertion_delta, sequence_totals, weighted_cost
from .local_search import descend
from .model import Instance, PreferenceWeights, Route, VehicleSpec


@dataclass(frozen=True)
class Bid:
    """A priced offer for one order: cheapest feasible insertion point.

    ``route_version`` pins the bid to the route state it was quoted against;
    the decider refuses to act on stale versions.
    """

    vehicle: int
    order: int
    position: int
    price: float
    route_version: int


class VehicleAgent:
    """Owns one vehicle's route and all changes to it."""

    def __init__(self, spec: VehicleSpec, instance: Instance):
        self.spec = spec
        self.instance = instance
        self.route = Route(spec.id)
        self.version = 0

    def __repr__(self):
        return f"VehicleAgent(vehicle={self.spec.id}, stops={len(self.route)}, v{self.version})"

    def _replace_route(self, route: Route) -> None:
        self.route = route
        self.version += 1

    def compute_bid(self, order: int, w: PreferenceWeights) -> Bid | None:
        """Quote the cheapest feasible insertion of ``order``, or None.

        Every insertion point of the current route is priced; the weighted
        increase in distance and tardiness is the price. None means no
        feasible position exists.
        """
        if order in self.route.sequence:
            raise ValueError(f"order {order} is already on vehicle {self.spec.id}'s route")
        best_price = None
        best_position = None
        for position in range(len(self.route.sequence) + 1):
            delta = insertion_delta(self.route, order, position, self.instance, w)
            if not delta.feasible:
                continue
            if best_price is None or delta.delta_utility < best_price:
                best_price = delta.delta_utility
                best_position = position
        if best_price is None:
            return None
        return Bid(
            vehicle=self.spec.id,
            order=order,
            position=best_position,
            price=best_price,
            route_version=self.version,
        )

    def insert_order(self, order: int, position: int) -> bool:
        """Insert ``order`` at ``position`` if the result stays feasible.

        Returns False (and leaves the route alone) when the insertion would
        break capacity or the duration bound, so the order stays on the
        marketplace.
        """
        seq = self.route.sequence[:position] + (order,) + self.route.sequence[position:]
        _, _, duration, load = sequence_totals(seq, self.spec, self.instance)
        if load > self.spec.capacity or duration > self.spec.max_route_duration:
            return False
        self._replace_route(Route(self.spec.id, seq))
        return True

    def eject_orders(
        self, k: int, w: PreferenceWeights, selector: str = "costliest", rng=None
    ) -> list[int]:
        """Remove up to ``k`` orders and report them for re-posting.

        ``costliest`` removes the orders whose individual removal saves the
        most weighted cost against the current route; ``random`` samples
        uniformly and needs an rng.
        """
        if k < 0:
            raise ValueError("k must be >= 0")
        seq = self.route.sequence
        n = min(k, len(seq))
        if n == 0:
            return []
        if selector == "costliest":
            base = weighted_cost(seq, self.spec, self.instance, w)
            savings = []
            for i in range(len(seq)):
                reduced = seq[:i] + seq[i + 1 :]
                saving = base - weighted_cost(reduced, self.spec, self.instance, w)
                savings.append((-saving, i))
            savings.sort()
            chosen = sorted(i for _, i in savings[:n])
        elif selector == "random":
            if rng is None:
                raise ValueError("random selector needs an rng")
            chosen = sorted(rng.sample(range(len(seq)), n))
        else:
            raise ValueError(f"unknown ejection selector {selector!r}")
        removed = [seq[i] for i in chosen]
        keep = [cid for i, cid in enumerate(seq) if i not in set(chosen)]
        self._replace_route(Route(self.spec.id, tuple(keep)))
        return removed

    def improve(
        self,
        w: PreferenceWeights,
        rng,
        patience: int,
        max_steps: int | None = None,
    ) -> Route:
        """Descend the route under the current weights; never worsens it."""
        improved = descend(self.route, self.instance, w, rng, patience, max_steps)
        if improved is not self.route:
            self._replace_route(improved)
        return self.route

    def weighted_cost(self, w: PreferenceWeights) -> float:
        return weighted_cost(self.route.sequence, self.spec, self.instance, w)
