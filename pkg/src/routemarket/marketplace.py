"""The marketplace and the decider's assignment machinery.

Open orders live on the market until a vehicle wins them. Each assignment
round collects fresh bids from every agent, scores each order by regret
(what deferring it would cost), and hands the most-regretted order to its
best bidder. The decider also watches for stagnation and, when progress
stalls, forces agents to hand orders back for reallocation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .agent import Bid, VehicleAgent
from .model import Instance, PreferenceWeights, Solution

UTILITY_EPS = 1e-9


@dataclass
class Market:
    """The pool of orders currently open for bidding."""

    open_orders: set[int] = field(default_factory=set)


@dataclass(frozen=True)
class RegretEntry:
    """Best and second-best prices for one open order.

    ``regret`` is second-best minus best; infinite when only one vehicle
    can serve the order, so such orders are assigned first.
    """

    order: int
    best: Bid
    second_best_price: float
    regret: float


class StalledError(RuntimeError):
    """No open order received any bid; the listed orders are unservable."""

    def __init__(self, unserved: list[int]):
        self.unserved = sorted(unserved)
        super().__init__(
            f"no vehicle can take {len(self.unserved)} open order(s): {self.unserved}"
        )


def collect_quotes(
    agents: dict[int, VehicleAgent],
    orders,
    w: PreferenceWeights,
) -> dict[int, list[Bid]]:
    """Fresh bids from every agent for every listed order.

    Orders nobody can serve get an empty list.
    """
    quotes: dict[int, list[Bid]] = {}
    for order in orders:
        bids = []
        for agent in agents.values():
            bid = agent.compute_bid(order, w)
            if bid is not None:
                bids.append(bid)
        quotes[order] = bids
    return quotes


def regret_entries(quotes: dict[int, list[Bid]]) -> list[RegretEntry]:
    """Score every order that received at least one bid."""
    entries = []
    for order, bids in quotes.items():
        if not bids:
            continue
        ranked = sorted(bids, key=lambda b: (b.price, b.vehicle))
        best = ranked[0]
        second = ranked[1].price if len(ranked) > 1 else math.inf
        entries.append(
            RegretEntry(
                order=order,
                best=best,
                second_best_price=second,
                regret=second - best.price,
            )
        )
    return entries


def assign_next(market: Market, quotes: dict[int, list[Bid]]) -> RegretEntry | None:
    """Pick the order whose deferral would cost the most.

    Maximum regret wins; ties fall to the lower best price, then the lower
    order id. Returns None when no open order received any bid (stalled).
    """
    unknown = set(quotes) - market.open_orders
    if unknown:
        raise ValueError(f"quotes for orders not on the market: {sorted(unknown)}")
    entries = regret_entries(quotes)
    if not entries:
        return None
    return min(entries, key=lambda e: (-e.regret, e.best.price, e.order))


def run_assignment(
    market: Market,
    agents: dict[int, VehicleAgent],
    w: PreferenceWeights,
) -> None:
    """Assign open orders one at a time until the market empties.

    Quotes are recollected after every insertion, so bids always reflect
    current routes; a bid whose route version went stale is dropped and the
    round is re-quoted. Raises StalledError when open orders remain but no
    vehicle bids for any of them.
    """
    while market.open_orders:
        quotes = collect_quotes(agents, sorted(market.open_orders), w)
        entry = assign_next(market, quotes)
        if entry is None:
            raise StalledError(list(market.open_orders))
        bid = entry.best
        agent = agents[bid.vehicle]
        if bid.route_version != agent.version:
            continue  # stale quote: re-collect, never assign from it
        if not agent.insert_order(bid.order, bid.position):
            raise RuntimeError(
                f"quoted insertion rejected for order {bid.order} on vehicle {bid.vehicle}"
            )
        market.open_orders.discard(bid.order)


def materialize(
    instance: Instance, agents: dict[int, VehicleAgent], market: Market
) -> Solution:
    """Snapshot the agents' routes and the market into a Solution."""
    return Solution(
        routes={vid: agent.route for vid, agent in agents.items()},
        unassigned=set(market.open_orders),
    )


def construct(
    instance: Instance,
    agents: dict[int, VehicleAgent],
    w: PreferenceWeights,
    market: Market | None = None,
) -> Solution:
    """Build a complete solution from an empty one via the market.

    All customers are posted, then assigned by regret until the market is
    empty. Raises StalledError (listing the unservable orders) if some
    orders cannot be placed.
    """
    if market is None:
        market = Market()
    market.open_orders.update(c.id for c in instance.customers)
    run_assignment(market, agents, w)
    return materialize(instance, agents, market)


class StagnationMonitor:
    """Watches global utility and trips after ``patience`` idle iterations.

    Improvement means utility dropping at least 1e-9 below the best seen;
    that resets the idle counter. A trip also resets the counter, starting
    the next patience span.
    """

    def __init__(self, patience: int, ejection_size: int):
        if patience < 1:
            raise ValueError("patience must be >= 1")
        if ejection_size < 0:
            raise ValueError("ejection_size must be >= 0")
        self.patience = patience
        self.ejection_size = ejection_size
        self.best_utility = math.inf
        self.since_improvement = 0

    def observe(self, utility: float, iterations: int = 1) -> bool:
        """Feed one utility observation; True when stagnation trips."""
        if utility <= self.best_utility - UTILITY_EPS:
            self.best_utility = utility
            self.since_improvement = 0
            return False
        self.since_improvement += iterations
        if self.since_improvement >= self.patience:
            self.since_improvement = 0
            return True
        return False

    def reset(self, best_utility: float = math.inf) -> None:
        self.best_utility = best_utility
        self.since_improvement = 0


def reallocate(
    market: Market,
    agents: dict[int, VehicleAgent],
    w: PreferenceWeights,
    ejection_size: int,
    rng,
    selector: str = "costliest",
) -> list[int]:
    """Force every agent to hand back up to ``ejection_size`` orders.

    The ejected orders are posted on the market; the caller re-runs the
    assignment loop afterwards. Returns the ejected order ids.
    """
    ejected: list[int] = []
    for vid in sorted(agents):
        removed = agents[vid].eject_orders(ejection_size, w, selector=selector, rng=rng)
        ejected.extend(removed)
    market.open_orders.update(ejected)
    return ejected


def reallocate_and_reassign(
    market: Market,
    agents: dict[int, VehicleAgent],
    w: PreferenceWeights,
    ejection_size: int,
    rng,
    selector: str = "costliest",
) -> bool:
    """One full reallocation cycle, transactionally.

    If reassignment stalls (an ejected order can no longer be placed
    anywhere), the ejection is rolled back so the partition invariant and
    the incumbent survive. Returns False on rollback.
    """
    saved_routes = {vid: agent.route for vid, agent in agents.items()}
    saved_market = set(market.open_orders)
    reallocate(market, agents, w, ejection_size, rng, selector=selector)
    try:
        run_assignment(market, agents, w)
    except StalledError:
        for vid, agent in agents.items():
            agent._replace_route(saved_routes[vid])
        market.open_orders.clear()
        market.open_orders.update(saved_market)
        return False
    return True
