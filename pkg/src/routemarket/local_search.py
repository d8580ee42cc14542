"""Intra-route local search: four neighborhoods and randomized descent.

Each improvement step picks one neighborhood uniformly at random, samples one
move uniformly from that neighborhood's valid index set, and accepts it only
on strict improvement of the weighted route cost. Inter-route changes are the
marketplace's job, not local search's.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .evaluation import sequence_totals
from .model import Instance, PreferenceWeights, Route

#: Strict-improvement threshold; ties and float noise are rejected.
IMPROVEMENT_EPS = 1e-12


class MoveKind(enum.Enum):
    INVERT = "Invert"
    EXCHANGE = "Exchange"
    SHIFT_FORWARD = "ShiftForward"
    SHIFT_BACKWARD = "ShiftBackward"


@dataclass(frozen=True)
class Move:
    """One move: a kind plus two 1-indexed positions within a route.

    Invert reverses the segment p1..p2, Exchange swaps the two entries, and
    the shifts remove the entry at p1 and reinsert it so that it occupies
    position p2 in the resulting sequence.
    """

    kind: MoveKind
    p1: int
    p2: int

    def validate(self, length: int) -> None:
        if not (1 <= self.p1 <= length and 1 <= self.p2 <= length):
            raise IndexError(
                f"{self.kind.value}({self.p1}, {self.p2}) out of range for "
                f"route of length {length}"
            )
        if self.kind is MoveKind.SHIFT_BACKWARD:
            if self.p1 <= self.p2:
                raise ValueError(
                    f"ShiftBackward requires p1 > p2, got ({self.p1}, {self.p2})"
                )
        elif self.kind is MoveKind.SHIFT_FORWARD:
            if self.p1 >= self.p2:
                raise ValueError(
                    f"ShiftForward requires p1 < p2, got ({self.p1}, {self.p2})"
                )
        elif self.p1 > self.p2:
            # The symmetric kinds tolerate p1 == p2 as an identity move.
            raise ValueError(
                f"{self.kind.value} requires p1 <= p2, got ({self.p1}, {self.p2})"
            )

    def apply(self, sequence: tuple[int, ...]) -> tuple[int, ...]:
        """Apply to a bare sequence, returning a new sequence."""
        self.validate(len(sequence))
        i, j = self.p1 - 1, self.p2 - 1
        if self.kind is MoveKind.INVERT:
            return sequence[:i] + sequence[i : j + 1][::-1] + sequence[j + 1 :]
        if self.kind is MoveKind.EXCHANGE:
            out = list(sequence)
            out[i], out[j] = out[j], out[i]
            return tuple(out)
        out = list(sequence)
        item = out.pop(i)
        out.insert(j, item)
        return tuple(out)


def apply_move(route: Route, move: Move) -> Route:
    """Return a new route with ``move`` applied; the input is untouched."""
    return Route(route.vehicle, move.apply(route.sequence))


_KINDS = (
    MoveKind.INVERT,
    MoveKind.EXCHANGE,
    MoveKind.SHIFT_FORWARD,
    MoveKind.SHIFT_BACKWARD,
)


def sample_move(length: int, rng) -> Move | None:
    """Uniformly sample a kind, then a valid (p1, p2) pair for it.

    Returns None for routes too short to move anything (length < 2).
    """
    if length < 2:
        return None
    kind = _KINDS[rng.randrange(4)]
    a = rng.randrange(length)
    b = rng.randrange(length - 1)
    if b >= a:
        b += 1
    lo, hi = (a, b) if a < b else (b, a)
    if kind is MoveKind.SHIFT_BACKWARD:
        return Move(kind, hi + 1, lo + 1)
    return Move(kind, lo + 1, hi + 1)


def improve_step(
    route: Route, instance: Instance, w: PreferenceWeights, rng
) -> tuple[Route, bool]:
    """One randomized first-improvement step.

    Samples a single move and accepts it only if it strictly lowers the
    weighted route cost while keeping the route duration-feasible (capacity
    is invariant under reordering). Returns ``(route, improved)``.
    """
    move = sample_move(len(route.sequence), rng)
    if move is None:
        return route, False
    vehicle = instance.vehicle(route.vehicle)
    wd = w.w_dist
    d0, t0, _, _ = sequence_totals(route.sequence, vehicle, instance)
    new_seq = move.apply(route.sequence)
    d1, t1, dur1, _ = sequence_totals(new_seq, vehicle, instance)
    delta = (wd * d1 + (1.0 - wd) * t1) - (wd * d0 + (1.0 - wd) * t0)
    if delta < -IMPROVEMENT_EPS and dur1 <= vehicle.max_route_duration:
        return Route(route.vehicle, new_seq), True
    return route, False


def descend(
    route: Route,
    instance: Instance,
    w: PreferenceWeights,
    rng,
    patience: int,
    max_steps: int | None = None,
) -> Route:
    """Randomized descent until ``patience`` consecutive non-improving steps.

    ``max_steps`` optionally caps the total number of sampled moves, which is
    how the engine carves descent into fixed-size bursts. The result's
    weighted cost never exceeds the input's.
    """
    if patience < 1:
        raise ValueError("patience must be >= 1")
    vehicle = instance.vehicle(route.vehicle)
    seq = route.sequence
    length = len(seq)
    if length < 2:
        return route
    wd = w.w_dist
    d, t, _, _ = sequence_totals(seq, vehicle, instance)
    cost = wd * d + (1.0 - wd) * t
    max_dur = vehicle.max_route_duration
    fails = 0
    steps = 0
    while fails < patience and (max_steps is None or steps < max_steps):
        steps += 1
        move = sample_move(length, rng)
        new_seq = move.apply(seq)
        d1, t1, dur1, _ = sequence_totals(new_seq, vehicle, instance)
        new_cost = wd * d1 + (1.0 - wd) * t1
        if new_cost - cost < -IMPROVEMENT_EPS and dur1 <= max_dur:
            seq = new_seq
            cost = new_cost
            fails = 0
        else:
            fails += 1
    if seq is route.sequence:
        return route
    return Route(route.vehicle, seq)
