"""Public requeueing games: added machines advance the whole queue.

Changing the machine count re-deals everyone over a grid that follows the
priority order of the initial schedule.  The coalition can only reorder
its own members over the seats they hold, either in the initial schedule
(before the grid is redrawn) or in the new grid (after); the better of
the two is kept.  Machine sales require owning whole machines and only
pay the coalition its population share of the price.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..model import (
    GameTable,
    RequeueingProblem,
    SchedulingPlan,
    as_mask,
    members_of,
)
from ..scheduling import ceil_div
from .common import ENUMERATION_CAP, INF, RearrangementVariant, check_cap


@dataclass(frozen=True)
class PriorityOrder:
    """Serving priority: earlier period first, lower machine number on ties."""

    order: tuple[int, ...]  # agents from highest to lowest priority

    @property
    def rank(self) -> dict[int, int]:
        return {a: p for p, a in enumerate(self.order, 1)}

    def __getitem__(self, agent: int) -> int:
        return self.order.index(agent) + 1

    def is_optimal(self, rq: RequeueingProblem) -> bool:
        """True when weights never increase along the priority order."""
        w = [rq.w(a) for a in self.order]
        return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def priority_order(rq: RequeueingProblem) -> PriorityOrder:
    agents = range(1, rq.n + 1)
    return PriorityOrder(tuple(sorted(agents, key=lambda i: (rq.s0(i), rq.phi0(i)))))


def public_requeue_grid(pi: PriorityOrder, k: int) -> SchedulingPlan:
    """Deal agents over ``k`` machines in priority order, one period at a time."""
    if k < 1:
        raise ValueError("at least one machine is required")
    slots = tuple((a, (p - 1) % k + 1, ceil_div(p, k) - 1) for p, a in enumerate(pi.order, 1))
    return SchedulingPlan(k, slots)


def owned_machines(rq: RequeueingProblem, T: int) -> int:
    """Initial machines whose every user belongs to ``T``."""
    return sum(1 for seq in rq.initial.sequences() if seq and all(T >> (a - 1) & 1 for a in seq))


def _best_assignment(members, seats, cost, allowed) -> float | Fraction:
    """Minimum-cost bijection members -> seats under an allowed-pair filter."""
    t = len(members)
    dp = [INF] * (1 << t)
    dp[0] = 0
    for mask in range(1 << t):
        cur = dp[mask]
        if cur == INF:
            continue
        seat = seats[bin(mask).count("1")] if mask != (1 << t) - 1 else None
        if seat is None:
            continue
        for x in range(t):
            if mask >> x & 1 or not allowed(members[x], seat):
                continue
            val = cur + cost(members[x], seat)
            nxt = mask | 1 << x
            if val < dp[nxt]:
                dp[nxt] = val
    return dp[-1]


def _reorder_rule(schedule: dict[int, tuple[int, int]], T: int, swaps: bool):
    """Who may take a seat without jumping an outsider on that machine."""
    if swaps:
        return lambda agent, seat: True
    outsiders = [(a, k, s) for a, (k, s) in schedule.items() if not T >> (a - 1) & 1]

    def allowed(agent, seat):
        k, s = seat
        ka, sa = schedule[agent]
        for _, ko, so in outsiders:
            if ko == k and so > s and not (ka == ko and sa < so):
                return False
        return True
    return allowed


def _machine_term(rq: RequeueingProblem, T: int, k: int) -> Fraction:
    if k >= rq.m0:
        return -(k - rq.m0) * rq.b
    return Fraction(len(members_of(T)), rq.n) * (rq.m0 - k) * rq.b


def public_value_fixed(rq: RequeueingProblem, T, k: int, variant) -> Fraction:
    """Net saving of ``T`` when forced to run exactly ``k`` machines."""
    variant = RearrangementVariant.parse(variant)
    T = as_mask(T)
    if not 1 <= k <= rq.n:
        raise ValueError(f"k={k} outside 1..{rq.n}")
    if T == 0:
        return Fraction(0)
    if k < rq.m0 and owned_machines(rq, T) < rq.m0 - k:
        return Fraction(0)
    swaps = variant is RearrangementVariant.SWAPS
    members = members_of(T)
    pi = priority_order(rq)
    rank = pi.rank

    def weight_cost(agent, time):
        return rq.w(agent) * time

    # reorder after the grid is drawn
    grid = {a: (m, s) for a, m, s in public_requeue_grid(pi, k).slots}
    seats = [grid[a] for a in members]
    after = _best_assignment(members, seats, lambda a, seat: weight_cost(a, seat[1]),
                             _reorder_rule(grid, T, swaps))

    # reorder in the initial schedule, then draw the grid
    init = {a: (m, s) for a, m, s in rq.initial.slots}
    seat_rank = {init[a]: rank[a] for a in members}
    seats0 = [init[a] for a in members]
    before = _best_assignment(
        members, seats0,
        lambda a, seat: weight_cost(a, ceil_div(seat_rank[seat], k) - 1),
        _reorder_rule(init, T, swaps))

    waiting_now = sum((rq.w(a) * rq.s0(a) for a in members), Fraction(0))
    return waiting_now - min(after, before) + _machine_term(rq, T, k)


def public_value_profile(rq: RequeueingProblem, T, variant) -> list[Fraction]:
    """Values for k = 1..n machines."""
    return [public_value_fixed(rq, T, k, variant) for k in range(1, rq.n + 1)]


def public_requeueing_value(rq: RequeueingProblem, T, variant) -> Fraction:
    return max(public_value_profile(rq, T, variant)) if as_mask(T) else Fraction(0)


def public_requeueing_game(rq: RequeueingProblem, variant,
                           cap: int = ENUMERATION_CAP) -> GameTable:
    check_cap(rq.n, cap)
    variant = RearrangementVariant.parse(variant)
    return GameTable.from_function(
        "value", rq.n, lambda T: public_requeueing_value(rq, T, variant),
        labels=rq.base.labels)


# -- unrestricted-sale relaxation -------------------------------------------

def relaxed_public_value(rq: RequeueingProblem, S, k: int) -> Fraction:
    """Grid saving of ``S`` on ``k`` machines with sales paid in full.

    No member reordering and no ownership test.  Positions are priority
    ranks, which coincide with agent numbers when the initial queue is
    already optimal.
    """
    if not 1 <= k <= rq.n:
        raise ValueError(f"k={k} outside 1..{rq.n}")
    rank = priority_order(rq).rank
    m0 = rq.m0
    gain = sum(((ceil_div(rank[l], m0) - ceil_div(rank[l], k)) * rq.w(l)
                for l in members_of(as_mask(S))), Fraction(0))
    return gain - (k - m0) * rq.b


def relaxed_machine_count(rq: RequeueingProblem, S) -> int:
    """Smallest maximiser of the relaxed value over k = 1..n."""
    values = [relaxed_public_value(rq, S, k) for k in range(1, rq.n + 1)]
    return values.index(max(values)) + 1


def relaxed_public_game(rq: RequeueingProblem) -> GameTable:
    return GameTable.from_function(
        "value", rq.n,
        lambda S: max(relaxed_public_value(rq, S, k) for k in range(1, rq.n + 1)),
        labels=rq.base.labels)


__all__ = [
    "PriorityOrder", "priority_order", "public_requeue_grid", "owned_machines",
    "public_value_fixed", "public_value_profile", "public_requeueing_value",
    "public_requeueing_game", "relaxed_public_value", "relaxed_machine_count",
    "relaxed_public_game",
]
