"""Schedule costs, fixed-machine-count costs and the optimal machine count.

With ``k`` identical machines the cheapest queue serves members in rank
order, ``k`` per period, so member number ``i`` of a coalition waits
``ceil(i / k)`` periods.  :func:`threshold` is the machine price at which
``k`` machines stop beating ``k - 1``; it is non-increasing in ``k`` and
brackets the optimal count.  :func:`brute_force_min_cost` is an
independent exhaustive check of all of this on small coalitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .model import (
    CapExceededError,
    CoalitionLike,
    InvalidPlanError,
    QueueingProblem,
    SchedulingPlan,
    as_mask,
    members_of,
)

ORACLE_CAP = 8


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _member_weights(problem: QueueingProblem, S: CoalitionLike) -> tuple[int, list[int]]:
    """Member weights as integers over the problem's common denominator."""
    w = problem.scaled_weights
    return problem.weight_scale, [w[i - 1] for i in members_of(as_mask(S))]


def plan_cost(problem: QueueingProblem, S: CoalitionLike, plan: SchedulingPlan,
              charge_machines: bool = True) -> Fraction:
    """Total waiting cost of ``S`` under ``plan``, plus machines if charged."""
    mask = as_mask(S)
    if plan.mask != mask:
        raise InvalidPlanError("plan must cover exactly the members of the coalition")
    total = sum((problem.w(a) * (s + 1) for a, _, s in plan.slots), Fraction(0))
    if charge_machines:
        total += problem.machine_cost * plan.machines
    return total


def fixed_machine_cost(problem: QueueingProblem, S: CoalitionLike, k: int) -> Fraction:
    """Cost of ``S`` when forced onto exactly ``k`` machines.

    Extra machines beyond ``|S|`` sit idle but are paid for.  The empty
    coalition gets the bare machine bill ``k * b``.
    """
    if k < 1:
        raise ValueError("at least one machine is required")
    scale, w = _member_weights(problem, S)
    waiting = sum(ceil_div(i, k) * x for i, x in enumerate(w, 1))
    return k * problem.machine_cost + Fraction(waiting, scale)


def threshold(problem: QueueingProblem, S: CoalitionLike, k: int) -> Fraction:
    """Largest machine price at which ``k`` machines still beat ``k - 1``."""
    scale, w = _member_weights(problem, S)
    if not 2 <= k <= len(w):
        raise IndexError(f"k={k} outside 2..{len(w)}")
    extra = sum((ceil_div(i, k - 1) - ceil_div(i, k)) * w[i - 1]
                for i in range(k + 1, len(w) + 1))
    return Fraction(w[k - 1] + extra, scale)


@dataclass(frozen=True)
class ThresholdTable:
    """Threshold values ``r_S(k)`` for ``k = 2..|S|``."""

    coalition: int
    values: tuple[Fraction, ...]  # values[0] is k = 2

    def __getitem__(self, k: int) -> Fraction:
        if not 2 <= k < len(self.values) + 2:
            raise IndexError(k)
        return self.values[k - 2]

    def items(self):
        return ((k, v) for k, v in enumerate(self.values, 2))


def threshold_table(problem: QueueingProblem, S: CoalitionLike) -> ThresholdTable:
    mask = as_mask(S)
    size = len(members_of(mask))
    return ThresholdTable(mask, tuple(threshold(problem, mask, k) for k in range(2, size + 1)))


def optimal_machine_count(problem: QueueingProblem, S: CoalitionLike) -> int:
    """Optimal machine count for ``S``; ties go to the smaller count."""
    mask = as_mask(S)
    size = len(members_of(mask))
    if size == 0:
        raise ValueError("the empty coalition has no machine count")
    b = problem.machine_cost
    m = 1
    for k in range(2, size + 1):
        if threshold(problem, mask, k) > b:
            m = k
        else:
            break
    return m


def min_cost(problem: QueueingProblem, S: CoalitionLike) -> Fraction:
    """Stand-alone cost of ``S``: optimal machines and optimal queue."""
    mask = as_mask(S)
    if mask == 0:
        return Fraction(0)
    return fixed_machine_cost(problem, mask, optimal_machine_count(problem, mask))


def optimal_plan(problem: QueueingProblem, S: CoalitionLike, k: int | None = None
                 ) -> SchedulingPlan:
    """Rank-order plan on ``k`` machines (default: the optimal count)."""
    members = members_of(as_mask(S))
    if k is None:
        k = optimal_machine_count(problem, S)
    slots = tuple((a, p % k + 1, p // k) for p, a in enumerate(members))
    return SchedulingPlan(k, slots)


def is_semi_active(plan: SchedulingPlan) -> bool:
    """No idle gap on any machine and loads that differ by at most one."""
    if plan.has_gaps():
        return False
    loads = plan.loads()
    return max(loads) - min(loads) < 2


def _period_assignments(agents: tuple[int, ...], counts: list[int]):
    """Yield tuples of per-period agent sets with the given period sizes."""
    if not counts:
        yield ()
        return
    first, rest = counts[0], counts[1:]
    for chosen in combinations(agents, first):
        left = tuple(a for a in agents if a not in chosen)
        for tail in _period_assignments(left, rest):
            yield (chosen,) + tail


def brute_force_min_cost(problem: QueueingProblem, S: CoalitionLike, max_machines: int,
                         min_machines: int = 1, cap: int = ORACLE_CAP
                         ) -> tuple[Fraction, SchedulingPlan]:
    """Exhaustive minimum over semi-active plans with ``min..max`` machines.

    Semi-active plans on ``m`` machines fill every period but the last
    completely, so a plan is fixed (up to relabelling machines) by which
    members are served in each period.  Every such split is enumerated.
    """
    members = members_of(as_mask(S))
    if not members:
        raise ValueError("the empty coalition has nothing to schedule")
    if len(members) > cap:
        raise CapExceededError(f"brute force limited to {cap} agents, got {len(members)}")
    if max_machines < min_machines or min_machines < 1:
        raise ValueError("need 1 <= min_machines <= max_machines")

    # integer arithmetic on a common denominator keeps the inner loop cheap
    fracs = [problem.w(a) for a in members] + [problem.machine_cost]
    scale = math.lcm(*(f.denominator for f in fracs))
    wint = {a: int(problem.w(a) * scale) for a in members}
    bint = int(problem.machine_cost * scale)

    best = None
    best_split = None
    best_m = 0
    size = len(members)
    for m in range(min_machines, max_machines + 1):
        periods = (size + m - 1) // m  # kept independent of ceil_div
        counts = [m] * (periods - 1) + [size - m * (periods - 1)]
        for split in _period_assignments(members, counts):
            cost = m * bint
            for t, group in enumerate(split):
                for a in group:
                    cost += wint[a] * (t + 1)
            if best is None or cost < best:
                best, best_split, best_m = cost, split, m
    slots = tuple((a, k, t) for t, group in enumerate(best_split)
                  for k, a in enumerate(sorted(group), 1))
    return Fraction(best, scale), SchedulingPlan(best_m, slots)
