"""Closed-form core allocations and the machine-cost bounds that license them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..games.public import priority_order
from ..model import QueueingProblem, RequeueingProblem, fmt, full_mask
from ..scheduling import ceil_div, threshold


class HypothesisError(ValueError):
    """A closed form was requested outside the range where it is guaranteed."""

    def __init__(self, message: str, bounds: dict[str, Fraction]):
        detail = ", ".join(f"{k}={fmt(v)}" for k, v in bounds.items())
        super().__init__(f"{message} ({detail})")
        self.bounds = bounds


def _base(problem) -> QueueingProblem:
    return problem.base if isinstance(problem, RequeueingProblem) else problem


def half_rank(n: int) -> int:
    return ceil_div(n, 2)


def uniqueness_rank(n: int) -> int:
    return ceil_div(2 * n + 1, 4)


def single_machine_bound(problem) -> Fraction:
    """Machine cost above which no coalition leaves a single shared machine.

    Sum of ``(n - j) * w_j`` over the ``ceil(n/2)`` heaviest agents.
    """
    q = _base(problem)
    n = q.n
    return sum(((n - j) * q.w(j) for j in range(1, half_rank(n) + 1)), Fraction(0))


def theorem1_allocation(problem: QueueingProblem) -> tuple[Fraction, ...]:
    """``min(b + w_i, 2 w_i)`` for each agent; needs ``b <= w_mu``."""
    mu = half_rank(problem.n)
    if problem.b > problem.w(mu):
        raise HypothesisError("machine cost above the half-rank weight",
                              {"b": problem.b, f"w_{mu}": problem.w(mu)})
    return tuple(min(problem.b + w, 2 * w) for w in problem.weights)


def theorem1_uniqueness_check(problem: QueueingProblem) -> tuple[Fraction, ...]:
    """The single core point for small machine costs."""
    r = uniqueness_rank(problem.n)
    if problem.b > problem.w(r):
        raise HypothesisError("machine cost above the uniqueness weight",
                              {"b": problem.b, f"w_{r}": problem.w(r)})
    return tuple(min(problem.b + w, 2 * w) for w in problem.weights)


def theorem3_allocation(rq: RequeueingProblem) -> tuple[Fraction, ...]:
    """Everyone not served first buys their own machine: ``s0(i) w_i - b``."""
    if rq.b > rq.w(rq.n):
        raise HypothesisError("machine cost above the lightest weight",
                              {"b": rq.b, f"w_{rq.n}": rq.w(rq.n)})
    return tuple(rq.s0(i) * rq.w(i) - rq.b if rq.s0(i) else Fraction(0)
                 for i in range(1, rq.n + 1))


@dataclass
class BoundsReport:
    """Bound values for an instance and which guarantees they switch on.

    ``applies`` maps guarantee names to booleans:

    - ``allocation_small_cost``: ``b <= w_mu``, the min(b+w, 2w) point is in the core
    - ``unique_small_cost``: ``b <= w_r``, and that point is the whole core
    - ``concave_large_cost``: ``b >= sum (i-1) w_i``, reduced game concave, cores equal
    - ``empty_mid_cost``: ``r(2) <= b < sum (i-1) w_i``, core empty
    - ``requeue_allocation_small_cost``: ``b <= w_n``, closed form in both private cores
    - ``private_single_machine``: ``m0 = 1`` and ``b`` at least the single-machine bound
    - ``public_optimal_order``: initial priority follows weights, public cores nonempty
    - ``public_everyone_first``: ``m0 = n``, public cores nonempty
    """

    b: Fraction
    bounds: dict[str, Fraction]
    applies: dict[str, bool]
    flags: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def holding(self) -> list[str]:
        return [k for k, v in self.applies.items() if v]

    def to_dict(self) -> dict:
        return {
            "machine_cost": fmt(self.b),
            "bounds": {k: fmt(v) for k, v in self.bounds.items()},
            "applies": dict(self.applies),
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }


def theorem_bounds(problem: QueueingProblem | RequeueingProblem) -> BoundsReport:
    q = _base(problem)
    n, b = q.n, q.b
    mu, r = half_rank(n), uniqueness_rank(n)
    bounds = {
        "w_half_rank": q.w(mu),
        "w_uniqueness_rank": q.w(r),
        "w_last": q.w(n),
        "sum_rank_weight": sum(((i - 1) * q.w(i) for i in range(1, n + 1)), Fraction(0)),
        "single_machine_bound": single_machine_bound(q),
    }
    if n >= 2:
        bounds["second_machine_threshold"] = threshold(q, full_mask(n), 2)
    report = BoundsReport(b, bounds, {})
    report.notes.append("single_machine_bound is sum_{j<=ceil(n/2)} (n-j) w_j")
    if isinstance(problem, RequeueingProblem):
        # queueing-game guarantees do not speak about requeueing games
        optimal = priority_order(problem).is_optimal(problem)
        report.flags = {"optimal_order": optimal, "everyone_first": problem.m0 == n}
        report.applies = {
            "requeue_allocation_small_cost": b <= bounds["w_last"],
            "private_single_machine": problem.m0 == 1 and b >= bounds["single_machine_bound"],
            "public_optimal_order": optimal,
            "public_everyone_first": problem.m0 == n,
        }
        return report
    report.applies = {
        "allocation_small_cost": b <= bounds["w_half_rank"],
        "unique_small_cost": b <= bounds["w_uniqueness_rank"],
        "concave_large_cost": b >= bounds["sum_rank_weight"],
        "empty_mid_cost": (n >= 2 and bounds["second_machine_threshold"] <= b
                           < bounds["sum_rank_weight"]),
    }
    return report
