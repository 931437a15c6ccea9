"""Cost games of queueing from scratch."""

from __future__ import annotations

from fractions import Fraction

from ..model import (
    GameTable,
    QueueingProblem,
    complement_weight,
    full_mask,
    members_of,
)
from ..scheduling import min_cost, threshold


def queueing_cost_game(problem: QueueingProblem) -> GameTable:
    """Stand-alone cost of every coalition with its optimal machine count."""
    return GameTable.from_function("cost", problem.n, lambda S: min_cost(problem, S),
                                   labels=problem.labels)


def reduced_correction(problem: QueueingProblem, T: int) -> Fraction:
    """Sum over i < n - |T| of ``i`` times the (i+1)-th outsider weight."""
    size = len(members_of(T))
    return sum((i * complement_weight(problem, T, i + 1)
                for i in range(1, problem.n - size)), Fraction(0))


def reduced_cost_game(problem: QueueingProblem) -> GameTable:
    """Cost game lowered by the outsiders' rank-weighted waiting costs.

    Meant for machine prices high enough that every coalition runs a single
    machine (``b >= r(2)`` for the grand coalition).  Below that the table
    is still built but carries a warning.
    """
    warning = None
    if problem.n >= 2:
        r2 = threshold(problem, full_mask(problem.n), 2)
        if problem.machine_cost < r2:
            warning = (f"machine cost {problem.machine_cost} is below r(2) = {r2}; "
                       "coalitions may use several machines")
    return GameTable.from_function(
        "cost", problem.n,
        lambda T: min_cost(problem, T) - reduced_correction(problem, T),
        labels=problem.labels, warning=warning)
