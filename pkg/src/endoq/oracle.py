"""Seeded randomized cross-checks between closed forms and brute force.

Functions under test are looked up through their modules at call time,
so a patched module attribute (a mutation) is what actually gets checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import scheduling
from .games import public as public_games
from .games import queueing as queueing_games
from .model import QueueingProblem, RequeueingProblem, coalitions, fmt, members_of, problem_to_dict
from .solutions import core as core_mod

MAX_WEIGHT = 20


@dataclass
class Failure:
    check: str
    problem: QueueingProblem | RequeueingProblem
    detail: str

    def size(self) -> tuple:
        base = self.problem.base if isinstance(self.problem, RequeueingProblem) else self.problem
        return (base.n, sum(base.weights), base.machine_cost)

    def to_dict(self) -> dict:
        return {"check": self.check, "detail": self.detail, "problem": problem_to_dict(self.problem)}


@dataclass
class OracleReport:
    seed: int
    instances: int
    max_n: int
    checks: dict[str, int] = field(default_factory=dict)  # check name -> instances run
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def minimal_failure(self) -> Failure | None:
        return min(self.failures, key=Failure.size) if self.failures else None

    def to_dict(self) -> dict:
        out: dict = {"seed": self.seed, "instances": self.instances, "max_n": self.max_n,
                     "checks": dict(self.checks), "passed": self.passed,
                     "failures": len(self.failures)}
        worst = self.minimal_failure()
        if worst is not None:
            out["minimal_failure"] = worst.to_dict()
        return out

    def render_text(self) -> str:
        lines = [f"seed {self.seed}, {self.instances} instances, n <= {self.max_n}"]
        for name, count in self.checks.items():
            bad = sum(f.check == name for f in self.failures)
            lines.append(f"  {'FAIL' if bad else 'PASS'}  {name}: {count - bad}/{count}")
        worst = self.minimal_failure()
        if worst is not None:
            lines.append(f"smallest failing instance ({worst.check}): {worst.detail}")
            lines.append(f"  {problem_to_dict(worst.problem)}")
        return "\n".join(lines)


def random_weights(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(sorted((rng.randint(1, MAX_WEIGHT) for _ in range(n)), reverse=True))


def crossing_cost(rng: random.Random, problem: QueueingProblem) -> Fraction:
    """A machine cost at, just below or just above some threshold."""
    points = [Fraction(0)]
    for S in coalitions(problem.n):
        for k in range(2, len(members_of(S)) + 1):
            points.append(scheduling.threshold(problem, S, k))
    b = rng.choice(points) + rng.choice([Fraction(-1, 2), Fraction(0), Fraction(1, 2)])
    return max(b, Fraction(0))


def random_queue(rng: random.Random, max_n: int) -> QueueingProblem:
    q = QueueingProblem(random_weights(rng, rng.randint(1, max_n)), 0)
    return q.with_machine_cost(crossing_cost(rng, q))


# -- individual checks: return a failure description or None ---------------

def check_brute_force(q: QueueingProblem) -> str | None:
    """Exhaustive semi-active minimum equals the closed form, lowest k agrees."""
    for S in coalitions(q.n):
        size = len(members_of(S))
        best_cost, plan = scheduling.brute_force_min_cost(q, S, size)
        closed = min(scheduling.fixed_machine_cost(q, S, k) for k in range(1, size + 1))
        m = scheduling.optimal_machine_count(q, S)
        if best_cost != closed or plan.machines != m:
            return (f"S={q.label_of(S)}: brute force {fmt(best_cost)} on {plan.machines}, "
                    f"closed form {fmt(closed)} with m={m}")
    return None


def check_monotonicity(q: QueueingProblem) -> str | None:
    """Threshold and machine-count monotonicity over all coalition pairs."""
    n = q.n
    r = {S: [scheduling.threshold(q, S, k) for k in range(2, len(members_of(S)) + 1)]
         for S in coalitions(n)}
    m = {S: scheduling.optimal_machine_count(q, S) for S in coalitions(n)}
    for S, vals in r.items():
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            return f"r_{{{q.label_of(S)}}} increases in k"
    for T in coalitions(n):
        S = (T - 1) & T
        while S:
            if any(a > b for a, b in zip(r[S], r[T])):
                return f"r_{{{q.label_of(S)}}} exceeds r_{{{q.label_of(T)}}}"
            if m[S] > m[T]:
                return f"m({q.label_of(S)}) > m({q.label_of(T)})"
            S = (S - 1) & T
    for S in range(0, 1 << n):
        outside = [i for i in range(1, n + 1) if not S >> (i - 1) & 1]
        for a in outside:
            for b in outside:
                if a > b and m[S | 1 << (a - 1)] > m[S | 1 << (b - 1)]:
                    return f"adding {a} to {{{q.label_of(S)}}} needs more machines than adding {b}"
    return None


def check_reduced_concave(q: QueueingProblem) -> str | None:
    """Above the rank-weight bound the reduced game is concave."""
    bound = sum((i - 1) * w for i, w in enumerate(q.weights, 1))
    qb = q.with_machine_cost(max(q.b, bound))
    res = core_mod.is_concave(queueing_games.reduced_cost_game(qb))
    if not res:
        return f"not concave at b={fmt(qb.b)}, witness {res.witness}"
    return None


def check_relaxed_convex(rq: RequeueingProblem) -> str | None:
    """A weight-ordered queue on one initial machine gives a convex relaxed game.

    Only single-machine starts are drawn: with two or more initial
    machines every coalition can pocket a full sale price, and convexity
    already fails for two agents on their own machines.
    """
    res = core_mod.is_convex(public_games.relaxed_public_game(rq))
    if not res:
        return f"not convex, witness {res.witness}"
    return None


def random_ordered_requeue(q: QueueingProblem, m0: int = 1) -> RequeueingProblem:
    return RequeueingProblem.from_order(q, m0, list(range(1, q.n + 1)))


def run_oracle_checks(seed: int = 1, instances: int = 100, max_n: int = 5) -> OracleReport:
    rng = random.Random(seed)
    report = OracleReport(seed, instances, max_n)
    checks = [
        ("brute_force_equivalence", check_brute_force, False),
        ("threshold_and_machine_monotonicity", check_monotonicity, False),
        ("reduced_game_concave", check_reduced_concave, False),
        ("relaxed_public_convex", check_relaxed_convex, True),
    ]
    for name, _, _ in checks:
        report.checks[name] = 0
    for _ in range(instances):
        q = random_queue(rng, max_n)
        rq = random_ordered_requeue(q)
        for name, fn, needs_requeue in checks:
            problem = rq if needs_requeue else q
            report.checks[name] += 1
            detail = fn(problem)
            if detail is not None:
                report.failures.append(Failure(name, problem, detail))
    return report
