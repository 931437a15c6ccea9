"""Golden claims about the three shipped example instances.

Every claim loads its instance from a fixture file, so a perturbed copy
of the fixture directory shows exactly which claims depend on which
numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from .games import (
    is_admissible_private,
    priority_order,
    private_requeueing_game,
    public_requeue_grid,
    public_requeueing_game,
    public_value_profile,
    queueing_cost_game,
    reduced_cost_game,
    relaxed_public_game,
    relaxed_public_value,
    public_value_fixed,
)
from .model import (
    QueueingProblem,
    RequeueingProblem,
    SchedulingPlan,
    fmt,
    full_mask,
    load_problem,
    mask_of,
)
from .scheduling import is_semi_active, optimal_machine_count, threshold
from .solutions import (
    balanced_contradiction,
    classify_regimes,
    core_extent,
    core_nonempty,
    is_concave,
    is_convex,
    is_in_core,
    theorem1_allocation,
    theorem_bounds,
    verify_certificate,
)

FIXTURES = ("example1", "example2", "example3")


def default_fixtures_dir() -> Path:
    return Path(str(resources.files("endoq") / "fixtures"))


@dataclass
class ClaimResult:
    name: str
    fixture: str
    statement: str
    passed: bool
    computed: str
    error: str | None = None

    def to_dict(self) -> dict:
        out = {"claim": self.name, "fixture": self.fixture, "statement": self.statement,
               "passed": self.passed, "computed": self.computed}
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class Claim:
    name: str
    fixture: str
    statement: str
    check: Callable[[object], tuple[bool, str]]


CLAIMS: list[Claim] = []


def claim(name: str, fixture: str, statement: str):
    def register(fn):
        CLAIMS.append(Claim(name, fixture, statement, fn))
        return fn
    return register


def _show(values) -> str:
    return "(" + ", ".join(fmt(Fraction(v)) for v in values) + ")"


def _eq(got, want) -> tuple[bool, str]:
    text = _show(got) if isinstance(got, (tuple, list)) else (
        fmt(got) if isinstance(got, Fraction) else str(got))
    return got == want, text


# -- first instance: plain queueing, machine cost varies --------------------

@claim("queue.threshold_grand_2", "example1", "r_N(2) = 35")
def _(q):
    return _eq(threshold(q, full_mask(q.n), 2), 35)


@claim("queue.machines_grand_b30", "example1", "m(N) = 2 at b = 30")
def _(q):
    return _eq(optimal_machine_count(q.with_machine_cost(30), full_mask(q.n)), 2)


@claim("queue.machines_124_b17", "example1", "m({1,2,4}) = 2 at b = 17")
def _(q):
    return _eq(optimal_machine_count(q.with_machine_cost(17), mask_of([1, 2, 4])), 2)


@claim("queue.pair_costs_b22", "example1", "C({i,j}) = b + w_i + 2 w_j for i in {1,2}, j in {3,4} at b = 22")
def _(q):
    g = queueing_cost_game(q.with_machine_cost(22))
    got = [g[mask_of([i, j])] for i in (1, 2) for j in (3, 4)]
    want = [22 + q.w(i) + 2 * q.w(j) for i in (1, 2) for j in (3, 4)]
    return _eq(got, want)


@claim("queue.witness_b22", "example1", "(b+15, b+10, 25, 15) is in the core at b = 22")
def _(q):
    y = (37, 32, 25, 15)
    return is_in_core(queueing_cost_game(q.with_machine_cost(22)), y), _show(y)


@claim("queue.witness_half_b12", "example1", "b/2 + (25, 20, 15, 5) is in the core at b = 12")
def _(q):
    y = (31, 26, 21, 11)
    return is_in_core(queueing_cost_game(q.with_machine_cost(12)), y), _show(y)


@claim("queue.small_cost_allocation_b12", "example1", "min(b + w_i, 2 w_i) = (32, 27, 20, 10) at b = 12, in the core")
def _(q):
    q12 = q.with_machine_cost(12)
    y = theorem1_allocation(q12)
    return y == (32, 27, 20, 10) and is_in_core(queueing_cost_game(q12), y), _show(y)


@claim("queue.empty_b40", "example1", "core empty at b = 40")
def _(q):
    g = queueing_cost_game(q.with_machine_cost(40))
    cert = core_nonempty(g)
    return not cert.nonempty and verify_certificate(g, cert), cert.verdict


@claim("queue.nonempty_b12", "example1", "core nonempty at b = 12")
def _(q):
    g = queueing_cost_game(q.with_machine_cost(12))
    cert = core_nonempty(g)
    return cert.nonempty and verify_certificate(g, cert), cert.verdict


@claim("queue.reduced_concave_b50", "example1", "reduced game concave at b = 50")
def _(q):
    return bool(is_concave(reduced_cost_game(q.with_machine_cost(50)))), "checked"


@claim("queue.bound_values", "example1", "membership bound 15, uniqueness bound 10, concavity bound 50, emptiness from 35")
def _(q):
    bd = theorem_bounds(q).bounds
    got = (bd["w_half_rank"], bd["w_uniqueness_rank"], bd["sum_rank_weight"],
           bd["second_machine_threshold"])
    return _eq(got, (15, 10, 50, 35))


@lru_cache(maxsize=8)
def _regimes(q: QueueingProblem):
    return classify_regimes(q)


def _verdicts(report, lo, hi, lo_closed, hi_closed) -> set[str]:
    """Verdicts of every region meeting the interval (``hi=None`` is infinity)."""
    seen = set()
    for r in report.regions:
        if hi is not None and (r.lo > hi or (r.lo == hi and not (r.lo_closed and hi_closed))):
            continue
        if r.hi is not None and (r.hi < lo or (r.hi == lo and not (r.hi_closed and lo_closed))):
            continue
        seen.add(r.verdict)
    return seen


def _regime_claim(name, statement, lo, hi, lo_closed, hi_closed, allowed):
    @claim(name, "example1", statement)
    def _(q):
        seen = _verdicts(_regimes(q), Fraction(lo),
                         None if hi is None else Fraction(hi), lo_closed, hi_closed)
        return bool(seen) and seen <= allowed, ",".join(sorted(seen))


_regime_claim("queue.regime_unique_0_10", "core is the single point min(b+w_i, 2w_i) on [0, 10]",
              0, 10, True, True, {"unique"})
_regime_claim("queue.regime_multiple_10_15", "core has several points on (10, 15]",
              10, 15, False, True, {"multiple"})
_regime_claim("queue.regime_empty_15_20", "core empty on (15, 20)",
              15, 20, False, False, {"empty"})
_regime_claim("queue.regime_nonempty_20_25", "core nonempty on [20, 25]",
              20, 25, True, True, {"unique", "multiple"})
_regime_claim("queue.regime_empty_25_35", "core empty on (25, 35)",
              25, 35, False, False, {"empty"})
_regime_claim("queue.regime_empty_35_50", "core empty on [35, 50)",
              35, 50, True, False, {"empty"})
_regime_claim("queue.regime_nonempty_50_inf", "core nonempty on [50, inf)",
              50, None, True, False, {"unique", "multiple"})


@claim("queue.regime_witness_20_25", "example1", "(b+15, b+10, 25, 15) in the core for b in [20, 25]")
def _(q):
    bs = [Fraction(20), Fraction(45, 2), Fraction(25)]
    ok = all(is_in_core(queueing_cost_game(q.with_machine_cost(b)), (b + 15, b + 10, 25, 15))
             for b in bs)
    return ok, "b in " + _show(bs)


@claim("queue.regime_small_cost_point", "example1", "min(b+w_i, 2w_i) is the whole core for b in [0, 10]")
def _(q):
    for b in (Fraction(0), Fraction(5), Fraction(10)):
        qb = q.with_machine_cost(b)
        y = tuple(min(b + w, 2 * w) for w in q.weights)
        ext = core_extent(queueing_cost_game(qb))
        if ext is None or any(lo != yi or hi != yi for (lo, hi), yi in zip(ext, y)):
            return False, f"b={fmt(b)}"
    return True, "b in (0, 5, 10)"


def _machines_claim(name, statement, samples, expected):
    @claim(name, "example1", statement)
    def _(q):
        for b in samples:
            qb = q.with_machine_cost(b)
            for S in range(1, 1 << q.n):
                want = expected.get(S, 1)
                got = optimal_machine_count(qb, S)
                if got != want:
                    return False, f"b={fmt(Fraction(b))}: m({qb.label_of(S)})={got}"
        return True, "all coalitions"


_machines_claim("queue.machines_20_35",
                "m({1,2,3}) = m(N) = 2 and m(S) = 1 otherwise on [20, 35)",
                [Fraction(20), Fraction(45, 2), Fraction(25), Fraction(30), Fraction(69, 2)],
                {mask_of([1, 2, 3]): 2, mask_of([1, 2, 3, 4]): 2})
_machines_claim("queue.machines_15_20",
                "on (15, 20) also m({1,2,4}) = 2",
                [Fraction(16), Fraction(35, 2), Fraction(19)],
                {mask_of([1, 2, 3]): 2, mask_of([1, 2, 3, 4]): 2, mask_of([1, 2, 4]): 2})


# -- second instance: private requeueing -----------------------------------

_SWAP_VALUES = {(2, 3, 4): 36, (2, 3, 5): 25, (3, 4, 5): 44, (2, 3, 4, 5): 46, (2, 4, 5): 38}
_FOUR = [(2, 3, 4), (2, 3, 5), (3, 4, 5), (2, 4, 5)]


@claim("private.swaps_values", "example2", "V_s: {2,3,4}=36, {2,3,5}=25, {3,4,5}=44, {2,3,4,5}=46, {2,4,5}=38")
def _(rq):
    g = private_requeueing_game(rq, "swaps")
    got = [g[mask_of(S)] for S in _SWAP_VALUES]
    return _eq(got, list(_SWAP_VALUES.values()))


@claim("private.no_swaps_245", "example2", "V_ns({2,4,5}) = 36")
def _(rq):
    return _eq(private_requeueing_game(rq, "no_swaps")[mask_of([2, 4, 5])], 36)


@claim("private.variants_agree_elsewhere", "example2",
       "V_ns = V_s on every coalition other than {2,4,5}")
def _(rq):
    gs = private_requeueing_game(rq, "swaps")
    gn = private_requeueing_game(rq, "no_swaps")
    special = mask_of([2, 4, 5])
    diff = [rq.base.label_of(S) for S in range(1, 1 << rq.n)
            if gs[S] != gn[S] and S != special]
    return not diff, "differ on " + (";".join(diff) or "{2,4,5} only")


@claim("private.dummy_first_agent", "example2", "V({1}) = 0 and adding agent 1 never changes a value")
def _(rq):
    g = private_requeueing_game(rq, "swaps")
    ok = g[1] == 0 and all(g[S | 1] == g[S] for S in range(2, 1 << rq.n, 2))
    return ok, fmt(g[1])


@claim("private.plan_admissibility", "example2",
       "[1,4,3 | 2,5] is admissible for {2,4,5} with swaps and not without")
def _(rq):
    plan = SchedulingPlan.from_sequences([[1, 4, 3], [2, 5]])
    T = mask_of([2, 4, 5])
    s, ns = is_admissible_private(rq, T, plan, "swaps"), is_admissible_private(rq, T, plan, "no_swaps")
    return s and not ns, f"swaps={s}, no_swaps={ns}"


def _private_empty(variant, lhs_want):
    @claim(f"private.core_empty_{variant}", "example2",
           f"core of V_{'s' if variant == 'swaps' else 'ns'} empty: four 3-sets give {lhs_want} > 138")
    def _(rq):
        g = private_requeueing_game(rq, variant)
        cert = core_nonempty(g)
        weights = {mask_of(S): 1 for S in _FOUR}
        weights[mask_of([1])] = 3  # the dummy completes the cover
        lhs, rhs, _scale = balanced_contradiction(g, weights)
        ok = (not cert.nonempty and verify_certificate(g, cert)
              and lhs == lhs_want and rhs == 138)
        return ok, f"{fmt(lhs)} > {fmt(rhs)}"


_private_empty("swaps", 143)
_private_empty("no_swaps", 141)


@claim("private.optimal_order_relaxed_convex", "example2", "relaxed public game convex for a weight-ordered queue")
def _(rq):
    return bool(is_convex(relaxed_public_game(rq))), "checked"


@claim("private.two_machine_priority", "example2", "[1,3,5 | 2,4] induces priority 1,2,3,4,5")
def _(rq):
    two = RequeueingProblem(rq.base, SchedulingPlan.from_sequences([[1, 3, 5], [2, 4]]))
    return _eq(priority_order(two).order, (1, 2, 3, 4, 5))


@claim("private.grid_two_machines", "example2", "priority 1..5 on two machines deals [1,3,5 | 2,4]")
def _(rq):
    grid = public_requeue_grid(priority_order(rq), 2).sequences()
    return grid == [[1, 3, 5], [2, 4]], str(grid)


@claim("private.semi_active_loads", "example2", "loads 3 and 1 are not semi-active")
def _(rq):
    return not is_semi_active(SchedulingPlan.from_sequences([[1, 2, 3], [4]])), "checked"


@claim("private.relaxed_dominates", "example2",
       "weight-ordered queue: relaxed value >= public value for every coalition and k, equal on N")
def _(rq):
    for S in range(1, 1 << rq.n):
        prof = public_value_profile(rq, S, "swaps")
        for k, v in enumerate(prof, 1):
            rv = relaxed_public_value(rq, S, k)
            if rv < v or (S == full_mask(rq.n) and rv != v):
                return False, f"{rq.base.label_of(S)}, k={k}"
    return True, "checked"


# -- third instance: public requeueing ---------------------------------------

@claim("public.priority", "example3", "priority order is (4, 3, 2, 1) and it is not weight-ordered")
def _(rq):
    pi = priority_order(rq)
    return pi.order == (4, 3, 2, 1) and not pi.is_optimal(rq), str(pi.order)


@claim("public.grid_two", "example3", "on two machines 4,3 start at 0 and 2,1 at 1")
def _(rq):
    starts = public_requeue_grid(priority_order(rq), 2).starts()
    return _eq(tuple(starts[a] for a in (4, 3, 2, 1)), (0, 0, 1, 1))


@claim("public.profile_14", "example3", "{1,4} saves 36, 23 and -6 with 1, 2 and 4 machines")
def _(rq):
    got = tuple(public_value_fixed(rq, mask_of([1, 4]), k, "swaps") for k in (1, 2, 4))
    return _eq(got, (36, 23, -6))


@claim("public.values", "example3", "V: {1,4}=36, {2,4}=12, {3,4}=5, {1,2,3}=31, N=37")
def _(rq):
    g = public_requeueing_game(rq, "swaps")
    coals = [(1, 4), (2, 4), (3, 4), (1, 2, 3), (1, 2, 3, 4)]
    return _eq([g[mask_of(S)] for S in coals], [36, 12, 5, 31, 37])


@claim("public.core_empty", "example3", "core empty: {1,4}+{2,4}+{3,4}+2{1,2,3} = 115 > 111")
def _(rq):
    g = public_requeueing_game(rq, "swaps")
    cert = core_nonempty(g)
    weights = {mask_of([1, 4]): 1, mask_of([2, 4]): 1, mask_of([3, 4]): 1, mask_of([1, 2, 3]): 2}
    lhs, rhs, _scale = balanced_contradiction(g, weights)
    ok = not cert.nonempty and verify_certificate(g, cert) and (lhs, rhs) == (115, 111)
    return ok, f"{fmt(lhs)} > {fmt(rhs)}"


def run_claims(fixtures_dir: str | Path | None = None,
               names: list[str] | None = None) -> list[ClaimResult]:
    base = Path(fixtures_dir) if fixtures_dir else default_fixtures_dir()
    problems: dict[str, object] = {}
    results = []
    for c in CLAIMS:
        if names and c.name not in names:
            continue
        try:
            if c.fixture not in problems:
                problems[c.fixture] = load_problem(base / f"{c.fixture}.json")
            passed, computed = c.check(problems[c.fixture])
            results.append(ClaimResult(c.name, c.fixture, c.statement, bool(passed), computed))
        except Exception as exc:  # a broken fixture must localize, not abort the run
            results.append(ClaimResult(c.name, c.fixture, c.statement, False, "",
                                       f"{type(exc).__name__}: {exc}"))
    return results


def render_results(results: list[ClaimResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        detail = r.error or r.computed
        lines.append(f"{mark}  {r.name:<{width}}  [{r.fixture}] {r.statement}  -> {detail}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} claims hold")
    return "\n".join(lines)
