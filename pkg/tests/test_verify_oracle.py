import random

from endoq.model import QueueingProblem
from endoq.oracle import (
    check_brute_force,
    check_monotonicity,
    check_reduced_concave,
    check_relaxed_convex,
    random_ordered_requeue,
    random_queue,
    run_oracle_checks,
)
from endoq.verify import CLAIMS, render_results, run_claims


def test_claim_names_are_unique_and_namespaced():
    names = [c.name for c in CLAIMS]
    assert len(names) == len(set(names))
    assert all(n.split(".")[0] in {"queue", "private", "public"} for n in names)


def test_selected_claims_run():
    results = run_claims(names=["private.swaps_values", "public.values"])
    assert [r.name for r in results] == ["private.swaps_values", "public.values"]
    assert all(r.passed for r in results)
    assert "2/2 claims hold" in render_results(results)


def test_missing_fixture_is_reported_per_claim(tmp_path):
    results = run_claims(tmp_path, names=["public.values"])
    assert not results[0].passed and results[0].error


def test_random_instances_are_seeded():
    a = [random_queue(random.Random(5), 5) for _ in range(3)]
    b = [random_queue(random.Random(5), 5) for _ in range(3)]
    assert a == b


def test_individual_checks_pass_on_the_four_agent_example():
    q = QueueingProblem((20, 15, 10, 5), 22)
    assert check_brute_force(q) is None
    assert check_monotonicity(q) is None
    assert check_reduced_concave(q) is None
    assert check_relaxed_convex(random_ordered_requeue(q)) is None


def test_default_seed_passes():
    report = run_oracle_checks(seed=1, instances=100, max_n=5)
    assert report.passed, report.render_text()
    assert set(report.checks.values()) == {100}
    assert report.minimal_failure() is None
