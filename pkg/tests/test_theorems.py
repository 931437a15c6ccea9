from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endoq.games import private_requeueing_game, queueing_cost_game
from endoq.model import QueueingProblem, RequeueingProblem, coalitions, members_of
from endoq.solutions.theorems import half_rank, single_machine_bound, uniqueness_rank
from endoq.solutions import (
    HypothesisError,
    core_is_singleton,
    is_in_core,
    theorem1_allocation,
    theorem1_uniqueness_check,
    theorem3_allocation,
    theorem_bounds,
)

from conftest import example1, example2, example3, queue_problems, weights


def test_ranks():
    assert [half_rank(n) for n in range(1, 7)] == [1, 1, 2, 2, 3, 3]
    assert [uniqueness_rank(n) for n in range(1, 7)] == [1, 2, 2, 3, 3, 4]


@pytest.mark.parametrize("b, y", [(12, (32, 27, 20, 10)), (10, (30, 25, 20, 10)),
                                  (0, (20, 15, 10, 5))])
def test_small_cost_allocation(b, y):
    q = example1(b)
    assert theorem1_allocation(q) == y
    assert is_in_core(queueing_cost_game(q), y)


def test_small_cost_allocation_refuses_above_the_bound():
    with pytest.raises(HypothesisError) as info:
        theorem1_allocation(example1(16))
    assert info.value.bounds["w_2"] == 15


def test_unique_point():
    assert theorem1_uniqueness_check(example1(5)) == (25, 20, 15, 10)
    q = QueueingProblem((7, 3), 2)
    assert theorem1_uniqueness_check(q) == (9, 5)
    with pytest.raises(HypothesisError):
        theorem1_uniqueness_check(example1(15))


def test_requeue_allocation():
    rq = RequeueingProblem.from_order(QueueingProblem((5, 4, 3), 2), 1, [1, 2, 3])
    y = theorem3_allocation(rq)
    assert y == (0, 2, 4)
    for variant in ("swaps", "no_swaps"):
        assert is_in_core(private_requeueing_game(rq, variant), y)
    tight = RequeueingProblem.from_order(QueueingProblem((3, 1), 1), 1, [1, 2])
    assert theorem3_allocation(tight) == (0, 0)
    spread = RequeueingProblem.from_order(QueueingProblem((3, 2, 1), 1), 3, [1, 2, 3])
    assert theorem3_allocation(spread) == (0, 0, 0)
    with pytest.raises(HypothesisError):
        theorem3_allocation(example2())


def test_bounds_of_the_four_agent_example():
    report = theorem_bounds(example1(12))
    assert report.bounds["w_half_rank"] == 15
    assert report.bounds["w_uniqueness_rank"] == 10
    assert report.bounds["sum_rank_weight"] == 50
    assert report.bounds["second_machine_threshold"] == 35
    assert report.bounds["single_machine_bound"] == 3 * 20 + 2 * 15
    assert report.holding() == ["allocation_small_cost"]
    assert theorem_bounds(example1(10)).holding() == ["allocation_small_cost", "unique_small_cost"]
    assert theorem_bounds(example1(35)).holding() == ["empty_mid_cost"]
    assert theorem_bounds(example1(50)).holding() == ["concave_large_cost"]
    assert "bounds" in report.to_dict()


def test_bounds_of_the_requeueing_examples():
    two = theorem_bounds(example2())
    assert two.holding() == ["public_optimal_order"]
    assert two.bounds["single_machine_bound"] == 4 * 20 + 3 * 15 + 2 * 13
    three = theorem_bounds(example3())
    assert not three.flags["optimal_order"]
    assert three.holding() == []


def test_single_machine_bound_of_one_agent():
    assert single_machine_bound(QueueingProblem((4,), 1)) == 0


@given(queue_problems(max_n=6), st.data())
def test_small_cost_allocation_is_in_core(q, data):
    q = q.with_machine_cost(data.draw(st.fractions(0, q.w(half_rank(q.n)))))
    assert is_in_core(queueing_cost_game(q), theorem1_allocation(q))


@given(weights(max_n=5), st.data())
def test_unique_point_is_the_whole_core(ws, data):
    q = QueueingProblem(ws, 0)
    q = q.with_machine_cost(data.draw(st.fractions(0, q.w(uniqueness_rank(q.n)))))
    y = theorem1_uniqueness_check(q)
    game = queueing_cost_game(q)
    assert is_in_core(game, y) and core_is_singleton(game)


@given(queue_problems(max_n=4), st.data())
def test_requeue_worths_have_closed_form_for_cheap_machines(q, data):
    q = q.with_machine_cost(data.draw(st.fractions(0, q.w(q.n))))
    order = data.draw(st.permutations(range(1, q.n + 1)))
    rq = RequeueingProblem.from_order(q, data.draw(st.integers(1, q.n)), order)
    y = theorem3_allocation(rq)
    for variant in ("swaps", "no_swaps"):
        game = private_requeueing_game(rq, variant)
        assert is_in_core(game, y)
        for S in coalitions(q.n):
            assert game[S] == sum((y[i - 1] for i in members_of(S)), Fraction(0))
