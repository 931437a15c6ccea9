from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endoq.games import queueing_cost_game, reduced_correction, reduced_cost_game
from endoq.model import coalitions, full_mask, mask_of, members_of
from endoq.scheduling import brute_force_min_cost

from conftest import example1, queue_problems


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("j", [3, 4])
def test_pairs_share_one_machine(i, j):
    q = example1(22)
    assert queueing_cost_game(q)[mask_of([i, j])] == 22 + q.w(i) + 2 * q.w(j)


def test_singletons_and_grand_coalition():
    game = queueing_cost_game(example1(30))
    assert [game[mask_of([i])] for i in range(1, 5)] == [50, 45, 40, 35]
    assert game.grand == 125
    assert game.kind == "cost"


@given(queue_problems(max_n=5))
def test_cost_game_matches_exhaustive_schedules(q):
    game = queueing_cost_game(q)
    for S in coalitions(q.n):
        assert game[S] == brute_force_min_cost(q, S, len(members_of(S)))[0]


@given(queue_problems(max_n=5), st.data())
def test_cost_game_is_subadditive(q, data):
    game = queueing_cost_game(q)
    S = data.draw(st.integers(1, full_mask(q.n)))
    T = data.draw(st.integers(1, full_mask(q.n))) & ~S
    if T:
        assert game[S | T] <= game[S] + game[T]


def test_reduced_game_of_a_lone_light_agent():
    q = example1(50)
    assert reduced_correction(q, mask_of([4])) == 15 + 20
    assert reduced_cost_game(q)[mask_of([4])] == 20
    assert reduced_cost_game(q).warning is None


def test_reduced_game_equals_cost_game_on_large_coalitions():
    q = example1(50)
    C, R = queueing_cost_game(q), reduced_cost_game(q)
    for S in coalitions(4):
        if len(members_of(S)) >= 3:
            assert R[S] == C[S]
    assert R.grand == 50 + sum(i * w for i, w in enumerate(q.weights, 1))


def test_reduced_game_warns_below_second_machine_threshold():
    assert reduced_cost_game(example1(34)).warning
    assert reduced_cost_game(example1(35)).warning is None


@given(queue_problems(min_n=2, max_n=6), st.data())
def test_reduced_marginals_on_one_machine(q, data):
    bound = sum((i - 1) * w for i, w in enumerate(q.weights, 1))
    q = q.with_machine_cost(bound + data.draw(st.fractions(0, 10)))
    R = reduced_cost_game(q)
    k = data.draw(st.integers(1, q.n))
    T = data.draw(st.integers(1, full_mask(q.n))) & ~(1 << (k - 1))
    if T:
        tail = sum((q.w(i) for i in range(k + 1, q.n + 1)), Fraction(0))
        assert R[T | 1 << (k - 1)] - R[T] == tail + k * q.w(k)
