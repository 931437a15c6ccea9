from fractions import Fraction

import pytest
from hypothesis import given, settings

from endoq.games import (
    RearrangementVariant,
    brute_force_private_value,
    is_admissible_private,
    plan_value,
    private_requeueing_game,
    private_requeueing_plan,
    private_requeueing_value,
    queueing_cost_game,
)
from endoq.model import (
    CapExceededError,
    QueueingProblem,
    RequeueingProblem,
    SchedulingPlan,
    coalitions,
    full_mask,
    mask_of,
    members_of,
)
from endoq.scheduling import plan_cost

from conftest import example2, requeue_problems

T245 = mask_of([2, 4, 5])


@pytest.fixture(scope="module")
def games():
    rq = example2()
    return private_requeueing_game(rq, "swaps"), private_requeueing_game(rq, "no_swaps")


def test_variant_parsing():
    assert RearrangementVariant.parse("no-swaps") is RearrangementVariant.NO_SWAPS
    with pytest.raises(ValueError):
        RearrangementVariant.parse("shuffle")


def test_overtaking_plan_needs_swaps():
    rq = example2()
    plan = SchedulingPlan.from_sequences([[1, 4, 3], [2, 5]])
    assert is_admissible_private(rq, T245, plan, "swaps")
    assert not is_admissible_private(rq, T245, plan, "no_swaps")
    assert plan_value(rq, T245, plan) == 38


def test_plan_without_overtaking_fits_both_rules():
    rq = example2()
    plan = SchedulingPlan.from_sequences([[1, 2, 3], [4, 5]])
    for variant in ("swaps", "no_swaps"):
        assert is_admissible_private(rq, T245, plan, variant)
    assert plan_value(rq, T245, plan) == 36


def test_outsiders_keep_their_machine():
    rq = example2()
    # agent 1 is an outsider and may not be moved to the new machine
    plan = SchedulingPlan.from_sequences([[2, 3, 4], [1, 5]])
    assert not is_admissible_private(rq, T245, plan, "swaps")


@given(requeue_problems(max_n=4))
def test_doing_nothing_is_always_allowed(rq):
    for T in coalitions(rq.n):
        for variant in ("swaps", "no_swaps"):
            assert is_admissible_private(rq, T, rq.initial, variant)


@pytest.mark.parametrize("S, want", [
    ([2, 3, 4], 36), ([2, 3, 5], 25), ([3, 4, 5], 44), ([2, 3, 4, 5], 46),
    ([2, 4, 5], 38), ([1], 0), ([1, 2, 3, 4, 5], 46),
])
def test_worths_with_swaps(games, S, want):
    assert games[0][mask_of(S)] == want


def test_variants_agree_except_where_overtaking_helps(games):
    swaps, no_swaps = games
    differ = {members_of(S) for S in coalitions(5) if swaps[S] != no_swaps[S]}
    # agent 1 is served first on the only machine and adds nothing
    assert differ == {(2, 4, 5), (1, 2, 4, 5)}
    assert no_swaps[T245] == 36


def test_single_value_and_plan_agree():
    rq = example2()
    value, plan = private_requeueing_plan(rq, T245, "swaps")
    assert value == private_requeueing_value(rq, T245, "swaps") == 38
    assert is_admissible_private(rq, T245, plan, "swaps")
    assert plan_value(rq, T245, plan) == 38


def test_cap_is_enforced():
    q = QueueingProblem(tuple(range(10, 0, -1)), 1)
    rq = RequeueingProblem.from_order(q, 1, list(range(1, 11)))
    with pytest.raises(CapExceededError):
        private_requeueing_game(rq, "swaps")
    with pytest.raises(CapExceededError):
        private_requeueing_value(rq, 1, "swaps", cap=9)


@settings(max_examples=30)
@given(requeue_problems(max_n=3))
def test_solver_matches_exhaustive_search(rq):
    for T in coalitions(rq.n):
        for variant in ("swaps", "no_swaps"):
            assert (private_requeueing_value(rq, T, variant)
                    == brute_force_private_value(rq, T, variant)[0])


@pytest.mark.parametrize("variant", ["swaps", "no_swaps"])
def test_solver_matches_exhaustive_search_on_four_agents(variant):
    q = QueueingProblem((9, 6, 5, 2), Fraction(7, 2))
    rq = RequeueingProblem.from_order(q, 2, [4, 2, 3, 1])
    for S in ([1], [1, 4], [2, 3], [1, 2, 4]):
        T = mask_of(S)
        assert (private_requeueing_value(rq, T, variant)
                == brute_force_private_value(rq, T, variant)[0])


@given(requeue_problems(max_n=5))
def test_swaps_dominate_and_agree_on_everyone(rq):
    swaps = private_requeueing_game(rq, "swaps")
    no_swaps = private_requeueing_game(rq, "no_swaps")
    for T in coalitions(rq.n):
        assert 0 <= no_swaps[T] <= swaps[T]
    assert swaps.grand == no_swaps.grand


@given(requeue_problems(max_n=5))
def test_grand_coalition_reaches_the_queueing_optimum(rq):
    N = full_mask(rq.n)
    initial = plan_cost(rq.base, N, rq.initial)
    assert initial - private_requeueing_value(rq, N, "swaps") == queueing_cost_game(rq.base).grand


def test_cheap_machines_give_the_closed_form_worths():
    q = QueueingProblem((5, 4, 3), 2)
    rq = RequeueingProblem.from_order(q, 1, [1, 2, 3])
    game = private_requeueing_game(rq, "swaps")
    assert [game[S] for S in coalitions(3)] == [0, 2, 2, 4, 4, 6, 6]
    assert game.grand == Fraction(6)
