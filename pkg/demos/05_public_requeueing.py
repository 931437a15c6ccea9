"""Requeueing with public machines.

A new machine serves the whole queue in priority order, and a sold
machine pays the coalition only its population share of the price.
First the reversed queue 4, 3, 2, 1, then a small instance where every
agent starts on their own machine.
"""

from endoq.games import (
    priority_order,
    public_requeueing_game,
    public_value_profile,
    relaxed_public_game,
)
from endoq.model import QueueingProblem, RequeueingProblem, fmt, load_problem, mask_of
from endoq.solutions import core_nonempty, is_convex
from endoq.verify import default_fixtures_dir

rq = load_problem(default_fixtures_dir() / "example3.json")
print("priority order:", priority_order(rq).order)
profile = public_value_profile(rq, mask_of([1, 4]), "swaps")
print("savings of {1,4} on 1..4 machines:", [fmt(v) for v in profile])
game = public_requeueing_game(rq, "swaps")
cert = core_nonempty(game)
parts = " + ".join(f"{w}*V{{{game.key(S)}}}" for S, w in cert.weights)
print(f"core {cert.verdict}: {parts} = {fmt(cert.lhs)} > {fmt(cert.rhs)}")

# two equal agents, each on their own machine: agent 1 can sell its
# machine, keep its seat and pocket half the price
print()
two = RequeueingProblem.from_order(QueueingProblem((3, 3), "5/2"), 2, [1, 2])
game = public_requeueing_game(two, "swaps")
print("own machines:", ", ".join(f"V{{{game.key(S)}}} = {fmt(v)}" for S, v in game.items()))
print("core", core_nonempty(game).verdict,
      "| relaxed game convex:", bool(is_convex(relaxed_public_game(two))))
