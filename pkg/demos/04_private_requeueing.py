"""Requeueing with private machines.

Five agents wait on one machine in weight order.  A coalition may buy
machines for its own members and reshuffle them, as long as no outsider
is pushed back.  With overtaking allowed ("swaps") the group {2,4,5}
saves 38; without it, 36.  Neither game has a core.
"""

from endoq.games import private_requeueing_game, private_requeueing_plan
from endoq.model import fmt, load_problem, mask_of
from endoq.solutions import core_nonempty
from endoq.verify import default_fixtures_dir

rq = load_problem(default_fixtures_dir() / "example2.json")
print("initial schedule:", rq.initial.sequences(), " machine price:", fmt(rq.b))

T = mask_of([2, 4, 5])
for variant in ("swaps", "no_swaps"):
    value, plan = private_requeueing_plan(rq, T, variant)
    print(f"{variant:>8}: V({{2,4,5}}) = {fmt(value)} via {plan.sequences()}")

print()
for variant in ("swaps", "no_swaps"):
    game = private_requeueing_game(rq, variant)
    cert = core_nonempty(game)
    parts = " + ".join(f"{w}*V{{{game.key(S)}}}" for S, w in cert.weights)
    print(f"{variant}: core {cert.verdict}")
    print(f"    {parts} = {fmt(cert.lhs)} > {fmt(cert.rhs)} = {cert.scale}*V(N)")
