"""Sharing the cost of a queue.

Every coalition can run its own optimal queue, which gives a cost game.
The core asks for a split of the grand coalition's cost that no group
would walk away from.  The solver either returns such a split or a
weighted family of coalitions proving none exists; both are re-checked
with plain arithmetic.
"""

from endoq.games import queueing_cost_game
from endoq.model import QueueingProblem, fmt
from endoq.solutions import core_extent, core_nonempty, theorem_bounds, verify_certificate

base = QueueingProblem((20, 15, 10, 5), 0)

for b in (5, 12, 22, 30, 40, 50):
    q = base.with_machine_cost(b)
    game = queueing_cost_game(q)
    cert = core_nonempty(game)
    assert verify_certificate(game, cert)
    print(f"b = {b}: C(N) = {fmt(game.grand)}, core {cert.verdict}")
    if cert.nonempty:
        alloc = ", ".join(fmt(x) for x in cert.allocation)
        ranges = ", ".join(f"[{fmt(lo)}, {fmt(hi)}]" for lo, hi in core_extent(game))
        print(f"    one core split: ({alloc})")
        print(f"    each agent's range over the core: {ranges}")
    else:
        parts = " + ".join(f"{w}*C{{{game.key(S)}}}" for S, w in cert.weights)
        print(f"    {parts} = {fmt(cert.lhs)} < {fmt(cert.rhs)} = {cert.scale}*C(N)")
    held = theorem_bounds(q).holding()
    print(f"    guarantees in force: {', '.join(held) or 'none'}")
