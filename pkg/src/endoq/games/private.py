"""Private requeueing games: bought machines serve only the buyers.

A coalition ``T`` may reorder its members, move them to other existing
machines, buy fresh machines for its own use and sell machines whose
every initial user belongs to ``T`` (for the full price).  Outsiders stay
on their machine and either keep every original predecessor relation
(``no_swaps``) or at least never start later (``swaps``).

Exact values come from two nested dynamic programs.  On a machine that
still hosts outsiders, a forward DP over (outsiders served, members
served) gives the cheapest way to seat any subset of members there.  A
subset-partition DP then splits the coalition between those machines and
a pool of fresh machines.  Machines owned outright by ``T`` are always
sold: keeping one is the same as selling it and buying a fresh one, and
fresh machines carry no constraints.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from ..model import (
    GameTable,
    InvalidPlanError,
    RequeueingProblem,
    SchedulingPlan,
    as_mask,
    full_mask,
    members_of,
)
from .common import ENUMERATION_CAP, INF, RearrangementVariant, check_cap, integer_scale


def initial_cost(rq: RequeueingProblem, T: int) -> Fraction:
    return sum((rq.w(i) * (rq.s0(i) + 1) for i in members_of(T)), Fraction(0))


def is_admissible_private(rq: RequeueingProblem, T, plan: SchedulingPlan, variant) -> bool:
    """Check a full plan against the private rearrangement rules for ``T``.

    Machines are identical, so the plan may number them freely: what is
    required is that all outsiders of one initial machine share one plan
    machine and that different initial machines map to different plan
    machines.  Initial machines not mapped anywhere were sold, which is
    only possible when ``T`` owned them.
    """
    variant = RearrangementVariant.parse(variant)
    T = as_mask(T)
    n = rq.n
    if set(plan.agents) != set(range(1, n + 1)):
        raise InvalidPlanError("plan must schedule every agent")
    if plan.has_gaps():
        raise InvalidPlanError("plan leaves a machine idle before a later job")

    where = {a: (k, s) for a, k, s in plan.slots}
    image: dict[int, int] = {}
    for i in members_of(full_mask(n) & ~T):
        k0, k = rq.phi0(i), where[i][0]
        if image.setdefault(k0, k) != k:
            return False
    if len(set(image.values())) != len(image):
        return False

    for i in members_of(full_mask(n) & ~T):
        k, s = where[i]
        if variant is RearrangementVariant.SWAPS:
            if s > rq.s0(i):
                return False
        else:
            before = {a for a, (kk, ss) in where.items() if kk == k and ss < s}
            k0, s0 = rq.phi0(i), rq.s0(i)
            original = {a for a in range(1, n + 1)
                        if rq.phi0(a) == k0 and rq.s0(a) < s0}
            if not before <= original:
                return False
    return True


class _PrivateSolver:
    """Exact private value of one coalition, with plan reconstruction."""

    def __init__(self, rq: RequeueingProblem, T: int, variant: RearrangementVariant):
        self.rq = rq
        self.T = T
        self.variant = variant
        self.members = members_of(T)
        self.t = len(self.members)
        self.local = {a: j for j, a in enumerate(self.members)}
        self.scale = integer_scale(rq.b, *rq.base.weights)
        self.wint = [int(rq.w(a) * self.scale) for a in self.members]
        self.bint = int(rq.b * self.scale)

        self.kept = []      # (machine, outsiders in serving order)
        self.owned = 0
        for k, seq in enumerate(rq.initial.sequences(), 1):
            outs = [a for a in seq if not T >> (a - 1) & 1]
            if outs:
                self.kept.append((k, outs))
            else:
                self.owned += 1

    # -- one machine that keeps outsiders --------------------------------
    def _machine_table(self, k: int, outs: list[int]):
        """Forward DP: cheapest cost of seating each member subset on ``k``."""
        rq, t = self.rq, self.t
        q = len(outs)
        deadline = [rq.s0(o) for o in outs]
        # members allowed in front of the (j+1)-th outsider need gate <= j
        gate = []
        for a in self.members:
            if rq.phi0(a) == k:
                gate.append(sum(1 for o in outs if rq.s0(o) < rq.s0(a)))
            else:
                gate.append(q)
        swaps = self.variant is RearrangementVariant.SWAPS
        size = 1 << t
        f = [[INF] * size for _ in range(q + 1)]
        parent: list[list] = [[None] * size for _ in range(q + 1)]
        f[0][0] = 0
        for j in range(q + 1):
            row = f[j]
            for B in range(size):
                cur = row[B]
                if cur == INF:
                    continue
                time = j + bin(B).count("1")
                if j < q and (not swaps or time <= deadline[j]):
                    if cur < f[j + 1][B]:
                        f[j + 1][B] = cur
                        parent[j + 1][B] = ("o", B)
                for x in range(t):
                    bit = 1 << x
                    if B & bit or (not swaps and gate[x] > j):
                        continue
                    val = cur + self.wint[x] * (time + 1)
                    if val < row[B | bit]:
                        row[B | bit] = val
                        parent[j][B | bit] = ("x", x)
        return f[q], (parent, outs)

    def _machine_sequence(self, info, A: int) -> list[int]:
        parent, outs = info
        j, B = len(outs), A
        seq = []
        while (j, B) != (0, 0):
            kind, arg = parent[j][B]
            if kind == "o":
                j -= 1
                seq.append(outs[j])
            else:
                B &= ~(1 << arg)
                seq.append(self.members[arg])
        seq.reverse()
        return seq

    # -- fresh machines -----------------------------------------------------
    def _fresh_table(self):
        """Cheapest fresh-machine cost (waiting + purchases) per subset."""
        t, size = self.t, 1 << self.t
        h = [0] * size
        count = [0] * size
        for R in range(1, size):
            idx = [x for x in range(t) if R >> x & 1]  # rank order = weight order
            best, best_c = None, 0
            for c in range(1, len(idx) + 1):
                cost = c * self.bint + sum(self.wint[x] * (-(-(p + 1) // c))
                                           for p, x in enumerate(idx))
                if best is None or cost < best:
                    best, best_c = cost, c
            h[R], count[R] = best, best_c
        return h, count

    def solve(self, want_plan: bool = False):
        t = self.t
        full = (1 << t) - 1
        tables = [self._machine_table(k, outs) for k, outs in self.kept]

        G = [INF] * (1 << t)
        G[0] = 0
        choice = []
        for f, _ in tables:
            H = [INF] * (1 << t)
            pick = [0] * (1 << t)
            for mask in range(1 << t):
                sub = mask
                while True:
                    prev = G[mask ^ sub]
                    if prev != INF and f[sub] != INF:
                        val = prev + f[sub]
                        if val < H[mask]:
                            H[mask], pick[mask] = val, sub
                    if sub == 0:
                        break
                    sub = (sub - 1) & mask
            G = H
            choice.append(pick)

        h, count = self._fresh_table()
        best, best_R = INF, 0
        for R in range(1 << t):
            rest = G[full ^ R]
            if rest == INF:
                continue
            if not self.kept and R == 0:
                continue  # at least one machine must remain
            val = rest + h[R]
            if val < best:
                best, best_R = val, R

        c0 = sum(self.wint[x] * (self.rq.s0(a) + 1) for x, a in enumerate(self.members))
        value = Fraction(c0 + self.owned * self.bint - best, self.scale)
        if not want_plan:
            return value, None

        sequences = []
        mask = full ^ best_R
        parts = []
        for pick in reversed(choice):
            parts.append(pick[mask])
            mask ^= pick[mask]
        parts.reverse()
        for (k, outs), (_, info), A in zip(self.kept, tables, parts):
            sequences.append(self._machine_sequence(info, A))
        R_members = [self.members[x] for x in range(t) if best_R >> x & 1]
        c = count[best_R] if best_R else 0
        fresh = [[] for _ in range(c)]
        for p, a in enumerate(R_members):
            fresh[p % c].append(a)
        sequences.extend(fresh)
        return value, SchedulingPlan.from_sequences(sequences)


def private_requeueing_value(rq: RequeueingProblem, T, variant,
                             cap: int = ENUMERATION_CAP) -> Fraction:
    """Largest net saving ``T`` can secure on its own."""
    check_cap(rq.n, cap)
    T = as_mask(T)
    if T == 0:
        return Fraction(0)
    value, _ = _PrivateSolver(rq, T, RearrangementVariant.parse(variant)).solve()
    return value


def private_requeueing_plan(rq: RequeueingProblem, T, variant,
                            cap: int = ENUMERATION_CAP) -> tuple[Fraction, SchedulingPlan]:
    """Optimal value together with a plan that attains it."""
    check_cap(rq.n, cap)
    T = as_mask(T)
    if T == 0:
        return Fraction(0), rq.initial
    return _PrivateSolver(rq, T, RearrangementVariant.parse(variant)).solve(want_plan=True)


def private_requeueing_game(rq: RequeueingProblem, variant,
                            cap: int = ENUMERATION_CAP) -> GameTable:
    check_cap(rq.n, cap)
    variant = RearrangementVariant.parse(variant)
    return GameTable.from_function(
        "value", rq.n, lambda T: _PrivateSolver(rq, T, variant).solve()[0],
        labels=rq.base.labels)


def plan_value(rq: RequeueingProblem, T, plan: SchedulingPlan) -> Fraction:
    """Net saving of ``T`` when the whole queue moves to ``plan``."""
    T = as_mask(T)
    starts = plan.starts()
    after = sum((rq.w(i) * (starts[i] + 1) for i in members_of(T)), Fraction(0))
    return initial_cost(rq, T) - after - (plan.machines - rq.m0) * rq.b


def brute_force_private_value(rq: RequeueingProblem, T, variant, cap: int = 5
                              ) -> tuple[Fraction, SchedulingPlan]:
    """Enumerate every gap-free plan and keep the best admissible one.

    Independent of the DP; feasible only for very small ``n``.
    """
    check_cap(rq.n, cap)
    T = as_mask(T)
    n = rq.n
    agents = list(range(1, n + 1))
    best, best_plan = None, None
    for m in range(1, rq.m0 + len(members_of(T)) + 1):
        for order in permutations(agents):
            for cuts in combinations(range(n + m - 1), m - 1):
                bounds = [-1, *cuts, n + m - 1]
                sizes = [bounds[i + 1] - bounds[i] - 1 for i in range(m)]
                seqs, pos = [], 0
                for size in sizes:
                    seqs.append(order[pos:pos + size])
                    pos += size
                plan = SchedulingPlan.from_sequences(seqs)
                if not is_admissible_private(rq, T, plan, variant):
                    continue
                v = plan_value(rq, T, plan)
                if best is None or v > best:
                    best, best_plan = v, plan
    return best, best_plan
