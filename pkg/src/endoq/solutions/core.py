"""Core membership, exact non-emptiness certificates and marginal tests.

Non-emptiness is decided on the balancedness LP

    minimise  sum_S lam_S c(S)   over proper coalitions S
    s.t.      sum_{S contains i} lam_S = 1   for every agent i,  lam >= 0

for the cost form ``c`` of the game (value games are negated).  The core is
empty exactly when the optimum falls below ``c(N)``; the optimal ``lam``
is then a balanced collection proving it.  Otherwise the LP duals give
an allocation that meets every coalition bound, and lowering one agent's
share restores efficiency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..model import (
    CapExceededError,
    CoreCertificate,
    GameTable,
    as_mask,
    coalitions,
    full_mask,
    members_of,
)
from .lp import solve_lp

CORE_CAP = 12


def _cost_form(game: GameTable) -> list[Fraction]:
    sign = 1 if game.kind == "cost" else -1
    return [sign * v for v in game.worth]


def _coalition_sums(y: Sequence[Fraction], n: int) -> list[Fraction]:
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + y[low.bit_length() - 1]
    return sums


def is_in_core(game: GameTable, y: Sequence) -> bool:
    if len(y) != game.n:
        raise ValueError(f"allocation has {len(y)} entries for {game.n} players")
    y = [Fraction(v) for v in y]
    sums = _coalition_sums(y, game.n)
    if sums[-1] != game.grand:
        return False
    if game.kind == "cost":
        return all(sums[S] <= v for S, v in game.items())
    return all(sums[S] >= v for S, v in game.items())


def _check_cap(game: GameTable, cap: int) -> None:
    if game.n > cap:
        raise CapExceededError(f"core test limited to {cap} players, got {game.n}")


def _balancedness_lp(c: list[Fraction], n: int, rhs: list[Fraction], with_grand: bool = False):
    proper = list(range(1, (1 << n) - 1))
    cols = [[(i - 1, Fraction(1)) for i in members_of(S)] for S in proper]
    cost = [c[S] for S in proper]
    if with_grand:
        full = [(i, Fraction(1)) for i in range(n)]
        cols += [full, [(i, Fraction(-1)) for i in range(n)]]
        cost += [c[-1], -c[-1]]
    return proper, solve_lp(cost, cols, rhs)


def core_nonempty(game: GameTable, cap: int = CORE_CAP) -> CoreCertificate:
    """Decide core non-emptiness exactly and return a checkable witness."""
    _check_cap(game, cap)
    n = game.n
    c = _cost_form(game)
    sign = 1 if game.kind == "cost" else -1
    if n == 1:
        return CoreCertificate(game.kind, True, allocation=(game.grand,))

    proper, res = _balancedness_lp(c, n, [Fraction(1)] * n)
    if res.status != "optimal":  # cannot happen: singletons are feasible, lam <= 1
        raise RuntimeError(f"balancedness LP ended with status {res.status}")
    if res.value >= c[-1]:
        y = list(res.duals)
        y[0] -= res.value - c[-1]
        return CoreCertificate(game.kind, True, allocation=tuple(sign * v for v in y))

    lam = {proper[j]: v for j, v in res.x.items()}
    scale = math.lcm(*(v.denominator for v in lam.values()))
    weights = tuple(sorted((S, int(v * scale)) for S, v in lam.items()))
    lhs = sum((game[S] * w for S, w in weights), Fraction(0))
    return CoreCertificate(game.kind, False, weights=weights, scale=scale,
                           lhs=lhs, rhs=scale * game.grand)


def balanced_contradiction(game: GameTable, weights: Mapping) -> tuple[Fraction, Fraction, int]:
    """Weighted coalition worths against the matching multiple of ``N``.

    ``weights`` maps coalitions to non-negative weights that must cover
    every player equally often; returns ``(lhs, rhs, scale)``.
    """
    n = game.n
    cover = [Fraction(0)] * n
    lhs = Fraction(0)
    for S, w in weights.items():
        w = Fraction(w)
        if w < 0:
            raise ValueError("weights must be non-negative")
        mask = as_mask(S)
        if mask in (0, full_mask(n)):
            raise ValueError("weights go on proper non-empty coalitions")
        for i in members_of(mask):
            cover[i - 1] += w
        lhs += w * game[mask]
    if len(set(cover)) != 1 or cover[0] <= 0:
        raise ValueError(f"collection is not balanced: coverage {cover}")
    scale = cover[0]
    return lhs, scale * game.grand, scale


def verify_certificate(game: GameTable, cert: CoreCertificate) -> bool:
    """Re-check a certificate from the raw table, independent of the solver."""
    if cert.kind != game.kind:
        return False
    if cert.nonempty:
        return cert.allocation is not None and is_in_core(game, cert.allocation)
    if not cert.weights or any(w <= 0 for _, w in cert.weights):
        return False
    try:
        lhs, rhs, scale = balanced_contradiction(game, dict(cert.weights))
    except ValueError:
        return False
    if scale != cert.scale or lhs != cert.lhs or rhs != cert.rhs:
        return False
    return lhs < rhs if game.kind == "cost" else lhs > rhs


def core_extent(game: GameTable, cap: int = CORE_CAP
                ) -> list[tuple[Fraction, Fraction]] | None:
    """Smallest and largest share of each player over the core.

    ``None`` when the core is empty.  The core is a single point exactly
    when every pair collapses.
    """
    if not core_nonempty(game, cap).nonempty:
        return None
    n = game.n
    if n == 1:
        return [(game.grand, game.grand)]
    c = _cost_form(game)
    sign = 1 if game.kind == "cost" else -1
    out = []
    for i in range(n):
        hi = lo = None
        for direction in (1, -1):
            rhs = [Fraction(direction if r == i else 0) for r in range(n)]
            _, res = _balancedness_lp(c, n, rhs, with_grand=True)
            if res.status != "optimal":
                raise RuntimeError(f"extent LP ended with status {res.status}")
            # optimum = max(direction * y_i) over the cost-form core
            if direction == 1:
                hi = res.value
            else:
                lo = -res.value
        if sign == 1:
            out.append((lo, hi))
        else:
            out.append((-hi, -lo))
    return out


def core_is_singleton(game: GameTable, cap: int = CORE_CAP) -> bool:
    ext = core_extent(game, cap)
    return ext is not None and all(lo == hi for lo, hi in ext)


@dataclass(frozen=True)
class MarginalCheck:
    """Outcome of a concavity/convexity test.

    ``witness`` is ``(i, S, T)`` with ``S`` a subset of ``T`` where the
    marginal contribution of ``i`` moves the wrong way.
    """

    holds: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _marginal_check(game: GameTable, concave: bool) -> MarginalCheck:
    v = game.worth
    n = game.n
    full = full_mask(n)
    for i in range(n):
        bi = 1 << i
        for j in range(n):
            if i == j:
                continue
            bj = 1 << j
            rest = full & ~bi & ~bj
            S = rest
            while True:
                small = v[S | bi] - v[S]
                large = v[S | bi | bj] - v[S | bj]
                if (large > small) if concave else (large < small):
                    return MarginalCheck(False, (i + 1, S, S | bj))
                if S == 0:
                    break
                S = (S - 1) & rest
    return MarginalCheck(True)


def is_concave(game: GameTable) -> MarginalCheck:
    """Marginal contributions never grow as the coalition grows."""
    return _marginal_check(game, concave=True)


def is_convex(game: GameTable) -> MarginalCheck:
    """Marginal contributions never shrink as the coalition grows."""
    return _marginal_check(game, concave=False)


def is_subadditive(game: GameTable) -> bool:
    v = game.worth
    for S in coalitions(game.n):
        T = S
        while T:
            U = S & ~T
            if U and T < U and v[S] > v[T] + v[U]:
                return False
            T = (T - 1) & S
    return True
