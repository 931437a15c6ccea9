"""Exact two-phase revised simplex over rationals.

Solves ``min c.x  s.t.  A x = b,  x >= 0`` with ``A`` given column by
column in sparse form.  Pivots follow Dantzig's rule and fall back to
Bland's rule after a degenerate step, which rules out cycling.  The
returned duals satisfy ``c_j - y.A_j >= 0`` for every column at an
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Column = Sequence[tuple[int, Fraction]]  # (row, coefficient) pairs

ZERO = Fraction(0)


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: dict[int, Fraction] | None = None
    duals: list[Fraction] | None = None
    iterations: int = 0


class _Tableau:
    def __init__(self, columns: list[Column], rhs: list[Fraction]):
        self.m = len(rhs)
        self.columns = columns
        self.Binv = [[Fraction(int(i == j)) for j in range(self.m)] for i in range(self.m)]
        self.xB = list(rhs)
        self.basis = [len(columns) - self.m + i for i in range(self.m)]
        self.iterations = 0

    def direction(self, j: int) -> list[Fraction]:
        u = [ZERO] * self.m
        for r, v in self.columns[j]:
            for i in range(self.m):
                coef = self.Binv[i][r]
                if coef:
                    u[i] += coef * v
        return u

    def duals(self, cost: list[Fraction]) -> list[Fraction]:
        y = [ZERO] * self.m
        for i, var in enumerate(self.basis):
            c = cost[var]
            if c:
                row = self.Binv[i]
                for r in range(self.m):
                    if row[r]:
                        y[r] += c * row[r]
        return y

    def pivot(self, row: int, col: int, u: list[Fraction]) -> None:
        piv = u[row]
        prow = [v / piv for v in self.Binv[row]]
        self.Binv[row] = prow
        xr = self.xB[row] / piv
        self.xB[row] = xr
        for i in range(self.m):
            if i != row and u[i]:
                f = u[i]
                bi = self.Binv[i]
                for r in range(self.m):
                    if prow[r]:
                        bi[r] -= f * prow[r]
                self.xB[i] -= f * xr
        self.basis[row] = col
        self.iterations += 1

    def run(self, cost: list[Fraction], allowed: int) -> str:
        """Minimise ``cost`` over columns ``< allowed`` from the current basis."""
        bland = False
        while True:
            y = self.duals(cost)
            in_basis = set(self.basis)
            enter, best = None, ZERO
            for j in range(allowed):
                if j in in_basis:
                    continue
                d = cost[j] - sum((y[r] * v for r, v in self.columns[j]), ZERO)
                if d < 0:
                    if bland:
                        enter = j
                        break
                    if enter is None or d < best:
                        enter, best = j, d
            if enter is None:
                return "optimal"
            u = self.direction(enter)
            leave, ratio = None, None
            for i in range(self.m):
                if u[i] > 0:
                    t = self.xB[i] / u[i]
                    if (ratio is None or t < ratio
                            or (t == ratio and self.basis[i] < self.basis[leave])):
                        leave, ratio = i, t
            if leave is None:
                return "unbounded"
            bland = ratio == 0
            self.pivot(leave, enter, u)


def solve_lp(cost: Sequence[Fraction], columns: Sequence[Column], rhs: Sequence[Fraction]
             ) -> LPResult:
    m = len(rhs)
    n = len(columns)
    sign = [(-1 if Fraction(v) < 0 else 1) for v in rhs]
    cols = [[(r, Fraction(v) * sign[r]) for r, v in col if v] for col in columns]
    b = [Fraction(v) * sign[r] for r, v in enumerate(rhs)]
    cols += [[(i, Fraction(1))] for i in range(m)]  # artificials
    tab = _Tableau(cols, b)

    phase1 = [ZERO] * n + [Fraction(1)] * m
    tab.run(phase1, n + m)
    if sum((tab.xB[i] for i, v in enumerate(tab.basis) if v >= n), ZERO) > 0:
        return LPResult("infeasible", iterations=tab.iterations)

    # push zero-level artificials out where a real column can replace them;
    # rows where none can are redundant and their artificial stays at zero
    for i in range(m):
        if tab.basis[i] < n:
            continue
        in_basis = set(tab.basis)
        for j in range(n):
            if j in in_basis:
                continue
            u = tab.direction(j)
            if u[i] != 0:
                tab.pivot(i, j, u)
                break

    phase2 = [Fraction(c) for c in cost] + [ZERO] * m
    status = tab.run(phase2, n)
    if status == "unbounded":
        return LPResult("unbounded", iterations=tab.iterations)
    x = {var: tab.xB[i] for i, var in enumerate(tab.basis) if var < n and tab.xB[i] != 0}
    value = sum((phase2[var] * v for var, v in x.items()), ZERO)
    y = tab.duals(phase2)
    duals = [y[r] * sign[r] for r in range(m)]
    return LPResult("optimal", value, x, duals, tab.iterations)
