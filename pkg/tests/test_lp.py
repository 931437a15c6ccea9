from fractions import Fraction

from hypothesis import given, strategies as st

from endoq.solutions import solve_lp


def _dense(columns, m):
    return [[dict(col).get(r, Fraction(0)) for col in columns] for r in range(m)]


def test_small_lp():
    # min x0 + 2 x1 + 3 x2  s.t.  x0 + x1 = 1, x1 + x2 = 1
    cols = [[(0, 1)], [(0, 1), (1, 1)], [(1, 1)]]
    res = solve_lp([1, 2, 3], cols, [1, 1])
    assert res.status == "optimal"
    assert res.value == 2 and res.x == {1: 1}


def test_infeasible_and_unbounded():
    assert solve_lp([1], [[(0, 1)]], [-1]).status == "infeasible"
    # x0 - x1 = 0, minimise -x0
    assert solve_lp([-1, 0], [[(0, 1)], [(0, -1)]], [0]).status == "unbounded"


def test_redundant_rows_are_tolerated():
    cols = [[(0, 1), (1, 1)], [(0, 1), (1, 1)]]
    res = solve_lp([3, 1], cols, [2, 2])
    assert res.status == "optimal" and res.value == 2


def test_fractional_optimum():
    cols = [[(0, 2), (1, 1)], [(0, 1), (1, 3)]]
    res = solve_lp([1, 1], cols, [1, 1])
    assert res.x == {0: Fraction(2, 5), 1: Fraction(1, 5)}


small = st.integers(-3, 3).map(Fraction)


@given(st.integers(1, 4), st.integers(1, 6), st.data())
def test_optimum_comes_with_matching_duals(m, n, data):
    columns = [[(r, data.draw(small)) for r in range(m)] for _ in range(n)]
    # rhs generated from a known non-negative point, so the system is feasible
    x0 = [data.draw(st.integers(0, 3)) for _ in range(n)]
    A = _dense(columns, m)
    rhs = [sum(A[r][j] * x0[j] for j in range(n)) for r in range(m)]
    cost = [data.draw(st.integers(0, 5)) for _ in range(n)]  # bounded below by 0
    res = solve_lp(cost, columns, rhs)
    assert res.status == "optimal"
    x = [res.x.get(j, Fraction(0)) for j in range(n)]
    assert all(v >= 0 for v in x)
    assert all(sum(A[r][j] * x[j] for j in range(n)) == rhs[r] for r in range(m))
    # dual feasibility plus equal objectives certify optimality
    y = res.duals
    assert all(cost[j] - sum(y[r] * A[r][j] for r in range(m)) >= 0 for j in range(n))
    assert sum(y[r] * rhs[r] for r in range(m)) == res.value == sum(c * v for c, v in zip(cost, x))
    assert res.value <= sum(c * v for c, v in zip(cost, x0))
