"""How many machines should a group of agents buy?

Four agents with waiting weights 20, 15, 10 and 5.  For each price we
show the optimal machine count of the whole group, the cost, and an
exhaustive search over every semi-active schedule that agrees with it.
"""

from fractions import Fraction

from endoq.model import QueueingProblem, full_mask
from endoq.scheduling import (
    brute_force_min_cost,
    min_cost,
    optimal_machine_count,
    optimal_plan,
    threshold_table,
)

q = QueueingProblem((20, 15, 10, 5), 0)
N = full_mask(q.n)

print("price thresholds for the whole group:")
for k, r in threshold_table(q, N).items():
    print(f"  machine {k} pays off while b < {r}")

print()
print(f"{'b':>6}  {'m(N)':>4}  {'cost':>6}  {'brute force':>11}  plan")
for b in (0, 5, Fraction(15, 2), 10, 20, 30, 35, 60):
    qb = q.with_machine_cost(b)
    brute, plan = brute_force_min_cost(qb, N, q.n)
    print(f"{str(b):>6}  {optimal_machine_count(qb, N):>4}  {str(min_cost(qb, N)):>6}"
          f"  {str(brute):>6} on {plan.machines}  {optimal_plan(qb, N).sequences()}")
