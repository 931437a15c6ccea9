"""Randomized cross-checks and the worked-example claims.

The oracle compares closed forms with exhaustive search on seeded random
instances.  The claim runner replays the numbers quoted for the three
worked instances and reports which of them the exact computation does
not reproduce.
"""

from endoq.oracle import run_oracle_checks
from endoq.verify import render_results, run_claims

print(run_oracle_checks(seed=1, instances=50, max_n=5).render_text())
print()
print(render_results(run_claims()))
