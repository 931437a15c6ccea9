"""Sweep the machine price and map where the core is empty.

Between consecutive thresholds nothing about the game changes shape, so
solving at each breakpoint and at each midpoint covers the whole axis.
"""

from endoq.model import QueueingProblem
from endoq.solutions import classify_regimes

report = classify_regimes(QueueingProblem((20, 15, 10, 5), 0))
print(report.render_text())
