"""Sweep the machine cost and classify the core of the queueing game.

Every quantity of interest changes only where some threshold ``r_S(k)``
or some theorem bound is crossed, so the cost axis splits into finitely
many pieces.  Each breakpoint and the midpoint of each gap between them
is solved exactly; consecutive pieces with the same outcome are merged.
Verdicts inside an open piece are sampled at one point, so a change of
sign strictly inside a piece would go unnoticed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..games.queueing import queueing_cost_game
from ..model import CapExceededError, QueueingProblem, coalitions, fmt, members_of
from ..scheduling import optimal_machine_count, threshold
from .core import CORE_CAP, core_extent, core_nonempty
from .theorems import theorem_bounds


@dataclass
class Sample:
    b: Fraction
    verdict: str  # "empty" | "unique" | "multiple"
    machines: tuple[int, ...]  # m(S) for every non-empty coalition, by mask
    theorems: tuple[str, ...]
    witness: tuple[Fraction, ...] | None
    certificate: object = None


@dataclass
class Region:
    lo: Fraction
    hi: Fraction | None  # None for +infinity
    lo_closed: bool
    hi_closed: bool
    verdict: str
    machines: tuple[int, ...]
    theorems: tuple[str, ...]  # guarantees holding at every sample
    witness: tuple[Fraction, ...] | None
    witness_b: Fraction
    samples: list[Sample] = field(default_factory=list)

    def contains(self, b) -> bool:
        b = Fraction(b)
        if b < self.lo or (b == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return b < self.hi or (b == self.hi and self.hi_closed)

    def interval(self) -> str:
        left = "[" if self.lo_closed else "("
        if self.hi is None:
            return f"{left}{fmt(self.lo)}, inf)"
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt(self.lo)}, {fmt(self.hi)}{right}"


@dataclass
class RegimeReport:
    weights: tuple[Fraction, ...]
    labels: tuple[str, ...]
    breakpoints: tuple[Fraction, ...]
    regions: list[Region]

    def region_at(self, b) -> Region:
        for r in self.regions:
            if r.contains(b):
                return r
        raise ValueError(f"b={b} is not covered")

    def machine_count(self, b, S: int) -> int:
        return self.region_at(b).machines[S - 1]

    def _key(self, mask: int) -> str:
        return ",".join(self.labels[i - 1] for i in members_of(mask))

    def to_dict(self) -> dict:
        regions = []
        for r in self.regions:
            entry = {
                "interval": r.interval(),
                "lo": fmt(r.lo), "lo_closed": r.lo_closed,
                "hi": None if r.hi is None else fmt(r.hi), "hi_closed": r.hi_closed,
                "core": r.verdict,
                "theorems": list(r.theorems),
                "machines": {self._key(S): m for S, m in enumerate(r.machines, 1)},
            }
            if r.witness is not None:
                entry["witness"] = {"b": fmt(r.witness_b), "allocation": [fmt(x) for x in r.witness]}
            regions.append(entry)
        return {
            "weights": {lab: fmt(w) for lab, w in zip(self.labels, self.weights)},
            "breakpoints": [fmt(p) for p in self.breakpoints],
            "regions": regions,
        }

    def render_text(self) -> str:
        lines = [f"weights: {', '.join(fmt(w) for w in self.weights)}", ""]
        for r in self.regions:
            several = [self._key(S) for S, m in enumerate(r.machines, 1) if m > 1]
            counts = "; ".join(f"m({{{self._key(S)}}})={m}"
                               for S, m in enumerate(r.machines, 1) if m > 1)
            lines.append(f"b in {r.interval()}: core {r.verdict}")
            lines.append(f"    machines: {counts if several else 'one machine for every coalition'}")
            if r.witness is not None:
                alloc = ", ".join(fmt(x) for x in r.witness)
                lines.append(f"    witness at b={fmt(r.witness_b)}: ({alloc})")
            if r.theorems:
                lines.append(f"    guarantees: {', '.join(r.theorems)}")
        return "\n".join(lines)


def breakpoints(problem: QueueingProblem) -> list[Fraction]:
    """Non-negative thresholds and theorem bounds, sorted and distinct."""
    points = {Fraction(0)}
    for S in coalitions(problem.n):
        for k in range(2, len(members_of(S)) + 1):
            points.add(threshold(problem, S, k))
    points.update(theorem_bounds(problem).bounds.values())
    return sorted(p for p in points if p >= 0)


def sample_regime(problem: QueueingProblem, b, cap: int = CORE_CAP) -> Sample:
    q = problem.with_machine_cost(b)
    game = queueing_cost_game(q)
    cert = core_nonempty(game, cap)
    if cert.nonempty:
        extent = core_extent(game, cap)
        verdict = "unique" if all(lo == hi for lo, hi in extent) else "multiple"
    else:
        verdict = "empty"
    machines = tuple(optimal_machine_count(q, S) for S in coalitions(q.n))
    return Sample(q.b, verdict, machines, tuple(theorem_bounds(q).holding()),
                  cert.allocation, cert)


def classify_regimes(problem: QueueingProblem, cap: int = CORE_CAP) -> RegimeReport:
    if problem.n > cap:
        raise CapExceededError(f"regime sweep limited to {cap} players, got {problem.n}")
    points = breakpoints(problem)
    # (b, lo, hi) with lo == hi for a point piece and hi None past the last point
    pieces = []
    for a, c in zip(points, points[1:]):
        pieces.append((a, a, a))
        pieces.append(((a + c) / 2, a, c))
    last = points[-1]
    pieces.append((last, last, last))
    pieces.append((last + 1, last, None))

    regions: list[Region] = []
    for b, lo, hi in pieces:
        s = sample_regime(problem, b, cap)
        point = hi is not None and lo == hi
        prev = regions[-1] if regions else None
        if prev and (prev.verdict, prev.machines) == (s.verdict, s.machines):
            prev.hi, prev.hi_closed = hi, point
            prev.samples.append(s)
            prev.theorems = tuple(t for t in prev.theorems if t in s.theorems)
            continue
        witness_b = s.b
        regions.append(Region(lo, hi, point, point, s.verdict, s.machines, s.theorems,
                              s.witness, witness_b, [s]))
    return RegimeReport(problem.weights, problem.labels, tuple(points), regions)
