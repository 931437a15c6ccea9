"""Domain types: problems, scheduling plans, coalitions and game tables.

Agents are numbered 1..n by rank in the non-increasing weight order, so
agent 1 always carries the largest waiting weight.  Coalitions are passed
around as integer bitmasks (agent ``i`` is bit ``i - 1``); every public
function also accepts an iterable of agent numbers.

All numbers are :class:`fractions.Fraction`.  Nothing in this package
touches floating point once a problem has been constructed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Fraction
CoalitionLike = Union[int, Iterable[int]]


class ProblemError(ValueError):
    """Malformed problem data."""


class InvalidPlanError(ValueError):
    """A scheduling plan breaks admissibility or semi-activity."""


class CapExceededError(RuntimeError):
    """An exhaustive routine was asked to run past its size cap."""


def to_scalar(value) -> Fraction:
    """Parse an int, decimal string, ``"p/q"`` string or Decimal exactly."""
    if isinstance(value, bool):
        raise ProblemError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        # repr gives the shortest decimal that round-trips
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemError(f"cannot parse scalar {value!r}") from exc
    raise ProblemError(f"cannot parse scalar {value!r}")


def fmt(x: Fraction) -> str:
    return str(x)


# -- coalitions -------------------------------------------------------------

def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        if i < 1:
            raise ValueError(f"agents are numbered from 1, got {i}")
        mask |= 1 << (i - 1)
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def as_mask(S: CoalitionLike) -> int:
    if isinstance(S, int):
        if S < 0:
            raise ValueError("negative coalition mask")
        return S
    return mask_of(S)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def coalitions(n: int) -> range:
    """All non-empty coalitions of ``n`` agents as bitmasks."""
    return range(1, 1 << n)


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# -- problems ---------------------------------------------------------------

@dataclass(frozen=True)
class QueueingProblem:
    """Agents with unit jobs, linear waiting weights and a machine price."""

    weights: tuple[Fraction, ...]
    machine_cost: Fraction
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        w = tuple(to_scalar(x) for x in self.weights)
        b = to_scalar(self.machine_cost)
        if not w:
            raise ProblemError("a problem needs at least one agent")
        if any(x <= 0 for x in w):
            raise ProblemError("waiting weights must be positive")
        if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
            raise ProblemError(
                "weights must be non-increasing; use QueueingProblem.from_unsorted")
        if b < 0:
            raise ProblemError("machine cost must be non-negative")
        labels = tuple(str(x) for x in self.labels) or tuple(
            str(i) for i in range(1, len(w) + 1))
        if len(labels) != len(w) or len(set(labels)) != len(labels):
            raise ProblemError("labels must be unique, one per agent")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "machine_cost", b)
        object.__setattr__(self, "labels", labels)
        # weights over a common denominator, for integer inner loops
        scale = math.lcm(*(x.denominator for x in w))
        object.__setattr__(self, "weight_scale", scale)
        object.__setattr__(self, "scaled_weights", tuple(int(x * scale) for x in w))

    @classmethod
    def from_unsorted(cls, weights: Sequence, machine_cost, labels: Sequence[str] | None = None
                      ) -> tuple["QueueingProblem", tuple[int, ...]]:
        """Sort agents by weight (ties keep input order).

        Returns the problem and ``perm`` where ``perm[r - 1]`` is the input
        position (0-based) of the agent ranked ``r``.
        """
        w = [to_scalar(x) for x in weights]
        if labels is None:
            labels = [str(i) for i in range(1, len(w) + 1)]
        perm = tuple(sorted(range(len(w)), key=lambda j: -w[j]))
        return cls(tuple(w[j] for j in perm), machine_cost,
                   tuple(str(labels[j]) for j in perm)), perm

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def b(self) -> Fraction:
        return self.machine_cost

    def w(self, i: int) -> Fraction:
        """Weight of agent ``i`` (1-based)."""
        return self.weights[i - 1]

    def with_machine_cost(self, b) -> "QueueingProblem":
        return QueueingProblem(self.weights, to_scalar(b), self.labels)

    def label_of(self, mask: int) -> str:
        return ",".join(self.labels[i - 1] for i in members_of(mask))


@dataclass(frozen=True)
class SchedulingPlan:
    """Machine count plus a (machine, start) pair for each scheduled agent.

    Machines are numbered 1..machines, start times are periods 0, 1, ...
    """

    machines: int
    slots: tuple[tuple[int, int, int], ...]  # (agent, machine, start)

    def __post_init__(self):
        slots = tuple(sorted((int(a), int(k), int(s)) for a, k, s in self.slots))
        if self.machines < 1:
            raise InvalidPlanError("a plan needs at least one machine")
        agents = [a for a, _, _ in slots]
        if len(set(agents)) != len(agents):
            raise InvalidPlanError("agent scheduled twice")
        seen = set()
        for a, k, s in slots:
            if not 1 <= k <= self.machines:
                raise InvalidPlanError(f"agent {a} on machine {k} outside 1..{self.machines}")
            if s < 0:
                raise InvalidPlanError(f"agent {a} has negative start time")
            if (k, s) in seen:
                raise InvalidPlanError(f"two agents start at period {s} on machine {k}")
            seen.add((k, s))
        object.__setattr__(self, "slots", slots)

    @classmethod
    def from_sequences(cls, sequences: Sequence[Sequence[int]]) -> "SchedulingPlan":
        """Build a gap-free plan from per-machine serving orders."""
        slots = [(a, k, s) for k, seq in enumerate(sequences, 1) for s, a in enumerate(seq)]
        return cls(len(sequences), tuple(slots))

    def sequences(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.machines)]
        for a, k, s in sorted(self.slots, key=lambda t: (t[1], t[2])):
            out[k - 1].append(a)
        return out

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(a for a, _, _ in self.slots)

    @property
    def mask(self) -> int:
        return mask_of(self.agents)

    def _lookup(self) -> dict[int, tuple[int, int]]:
        return {a: (k, s) for a, k, s in self.slots}

    def machine(self, agent: int) -> int:
        return self._lookup()[agent][0]

    def start(self, agent: int) -> int:
        return self._lookup()[agent][1]

    def starts(self) -> dict[int, int]:
        return {a: s for a, _, s in self.slots}

    def loads(self) -> list[int]:
        loads = [0] * self.machines
        for _, k, _ in self.slots:
            loads[k - 1] += 1
        return loads

    def has_gaps(self) -> bool:
        by_machine: dict[int, list[int]] = {}
        for _, k, s in self.slots:
            by_machine.setdefault(k, []).append(s)
        return any(sorted(v) != list(range(len(v))) for v in by_machine.values())

    def to_dict(self, labels: Sequence[str] | None = None) -> dict:
        def name(a):
            return labels[a - 1] if labels else a
        return {"machines": self.machines,
                "sequences": [[name(a) for a in seq] for seq in self.sequences()]}


@dataclass(frozen=True)
class RequeueingProblem:
    """A queueing problem together with an existing semi-active schedule."""

    base: QueueingProblem
    initial: SchedulingPlan

    def __post_init__(self):
        if set(self.initial.agents) != set(range(1, self.base.n + 1)):
            raise ProblemError("the initial schedule must cover every agent exactly once")
        if self.initial.has_gaps():
            raise ProblemError("the initial schedule has idle gaps")
        loads = self.initial.loads()
        if max(loads) - min(loads) > 1:
            raise ProblemError("initial machine loads differ by more than one")

    @classmethod
    def from_order(cls, base: QueueingProblem, machines: int, order: Sequence[int]
                   ) -> "RequeueingProblem":
        """Fill ``machines`` machines round-robin from a priority order.

        Within a period machine 1 is served first, so the agent at position
        ``p`` (0-based) lands on machine ``p % machines + 1`` at period
        ``p // machines``.
        """
        if machines < 1:
            raise ProblemError("initial machine count must be at least 1")
        if sorted(order) != list(range(1, base.n + 1)):
            raise ProblemError("order must list every agent exactly once")
        slots = tuple((a, p % machines + 1, p // machines) for p, a in enumerate(order))
        return cls(base, SchedulingPlan(machines, slots))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m0(self) -> int:
        return self.initial.machines

    @property
    def b(self) -> Fraction:
        return self.base.machine_cost

    def w(self, i: int) -> Fraction:
        return self.base.w(i)

    def s0(self, i: int) -> int:
        return self.initial.start(i)

    def phi0(self, i: int) -> int:
        return self.initial.machine(i)

    def with_machine_cost(self, b) -> "RequeueingProblem":
        return RequeueingProblem(self.base.with_machine_cost(b), self.initial)


# -- game tables ------------------------------------------------------------

@dataclass(frozen=True)
class GameTable:
    """Worth of every coalition of an ``n``-player cost or value game.

    ``worth[mask]`` is indexed by coalition bitmask; ``worth[0]`` is 0.
    """

    kind: str
    n: int
    worth: tuple[Fraction, ...]
    labels: tuple[str, ...] = ()
    warning: str | None = None

    def __post_init__(self):
        if self.kind not in ("cost", "value"):
            raise ValueError(f"kind must be 'cost' or 'value', not {self.kind!r}")
        if len(self.worth) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} worths, got {len(self.worth)}")
        worth = tuple(to_scalar(x) for x in self.worth)
        if worth[0] != 0:
            raise ValueError("the empty coalition must have worth 0")
        object.__setattr__(self, "worth", worth)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(1, self.n + 1)))

    @classmethod
    def from_function(cls, kind: str, n: int, fn, labels=(), warning=None) -> "GameTable":
        worth = [Fraction(0)] + [fn(mask) for mask in coalitions(n)]
        return cls(kind, n, tuple(worth), tuple(labels), warning)

    def __getitem__(self, S: CoalitionLike) -> Fraction:
        return self.worth[as_mask(S)]

    def __len__(self) -> int:
        return len(self.worth) - 1

    @property
    def grand(self) -> Fraction:
        return self.worth[-1]

    def items(self) -> Iterator[tuple[int, Fraction]]:
        for mask in coalitions(self.n):
            yield mask, self.worth[mask]

    def key(self, mask: int) -> str:
        return ",".join(self.labels[i - 1] for i in members_of(mask))

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "labels": list(self.labels),
               "worth": {self.key(mask): fmt(v) for mask, v in self.items()}}
        if self.warning:
            out["warning"] = self.warning
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "GameTable":
        n = int(data["n"])
        labels = tuple(data.get("labels") or (str(i) for i in range(1, n + 1)))
        index = {lab: i for i, lab in enumerate(labels, 1)}
        worth = [Fraction(0)] * (1 << n)
        seen = set()
        for key, value in data["worth"].items():
            if key.isdigit() and key not in index:
                mask = int(key)  # raw bitmask key
            else:
                mask = mask_of(index[part.strip()] for part in key.split(","))
            worth[mask] = to_scalar(value)
            seen.add(mask)
        if len(seen) != (1 << n) - 1 or 0 in seen:
            raise ProblemError(f"game table for n={n} must list all {(1 << n) - 1} coalitions")
        return cls(data["kind"], n, tuple(worth), labels, data.get("warning"))


@dataclass(frozen=True)
class CoreCertificate:
    """Outcome of an exact core test.

    A non-empty verdict carries a core ``allocation``.  An empty verdict
    carries integer ``weights`` on proper coalitions covering every agent
    exactly ``scale`` times; ``lhs`` is the weighted sum of coalition
    worths and ``rhs`` is ``scale`` times the grand-coalition worth.  For
    cost games ``lhs < rhs`` and for value games ``lhs > rhs``, either of
    which contradicts efficiency.
    """

    kind: str
    nonempty: bool
    allocation: tuple[Fraction, ...] | None = None
    weights: tuple[tuple[int, int], ...] = ()  # (coalition mask, weight)
    scale: int = 0
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    @property
    def verdict(self) -> str:
        return "nonempty" if self.nonempty else "empty"

    def to_dict(self, labels: Sequence[str] | None = None) -> dict:
        def key(mask):
            ms = members_of(mask)
            return ",".join(labels[i - 1] for i in ms) if labels else ",".join(map(str, ms))
        out: dict = {"kind": self.kind, "verdict": self.verdict}
        if self.nonempty:
            out["allocation"] = [fmt(x) for x in self.allocation]
        else:
            out["weights"] = {key(mask): wt for mask, wt in self.weights}
            out["scale"] = self.scale
            out["lhs"] = fmt(self.lhs)
            out["rhs"] = fmt(self.rhs)
        return out


# -- weight selection -------------------------------------------------------

def restricted_weight(problem: QueueingProblem, S: CoalitionLike, k: int) -> Fraction:
    """Weight of the ``k``-th member of ``S`` in rank order."""
    members = members_of(as_mask(S))
    if not 1 <= k <= len(members):
        raise IndexError(f"k={k} outside 1..{len(members)}")
    return problem.w(members[k - 1])


def complement_weight(problem: QueueingProblem, T: CoalitionLike, k: int) -> Fraction:
    """Weight of the ``k``-th agent outside ``T``."""
    rest = full_mask(problem.n) & ~as_mask(T)
    return restricted_weight(problem, rest, k)


def coalition_weights(problem: QueueingProblem, S: CoalitionLike) -> list[Fraction]:
    return [problem.w(i) for i in members_of(as_mask(S))]


# -- loading ----------------------------------------------------------------

def parse_problem(data: Mapping) -> QueueingProblem | RequeueingProblem:
    """Build a problem from the JSON document layout.

    ``weights`` is either a list (labels "1".."n" by position) or an object
    mapping labels to weights.  ``initial.order`` names agents by label.
    """
    if not isinstance(data, Mapping):
        raise ProblemError("problem document must be a JSON object")
    try:
        raw = data["weights"]
        b = data["machine_cost"]
    except KeyError as exc:
        raise ProblemError(f"missing field {exc.args[0]!r}") from None
    if isinstance(raw, Mapping):
        labels, weights = list(raw.keys()), list(raw.values())
    elif isinstance(raw, list):
        labels, weights = [str(i) for i in range(1, len(raw) + 1)], raw
    else:
        raise ProblemError("weights must be a list or an object")
    base, _ = QueueingProblem.from_unsorted(weights, to_scalar(b), labels)
    initial = data.get("initial")
    if initial is None:
        return base
    try:
        m0 = initial["machines"]
        order = initial["order"]
    except (KeyError, TypeError):
        raise ProblemError("initial block needs 'machines' and 'order'") from None
    if not isinstance(m0, int) or isinstance(m0, bool):
        raise ProblemError("initial.machines must be an integer")
    rank = {lab: r for r, lab in enumerate(base.labels, 1)}
    try:
        ranks = [rank[str(lab)] for lab in order]
    except KeyError as exc:
        raise ProblemError(f"unknown agent label {exc.args[0]!r} in initial.order") from None
    return RequeueingProblem.from_order(base, m0, ranks)


def load_problem(path: str | Path) -> QueueingProblem | RequeueingProblem:
    text = Path(path).read_text()
    try:
        data = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}: {exc}") from None
    return parse_problem(data)


def problem_to_dict(problem: QueueingProblem | RequeueingProblem) -> dict:
    base = problem.base if isinstance(problem, RequeueingProblem) else problem
    out: dict = {"weights": {lab: fmt(w) for lab, w in zip(base.labels, base.weights)},
                 "machine_cost": fmt(base.machine_cost)}
    if isinstance(problem, RequeueingProblem):
        order = sorted(range(1, base.n + 1), key=lambda i: (problem.s0(i), problem.phi0(i)))
        out["initial"] = {"machines": problem.m0, "order": [base.labels[i - 1] for i in order]}
    return out


__all__ = [
    "Scalar", "ProblemError", "InvalidPlanError", "CapExceededError", "to_scalar", "fmt",
    "mask_of", "members_of", "as_mask", "popcount", "full_mask", "coalitions", "submasks",
    "QueueingProblem", "SchedulingPlan", "RequeueingProblem", "GameTable", "CoreCertificate",
    "restricted_weight", "complement_weight", "coalition_weights", "parse_problem",
    "load_problem", "problem_to_dict",
]

