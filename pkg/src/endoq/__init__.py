"""Cooperative queueing games with an endogenous number of machines."""

from .model import (
    CapExceededError,
    CoreCertificate,
    GameTable,
    InvalidPlanError,
    ProblemError,
    QueueingProblem,
    RequeueingProblem,
    SchedulingPlan,
    load_problem,
    parse_problem,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError", "CoreCertificate", "GameTable", "InvalidPlanError", "ProblemError",
    "QueueingProblem", "RequeueingProblem", "SchedulingPlan", "load_problem", "parse_problem",
]
