"""Characteristic functions for every game variant."""

from .common import ENUMERATION_CAP, RearrangementVariant
from .private import (
    brute_force_private_value,
    is_admissible_private,
    plan_value,
    private_requeueing_game,
    private_requeueing_plan,
    private_requeueing_value,
)
from .public import (
    PriorityOrder,
    owned_machines,
    priority_order,
    public_requeue_grid,
    public_requeueing_game,
    public_requeueing_value,
    public_value_fixed,
    public_value_profile,
    relaxed_machine_count,
    relaxed_public_game,
    relaxed_public_value,
)
from .queueing import queueing_cost_game, reduced_correction, reduced_cost_game

__all__ = [
    "ENUMERATION_CAP", "RearrangementVariant", "brute_force_private_value",
    "is_admissible_private", "plan_value", "private_requeueing_game",
    "private_requeueing_plan", "private_requeueing_value", "PriorityOrder",
    "owned_machines", "priority_order", "public_requeue_grid", "public_requeueing_game",
    "public_requeueing_value", "public_value_fixed", "public_value_profile",
    "relaxed_machine_count", "relaxed_public_game", "relaxed_public_value",
    "queueing_cost_game", "reduced_correction", "reduced_cost_game",
]
