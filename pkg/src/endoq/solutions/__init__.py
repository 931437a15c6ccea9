"""Core analysis, closed-form allocations and machine-cost regimes."""

from .core import (
    CORE_CAP,
    MarginalCheck,
    balanced_contradiction,
    core_extent,
    core_is_singleton,
    core_nonempty,
    is_concave,
    is_convex,
    is_in_core,
    is_subadditive,
    verify_certificate,
)
from .lp import LPResult, solve_lp
from .regimes import Region, RegimeReport, breakpoints, classify_regimes, sample_regime
from .theorems import (
    BoundsReport,
    HypothesisError,
    single_machine_bound,
    theorem1_allocation,
    theorem1_uniqueness_check,
    theorem3_allocation,
    theorem_bounds,
)

__all__ = [
    "CORE_CAP", "MarginalCheck", "balanced_contradiction", "core_extent", "core_is_singleton",
    "core_nonempty", "is_concave", "is_convex", "is_in_core", "is_subadditive",
    "verify_certificate", "LPResult", "solve_lp", "Region", "RegimeReport", "breakpoints",
    "classify_regimes", "sample_regime", "BoundsReport", "HypothesisError",
    "single_machine_bound", "theorem1_allocation", "theorem1_uniqueness_check",
    "theorem3_allocation", "theorem_bounds",
]
