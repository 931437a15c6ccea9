from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from ..model import CapExceededError

ENUMERATION_CAP = 8


class RearrangementVariant(str, Enum):
    """Whether coalition members may overtake outsiders."""

    SWAPS = "swaps"
    NO_SWAPS = "no_swaps"

    @classmethod
    def parse(cls, value) -> "RearrangementVariant":
        if isinstance(value, cls):
            return value
        text = str(value).replace("-", "_").lower()
        return cls(text)


def check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(
            f"{n} agents exceeds the exhaustive-search cap of {cap}; "
            "raise the cap explicitly (runtime grows exponentially in n)")


def integer_scale(*values: Fraction) -> int:
    return math.lcm(*(Fraction(v).denominator for v in values))


INF = float("inf")
