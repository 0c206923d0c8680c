# std
from enum import Enum
from typing import Iterable, List


class ActionSide(Enum):
    """Side from which the group acts on the object manifold"""

    LEFT = "left"
    RIGHT = "right"


class ReductionSide(Enum):
    """Which trivialization defines the reduced velocity xi"""

    RIGHT = "right"
    LEFT = "left"


def format_float(value: float) -> str:
    # 17 significant digits round-trip every double
    return f"{float(value):.17g}"


def format_floats(values: Iterable[float]) -> List[str]:
    return [format_float(v) for v in values]
