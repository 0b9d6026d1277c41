from builtins import float, int, list, tuple
from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class BoundCertificate:
    """
    Interval certified for the optimal Q^0 under degree weights.

    Attributes:
        forest_edges: Edges (u, v) of a maximum spanning forest under W(e) = 1/max(deg u, deg v).
        M: Total forest weight.
        lower: M / (3 sqrt(n)) - 1/3.
        upper: 2 M.
        n: Vertex count used in the lower bound.
    """
    forest_edges: Tuple[Tuple[int, int], ...]
    M: float
    lower: float
    upper: float
    n: int

    def contains(self, value: float, tolerance: float = 1e-12) -> bool:
        return self.lower - tolerance <= value <= self.upper + tolerance
