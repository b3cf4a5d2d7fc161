"""Configuration-file constructors.

A scale file looks like:

    score_scale(anchors=[(0.0, 120), (56.8, 151), (100.0, 180)])

and a limits file like:

    search_limits(max_nodes=200000, max_assignments=5000)
"""

from typing import Sequence

from ..harness.metrics import ScoreScale
from ..solver.limits import SearchLimits
from .registry import export


@export
def score_scale(anchors: Sequence[tuple[float, float]]) -> ScoreScale:
    """
    Build a raw-percent to scaled-score conversion table.

    Args:
        anchors (Sequence[tuple[float, float]]): (raw percent, scaled score) pairs.

    Returns:
        ScoreScale: The table.
    """
    return ScoreScale(anchors)


@export
def search_limits(max_nodes: int = SearchLimits.max_nodes, max_assignments: int = SearchLimits.max_assignments) -> SearchLimits:
    """
    Build the node and assignment budget of the AR solver.

    Args:
        max_nodes (int, optional): Maximum number of search nodes.
        max_assignments (int, optional): Maximum number of legitimate assignments.

    Returns:
        SearchLimits: The budget.
    """
    return SearchLimits(max_nodes, max_assignments)
