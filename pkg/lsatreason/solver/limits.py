from dataclasses import asdict, dataclass

from ..errors import LsatError


@dataclass(frozen=True)
class SearchLimits:
    """
    Budget of one solve.

    Args:
        max_nodes (int): Maximum number of search nodes created.
        max_assignments (int): Maximum number of legitimate assignments collected.
    """

    max_nodes: int = 10**6
    max_assignments: int = 10**5

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_assignments <= 0:
            raise LsatError(f"search limits must be positive, got {self}")

    @classmethod
    def parse(cls, text: str) -> "SearchLimits":
        """Reads the `N,M` command-line form."""
        try:
            max_nodes, max_assignments = (int(part) for part in text.split(","))
        except ValueError:
            raise LsatError(f"expected limits as 'max_nodes,max_assignments', got {text!r}") from None
        return cls(max_nodes, max_assignments)


@dataclass
class SearchStats:
    """Counters of one solve; updated in place by the executor."""

    nodes: int = 0
    pruned: int = 0
    frontier_peak: int = 0
    assignments: int = 0

    def to_dict(self) -> dict:
        return asdict(self)
