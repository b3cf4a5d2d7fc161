from .config import GameConfig, Multiplicity, Participant, Position
from .assignment import (
    Assignment,
    CellState,
    enumerate_completions,
    is_complete,
    new_assignment,
    propagate,
    set_cell,
    set_cells,
    validate,
)
