"""Tri-state assignment grids and unit propagation.

An assignment is a positions x participants matrix whose cells are True, False
or Unknown. Assignments are immutable: `set_cell` returns a fresh grid with the
consequences of the new cell propagated, or None when the grid becomes
contradictory.

Propagation rules, applied to a fixpoint:
    column (multiplicity)  a True falsifies the rest of its column; more than one
                           True is a contradiction. Under exactly-one, a column
                           with a single non-False cell makes it True, and an
                           all-False column is a contradiction.
    row (capacity)         a row at its maximum falsifies its Unknowns; a row that
                           can only reach its minimum with every Unknown turns
                           them True; exceeding the maximum or missing the
                           minimum is a contradiction.
"""

import enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import GameConfig, Multiplicity, Participant, Position


class CellState(enum.IntEnum):
    FALSE = 0
    TRUE = 1
    UNKNOWN = -1


_F, _T, _U = int(CellState.FALSE), int(CellState.TRUE), int(CellState.UNKNOWN)
_SYMBOLS = {_T: "T", _F: "F", _U: "."}


class Assignment:
    """
    An immutable tri-state grid, rows are positions and columns participants.

    Args:
        grid (np.ndarray): int8 matrix with values in {1, 0, -1}.
    """

    __slots__ = ("grid", "_key")

    def __init__(self, grid: np.ndarray):
        grid = np.array(grid, dtype=np.int8)
        if grid.ndim != 2:
            raise ValueError("assignment grid must be two-dimensional")
        grid.setflags(write=False)
        self.grid = grid
        self._key = (grid.shape, grid.tobytes())

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "Assignment":
        """
        Builds a grid from rows written with T, F and '.' characters.

        Args:
            rows (Sequence[str]): One string per position, one character per participant.

        Returns:
            Assignment: The grid.
        """
        lookup = {"T": _T, "F": _F, ".": _U}
        if not rows:
            return cls(np.zeros((0, 0), dtype=np.int8))
        return cls(np.array([[lookup[c] for c in row] for row in rows], dtype=np.int8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return "Assignment(" + "/".join("".join(_SYMBOLS[int(v)] for v in row) for row in self.grid) + ")"

    def cell(self, participant: int, position: int) -> CellState:
        return CellState(int(self.grid[position, participant]))

    def column(self, participant: int) -> np.ndarray:
        return self.grid[:, participant]

    def row(self, position: int) -> np.ndarray:
        return self.grid[position, :]

    def placed_at(self, participant: int) -> Optional[int]:
        """Row of the participant's True cell, or None."""
        hits = np.flatnonzero(self.grid[:, participant] == _T)
        return int(hits[0]) if hits.size else None

    def column_determined(self, participant: int) -> bool:
        return not bool(np.any(self.grid[:, participant] == _U))

    def refines(self, other: "Assignment") -> bool:
        """Whether this grid agrees with every determined cell of `other`."""
        if self.grid.shape != other.grid.shape:
            return False
        known = other.grid != _U
        return bool(np.all(self.grid[known] == other.grid[known]))

    def render(self, cfg: GameConfig) -> str:
        """
        Fixed-width debug table: one row per position, cells in {T, F, .}.

        Args:
            cfg (GameConfig): Supplies the row and column labels.

        Returns:
            str: The table, LF-terminated lines.
        """
        label_width = max([len(p.name) for p in cfg.positions] + [0])
        widths = [max(len(p.name), 1) for p in cfg.participants]
        header = " " * label_width + "".join(" " + p.name.rjust(w) for p, w in zip(cfg.participants, widths))
        lines = [header.rstrip()]
        for pos in cfg.positions:
            cells = "".join(" " + _SYMBOLS[int(v)].rjust(w) for v, w in zip(self.grid[pos.id], widths))
            lines.append((pos.name.ljust(label_width) + cells).rstrip())
        return "\n".join(lines) + "\n"


def new_assignment(cfg: GameConfig) -> Assignment:
    """
    The root assignment: every cell Unknown.

    Args:
        cfg (GameConfig): The game configuration.

    Returns:
        Assignment: An all-Unknown grid of shape (|positions|, |participants|).
    """
    return Assignment(np.full(cfg.shape, _U, dtype=np.int8))


def _propagate(grid: np.ndarray, cfg: GameConfig) -> bool:
    """Applies the propagation rules in place; False signals a contradiction."""
    exactly_one = cfg.multiplicity is Multiplicity.EXACTLY_ONE
    changed = True
    while changed:
        changed = False
        for j in range(grid.shape[1]):
            col = grid[:, j]
            trues = int(np.count_nonzero(col == _T))
            if trues > 1:
                return False
            unknown = col == _U
            if trues == 1:
                if unknown.any():
                    col[unknown] = _F
                    changed = True
            elif exactly_one:
                open_rows = np.flatnonzero(col != _F)
                if open_rows.size == 0:
                    return False
                if open_rows.size == 1:
                    col[open_rows[0]] = _T
                    changed = True
        for i, (low, high) in enumerate(cfg.capacities):
            row = grid[i, :]
            trues = int(np.count_nonzero(row == _T))
            unknown = row == _U
            n_unknown = int(np.count_nonzero(unknown))
            if trues > high or trues + n_unknown < low:
                return False
            if n_unknown == 0:
                continue
            if trues == high:
                row[unknown] = _F
                changed = True
            elif trues + n_unknown == low:
                row[unknown] = _T
                changed = True
    return True


def set_cell(
    a: Assignment,
    participant: Participant,
    position: Position,
    value: bool,
    cfg: GameConfig,
) -> Optional[Assignment]:
    """
    Sets one cell and propagates its consequences.

    Args:
        a (Assignment): The current grid.
        participant (Participant): Column to set.
        position (Position): Row to set.
        value (bool): The new cell value.
        cfg (GameConfig): Supplies multiplicity and capacities.

    Returns:
        Assignment or None: The propagated grid, or None on contradiction.
    """
    return set_cells(a, [(participant, position, value)], cfg)


def set_cells(
    a: Assignment,
    cells: Iterable[tuple[Participant, Position, bool]],
    cfg: GameConfig,
) -> Optional[Assignment]:
    """
    Sets several cells at once, then propagates.

    Args:
        a (Assignment): The current grid.
        cells (Iterable[tuple[Participant, Position, bool]]): Cells to set.
        cfg (GameConfig): Supplies multiplicity and capacities.

    Returns:
        Assignment or None: The propagated grid, or None on contradiction.
    """
    grid = a.grid.copy()
    for participant, position, value in cells:
        target = _T if value else _F
        current = int(grid[position.id, participant.id])
        if current == target:
            continue
        if current != _U:
            return None
        grid[position.id, participant.id] = target
    if not _propagate(grid, cfg):
        return None
    return Assignment(grid)


def propagate(a: Assignment, cfg: GameConfig) -> Optional[Assignment]:
    """Closes a grid under the propagation rules without setting anything new."""
    grid = a.grid.copy()
    return Assignment(grid) if _propagate(grid, cfg) else None


def enumerate_completions(
    a: Assignment,
    cfg: GameConfig,
    scope: Iterable[Participant],
) -> list[Assignment]:
    """
    All extensions of `a` in which every participant of `scope` is fully determined.

    Participants are expanded by id, positions by id; under at-most-one the
    "unplaced" branch comes after every placement.

    Args:
        a (Assignment): The grid to extend.
        cfg (GameConfig): The game configuration.
        scope (Iterable[Participant]): Participants whose columns must be determined.

    Returns:
        list[Assignment]: The extensions, possibly empty.
    """
    frontier = [a]
    for participant in sorted(set(scope), key=lambda p: p.id):
        expanded: list[Assignment] = []
        for node in frontier:
            if node.column_determined(participant.id):
                expanded.append(node)
                continue
            column = node.column(participant.id)
            for position in cfg.positions:
                if column[position.id] == _U:
                    child = set_cell(node, participant, position, True, cfg)
                    if child is not None:
                        expanded.append(child)
            if cfg.multiplicity is Multiplicity.AT_MOST_ONE:
                unplaced = [(participant, pos, False) for pos in cfg.positions if column[pos.id] == _U]
                child = set_cells(node, unplaced, cfg)
                if child is not None:
                    expanded.append(child)
        frontier = expanded
    return frontier


def is_complete(a: Assignment) -> bool:
    return not bool(np.any(a.grid == _U))


def validate(a: Assignment, cfg: GameConfig) -> bool:
    """
    Whether multiplicity and capacity hold on the determined part of the grid.

    Args:
        a (Assignment): The grid to check.
        cfg (GameConfig): The game configuration.

    Returns:
        bool: False when some rule is already provably violated.
    """
    grid = a.grid
    if grid.shape != cfg.shape:
        return False
    trues_per_column = np.count_nonzero(grid == _T, axis=0)
    if np.any(trues_per_column > 1):
        return False
    if cfg.multiplicity is Multiplicity.EXACTLY_ONE:
        if np.any(np.all(grid == _F, axis=0)) and grid.shape[0] > 0:
            return False
    trues_per_row = np.count_nonzero(grid == _T, axis=1)
    open_per_row = np.count_nonzero(grid != _F, axis=1)
    for i, (low, high) in enumerate(cfg.capacities):
        if trues_per_row[i] > high or open_per_row[i] < low:
            return False
    return True
