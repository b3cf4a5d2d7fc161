"""Three-valued evaluation of programs over partial assignments.

Semantics in brief:
    To(p, pos)      the cell value.
    VALUE(p)        ordinal of p's True row; while p's column is open, the
                    interval of ordinals of its non-False rows. An unplaced
                    participant (all-False column) has no value, and every
                    comparison involving it is False.
    Before/After    VALUE(p) < VALUE(q) / VALUE(p) > VALUE(q); ordered games only.
    Adjacent        |VALUE(p) - VALUE(q)| = 1; ordered games only.
    COUNT(S[,pos])  interval [certain, certain + possible] of members of S in pos
                    (or placed anywhere when pos is omitted).
    MAX/MIN/ARG*    defined once membership and every member's value are determined.
    IfThen(A, C)    NOT conj(A) OR conj(C), Kleene.

On a complete assignment every Bool program evaluates to True or False.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ProgramBindError, ProgramTypeError
from ..game.assignment import Assignment, CellState
from ..game.config import GameConfig, Multiplicity, Participant, Position
from .ast import ExprType, FunctionKind, Node, walk
from .values import NumValue, TriBool

_CELL = {
    int(CellState.TRUE): TriBool.TRUE,
    int(CellState.FALSE): TriBool.FALSE,
    int(CellState.UNKNOWN): TriBool.UNKNOWN,
}


@dataclass
class EvalContext:
    """
    Everything a node needs to evaluate itself.

    Args:
        assignment (Assignment): The (partial) grid.
        cfg (GameConfig): The game it belongs to.
        adjacency (bool): Whether Adjacent is allowed. Defaults to True.
    """

    assignment: Assignment
    cfg: GameConfig
    adjacency: bool = True

    @property
    def n_participants(self) -> int:
        return len(self.cfg.participants)

    def participant_id(self, name: str) -> int:
        participant = self.cfg.participant(name)
        if participant is None:
            raise ProgramBindError(f"unknown participant {name!r}")
        return participant.id

    def position_id(self, name: str) -> int:
        position = self.cfg.position(name)
        if position is None:
            raise ProgramBindError(f"unknown position {name!r}")
        return position.id

    def cell(self, participant: int, position: int) -> TriBool:
        return _CELL[int(self.assignment.grid[position, participant])]

    def placed(self, participant: int) -> TriBool:
        column = self.assignment.grid[:, participant]
        if np.any(column == int(CellState.TRUE)):
            return TriBool.TRUE
        if not np.any(column == int(CellState.UNKNOWN)):
            return TriBool.FALSE
        if self.cfg.multiplicity is Multiplicity.EXACTLY_ONE:
            return TriBool.TRUE
        return TriBool.UNKNOWN

    def value(self, participant: int) -> NumValue:
        column = self.assignment.grid[:, participant]
        row = self.assignment.placed_at(participant)
        if row is not None:
            return NumValue.exact(self.cfg.ordinal(row))
        open_rows = np.flatnonzero(column == int(CellState.UNKNOWN))
        if open_rows.size == 0:
            return NumValue.missing()
        ordinals = [self.cfg.ordinal(int(r)) for r in open_rows]
        return NumValue(
            min(ordinals),
            max(ordinals),
            may_absent=self.cfg.multiplicity is Multiplicity.AT_MOST_ONE,
        )

    def require_ordered(self, kind: FunctionKind):
        if not self.cfg.ordered:
            raise ProgramBindError(f"{kind.value} needs an ordered game")

    def require_adjacency(self):
        if not self.adjacency:
            raise ProgramBindError("Adjacent is disabled for this evaluation")


def evaluate(ast: Node, a: Assignment, cfg: GameConfig, adjacency: bool = True) -> TriBool:
    """
    Evaluates a Bool program over a (partial) assignment.

    Args:
        ast (Node): The program.
        a (Assignment): The grid.
        cfg (GameConfig): The game configuration.
        adjacency (bool, optional): Allow Adjacent. Defaults to True.

    Returns:
        TriBool: Kleene truth value of the program.

    Raises:
        ProgramTypeError: If the program is not a Bool expression.
        ProgramBindError: On unknown entities or ordering functions in an unordered game.
    """
    if ast.TYPE is not ExprType.BOOL:
        raise ProgramTypeError(f"a program must be a bool expression, got {ast.TYPE.value}")
    return ast.evaluate(EvalContext(a, cfg, adjacency))


def bind(ast: Node, cfg: GameConfig) -> Node:
    """
    Checks that every entity reference resolves in `cfg` with the right role.

    Args:
        ast (Node): The program.
        cfg (GameConfig): The game configuration.

    Returns:
        Node: The same program, for chaining.

    Raises:
        ProgramBindError: If a name is unknown, used in the wrong role, or an
            ordering function appears in an unordered game.
    """
    if ast.TYPE is not ExprType.BOOL:
        raise ProgramTypeError(f"a program must be a bool expression, got {ast.TYPE.value}")
    for node in walk(ast):
        if node.KIND in (FunctionKind.BEFORE, FunctionKind.AFTER, FunctionKind.ADJACENT) and not cfg.ordered:
            raise ProgramBindError(f"{node.KIND.value} needs an ordered game")
        for role, name in node.entity_refs():
            if role == "participant" and cfg.participant(name) is None:
                hint = " (it is a position)" if cfg.position(name) is not None else ""
                raise ProgramBindError(f"unknown participant {name!r}{hint}")
            if role == "position" and cfg.position(name) is None:
                hint = " (it is a participant)" if cfg.participant(name) is not None else ""
                raise ProgramBindError(f"unknown position {name!r}{hint}")
    return ast


def free_entities(ast: Node, cfg: GameConfig) -> tuple[set[Participant], set[Position]]:
    """
    The participants and positions a bound program refers to.

    SELECT(pos) depends on every participant's column, so it contributes all participants.

    Args:
        ast (Node): A program bound to `cfg`.
        cfg (GameConfig): The game configuration.

    Returns:
        tuple[set[Participant], set[Position]]: Referenced participants and positions.
    """
    participants: set[Participant] = set()
    positions: set[Position] = set()
    for node in walk(ast):
        for role, name in node.entity_refs():
            if role == "participant":
                participants.add(_resolve(cfg.participant(name), name))
            elif role == "position":
                positions.add(_resolve(cfg.position(name), name))
            else:
                participants.update(cfg.participants)
    return participants, positions


def _resolve(entity: Optional[object], name: str):
    if entity is None:
        raise ProgramBindError(f"unbound entity {name!r}")
    return entity
