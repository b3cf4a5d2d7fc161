"""Game settings: who is assigned, where, and under which counting rules."""

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import GameConfigError


@dataclass(frozen=True)
class Participant:
    id: int
    name: str


@dataclass(frozen=True)
class Position:
    """
    A slot participants can be assigned to.

    Args:
        id (int): Row of the position in the assignment grid.
        name (str): Display name ("X committee", "Monday").
        index (int, optional): Ordinal for ordering games, 1-based.
    """

    id: int
    name: str
    index: Optional[int] = None


class Multiplicity(enum.Enum):
    EXACTLY_ONE = "exactly-one"
    AT_MOST_ONE = "at-most-one"


def name_key(name: str) -> str:
    # Single letters ("A", "X") are case-sensitive names; longer names are not.
    return name if len(name) == 1 else name.casefold()


@dataclass(frozen=True)
class GameConfig:
    """
    The participants x positions scenario of one logic game.

    Args:
        participants (tuple[Participant, ...]): Columns of the grid, ids 0..n-1.
        positions (tuple[Position, ...]): Rows of the grid, ids 0..m-1.
        multiplicity (Multiplicity): Whether every participant must be placed.
        capacities (tuple[tuple[int, int], ...]): Per-position (min, max) occupancy.
        ordered (bool): Whether positions carry ordinals 1..m.

    Raises:
        GameConfigError: If ids, names, ordinals or capacities are inconsistent.
    """

    participants: tuple[Participant, ...]
    positions: tuple[Position, ...]
    multiplicity: Multiplicity = Multiplicity.EXACTLY_ONE
    capacities: tuple[tuple[int, int], ...] = ()
    ordered: bool = False
    _participant_index: dict = field(default=None, init=False, repr=False, compare=False)
    _position_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        n_part = len(self.participants)
        if not self.capacities:
            object.__setattr__(self, "capacities", tuple((0, n_part) for _ in self.positions))
        else:
            object.__setattr__(self, "capacities", tuple(tuple(c) for c in self.capacities))
        self._validate()
        object.__setattr__(self, "_participant_index", {name_key(p.name): p for p in self.participants})
        object.__setattr__(self, "_position_index", {name_key(p.name): p for p in self.positions})

    def _validate(self):
        for i, p in enumerate(self.participants):
            if p.id != i:
                raise GameConfigError(f"participant {p.name!r} has id {p.id}, expected {i}")
        for i, p in enumerate(self.positions):
            if p.id != i:
                raise GameConfigError(f"position {p.name!r} has id {p.id}, expected {i}")
        names = [name_key(p.name) for p in self.participants]
        if len(set(names)) != len(names):
            raise GameConfigError("participant names must be unique")
        pos_names = [name_key(p.name) for p in self.positions]
        if len(set(pos_names)) != len(pos_names):
            raise GameConfigError("position names must be unique")
        if set(names) & set(pos_names):
            raise GameConfigError("a name cannot be both a participant and a position")
        if len(self.capacities) != len(self.positions):
            raise GameConfigError("one capacity is required per position")
        for (low, high), pos in zip(self.capacities, self.positions):
            if low < 0 or high < low:
                raise GameConfigError(f"invalid capacity [{low}, {high}] for {pos.name!r}")
        if self.ordered:
            indices = sorted(p.index for p in self.positions if p.index is not None)
            if indices != list(range(1, len(self.positions) + 1)):
                raise GameConfigError("ordered positions need indices 1..m without gaps")
        if self.multiplicity is Multiplicity.EXACTLY_ONE:
            n = len(self.participants)
            total_min = sum(c[0] for c in self.capacities)
            total_max = sum(c[1] for c in self.capacities)
            if not total_min <= n <= total_max:
                raise GameConfigError(
                    f"{n} participants cannot fill capacities summing to [{total_min}, {total_max}]"
                )

    @classmethod
    def build(
        cls,
        participants: Sequence[str],
        positions: Sequence[str],
        multiplicity: Multiplicity = Multiplicity.EXACTLY_ONE,
        capacities: Optional[Sequence[tuple[int, int]]] = None,
        ordered: bool = False,
    ) -> "GameConfig":
        """
        Builds a configuration from plain names, numbering ids in list order.

        Args:
            participants (Sequence[str]): Participant names.
            positions (Sequence[str]): Position names, in ordinal order for ordering games.
            multiplicity (Multiplicity, optional): Defaults to exactly-one.
            capacities (Sequence[tuple[int, int]], optional): Defaults to [0, |participants|].
            ordered (bool, optional): Give positions ordinals 1..m. Defaults to False.

        Returns:
            GameConfig: The validated configuration.
        """
        return cls(
            participants=tuple(Participant(i, name) for i, name in enumerate(participants)),
            positions=tuple(
                Position(i, name, i + 1 if ordered else None) for i, name in enumerate(positions)
            ),
            multiplicity=multiplicity,
            capacities=tuple(capacities or ()),
            ordered=ordered,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.positions), len(self.participants)

    def participant(self, name: str) -> Optional[Participant]:
        return self._participant_index.get(name_key(name))

    def position(self, name: str) -> Optional[Position]:
        return self._position_index.get(name_key(name))

    def ordinal(self, position_id: int) -> int:
        index = self.positions[position_id].index
        return index if index is not None else position_id + 1
