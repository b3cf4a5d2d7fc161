"""Value domains of the three-valued program evaluator."""

import enum
from dataclasses import dataclass
from typing import Iterable, Optional


class TriBool(enum.Enum):
    """Kleene truth values."""

    FALSE = 0
    TRUE = 1
    UNKNOWN = 2

    @staticmethod
    def of(value: bool) -> "TriBool":
        return TriBool.TRUE if value else TriBool.FALSE

    @staticmethod
    def all(args: Iterable["TriBool"]) -> "TriBool":
        result = TriBool.TRUE
        for arg in args:
            if arg is TriBool.FALSE:
                return TriBool.FALSE
            if arg is TriBool.UNKNOWN:
                result = TriBool.UNKNOWN
        return result

    @staticmethod
    def any(args: Iterable["TriBool"]) -> "TriBool":
        result = TriBool.FALSE
        for arg in args:
            if arg is TriBool.TRUE:
                return TriBool.TRUE
            if arg is TriBool.UNKNOWN:
                result = TriBool.UNKNOWN
        return result

    def __invert__(self) -> "TriBool":
        if self is TriBool.TRUE:
            return TriBool.FALSE
        if self is TriBool.FALSE:
            return TriBool.TRUE
        return self

    def __and__(self, other: "TriBool") -> "TriBool":
        return TriBool.all((self, other))

    def __or__(self, other: "TriBool") -> "TriBool":
        return TriBool.any((self, other))

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class NumValue:
    """
    A sound over-approximation of an integer under a partial assignment.

    Args:
        lo (int, optional): Lower bound, None when unbounded.
        hi (int, optional): Upper bound, None when unbounded.
        absent (bool): The value is certainly undefined (an unplaced participant).
        may_absent (bool): The value may turn out undefined.
    """

    lo: Optional[int] = None
    hi: Optional[int] = None
    absent: bool = False
    may_absent: bool = False

    @staticmethod
    def exact(v: int) -> "NumValue":
        return NumValue(v, v)

    @staticmethod
    def missing() -> "NumValue":
        return NumValue(None, None, absent=True)

    @property
    def is_exact(self) -> bool:
        return not self.absent and not self.may_absent and self.lo is not None and self.lo == self.hi

    def __add__(self, other: "NumValue") -> "NumValue":
        if self.absent or other.absent:
            return NumValue.missing()
        return NumValue(
            None if self.lo is None or other.lo is None else self.lo + other.lo,
            None if self.hi is None or other.hi is None else self.hi + other.hi,
            may_absent=self.may_absent or other.may_absent,
        )

    def __sub__(self, other: "NumValue") -> "NumValue":
        if self.absent or other.absent:
            return NumValue.missing()
        return NumValue(
            None if self.lo is None or other.hi is None else self.lo - other.hi,
            None if self.hi is None or other.lo is None else self.hi - other.lo,
            may_absent=self.may_absent or other.may_absent,
        )


@dataclass(frozen=True)
class EntityValue:
    """
    A participant-valued result.

    Args:
        determined (bool): Whether `members` is final.
        members (frozenset[int]): Participant ids the expression denotes; several on ties.
    """

    determined: bool
    members: frozenset = frozenset()
