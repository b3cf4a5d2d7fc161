"""Constraint program syntax trees.

Programs are built from four kinds of expressions:

    Bool    To, Before, After, Adjacent, comparisons, IfThen, AND, OR, NOT
    Num     VALUE, COUNT, MAX, MIN, integer constants, + and -
    Set     participant set literals {A,B} and SELECT(position)
    Entity  participant references, ARGMAX, ARGMIN

Nodes are immutable and type-checked on construction. Every node prints itself
in canonical form (`to_text`) and evaluates itself over a partial assignment
(`evaluate`, see `evaluator.EvalContext`). Function-call nodes register under
their canonical name so that the parser can find them case-insensitively.
"""

import enum
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Optional

from ..errors import ProgramTypeError
from .values import EntityValue, NumValue, TriBool


class ExprType(enum.Enum):
    BOOL = "bool"
    NUM = "num"
    SET = "set"
    ENTITY = "entity"


class FunctionKind(enum.Enum):
    TO = "To"
    BEFORE = "Before"
    AFTER = "After"
    ADJACENT = "Adjacent"
    IF_THEN = "IfThen"
    AND = "AND"
    OR = "OR"
    NOT = "NOT"
    VALUE = "VALUE"
    COUNT = "COUNT"
    SELECT = "SELECT"
    MAX = "MAX"
    MIN = "MIN"
    ARGMAX = "ARGMAX"
    ARGMIN = "ARGMIN"
    EQ = "="
    NE = "!="
    LT = "<"
    GT = ">"
    LE = "<="
    GE = ">="
    PLUS = "+"
    MINUS = "-"

    @property
    def category(self) -> str:
        return _CATEGORIES[self]


_CATEGORIES = {
    **{k: "relational" for k in ("TO", "BEFORE", "AFTER", "ADJACENT")},
    **{k: "compositional" for k in ("IF_THEN", "AND", "OR", "NOT")},
    **{k: "operator" for k in ("VALUE", "COUNT", "SELECT", "MAX", "MIN", "ARGMAX", "ARGMIN")},
    **{k: "comparator" for k in ("EQ", "NE", "LT", "GT", "LE", "GE")},
    **{k: "arithmetic" for k in ("PLUS", "MINUS")},
}
_CATEGORIES = {FunctionKind[k]: v for k, v in _CATEGORIES.items()}

COMPARATORS = frozenset(k for k in FunctionKind if k.category == "comparator")

# Printing precedence, loosest first.
PREC_OR, PREC_AND, PREC_NOT, PREC_CMP, PREC_SUM, PREC_ATOM = range(1, 7)

KEYWORDS = frozenset({"AND", "OR", "NOT", "IF", "THEN"})
_BARE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def format_name(name: str) -> str:
    """Prints an entity name bare when it is a plain identifier, quoted otherwise."""
    if _BARE_NAME.fullmatch(name) and name.upper() not in KEYWORDS and name.upper() not in Node.call_names():
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


class Node(ABC):
    KIND: Optional[FunctionKind] = None
    TYPE: ExprType
    PRECEDENCE = PREC_ATOM
    # Call-syntax signature read by the parser: "name", "name?", "set", "boolset", "expr", "expr*".
    SIGNATURE: Optional[tuple[str, ...]] = None
    _registry: dict[str, type] = {}

    def __init_subclass__(cls, **kwargs):
        """
        Registers call-syntax nodes under the upper-cased canonical function name.

        Args:
            cls: The subclass being initialized.
            **kwargs: Additional keyword arguments.
        """
        super().__init_subclass__(**kwargs)
        if cls.SIGNATURE is not None and cls.KIND is not None:
            cls._registry[cls.KIND.value.upper()] = cls

    @classmethod
    def lookup(cls, name: str) -> Optional[type]:
        return cls._registry.get(name.upper())

    @classmethod
    def call_names(cls) -> frozenset:
        return frozenset(cls._registry)

    def children(self) -> tuple["Node", ...]:
        return ()

    def entity_refs(self) -> Iterator[tuple[str, str]]:
        """Yields (role, name) pairs: role is "participant", "position" or "all-participants"."""
        return iter(())

    @abstractmethod
    def to_text(self) -> str:
        pass

    @abstractmethod
    def evaluate(self, ctx):
        """
        Evaluates the node over `ctx.assignment`.

        Args:
            ctx (EvalContext): Assignment, game configuration and entity lookups.

        Returns:
            TriBool, NumValue, EntityValue or list[TriBool] depending on TYPE.
        """
        pass

    def __str__(self) -> str:
        return self.to_text()


def walk(node: Node) -> Iterator[Node]:
    yield node
    for child in node.children():
        yield from walk(child)


def _expect(node: Node, expected: ExprType, where: str):
    if node.TYPE is not expected:
        raise ProgramTypeError(f"{where} expects a {expected.value} expression, got {node.TYPE.value} {node.to_text()!r}")


def _wrap(node: Node, min_prec: int) -> str:
    text = node.to_text()
    return f"({text})" if node.PRECEDENCE < min_prec else text


# Leaves


@dataclass(frozen=True)
class Const(Node):
    value: int
    TYPE = ExprType.NUM

    def to_text(self) -> str:
        return str(self.value)

    def evaluate(self, ctx) -> NumValue:
        return NumValue.exact(self.value)


@dataclass(frozen=True)
class ParticipantRef(Node):
    name: str
    TYPE = ExprType.ENTITY

    def entity_refs(self):
        yield "participant", self.name

    def to_text(self) -> str:
        return format_name(self.name)

    def evaluate(self, ctx) -> EntityValue:
        return EntityValue(True, frozenset((ctx.participant_id(self.name),)))


@dataclass(frozen=True)
class ParticipantSet(Node):
    names: tuple[str, ...]
    TYPE = ExprType.SET

    def entity_refs(self):
        for name in self.names:
            yield "participant", name

    def to_text(self) -> str:
        return "{" + ",".join(format_name(n) for n in self.names) + "}"

    def evaluate(self, ctx) -> list[TriBool]:
        wanted = {ctx.participant_id(n) for n in self.names}
        return [TriBool.of(pid in wanted) for pid in range(ctx.n_participants)]


# Relational functions


@dataclass(frozen=True)
class To(Node):
    participant: str
    position: str
    KIND = FunctionKind.TO
    TYPE = ExprType.BOOL
    SIGNATURE = ("name", "name")

    def entity_refs(self):
        yield "participant", self.participant
        yield "position", self.position

    def to_text(self) -> str:
        return f"To({format_name(self.participant)},{format_name(self.position)})"

    def evaluate(self, ctx) -> TriBool:
        return ctx.cell(ctx.participant_id(self.participant), ctx.position_id(self.position))


@dataclass(frozen=True)
class _Ordering(Node):
    first: str
    second: str
    TYPE = ExprType.BOOL

    def entity_refs(self):
        yield "participant", self.first
        yield "participant", self.second

    def to_text(self) -> str:
        return f"{self.KIND.value}({format_name(self.first)},{format_name(self.second)})"

    def _values(self, ctx) -> tuple[NumValue, NumValue]:
        ctx.require_ordered(self.KIND)
        return ctx.value(ctx.participant_id(self.first)), ctx.value(ctx.participant_id(self.second))


@dataclass(frozen=True)
class Before(_Ordering):
    KIND = FunctionKind.BEFORE
    SIGNATURE = ("name", "name")

    def evaluate(self, ctx) -> TriBool:
        return compare_nums(FunctionKind.LT, *self._values(ctx))


@dataclass(frozen=True)
class After(_Ordering):
    KIND = FunctionKind.AFTER
    SIGNATURE = ("name", "name")

    def evaluate(self, ctx) -> TriBool:
        return compare_nums(FunctionKind.GT, *self._values(ctx))


@dataclass(frozen=True)
class Adjacent(_Ordering):
    KIND = FunctionKind.ADJACENT
    SIGNATURE = ("name", "name")

    def evaluate(self, ctx) -> TriBool:
        ctx.require_adjacency()
        left, right = self._values(ctx)
        diff = left - right
        if diff.absent:
            return TriBool.FALSE
        if diff.lo is not None and diff.lo == diff.hi:
            result = TriBool.of(abs(diff.lo) == 1)
        else:
            lo = diff.lo if diff.lo is not None else -1
            hi = diff.hi if diff.hi is not None else 1
            reachable = (lo <= -1 <= hi) or (lo <= 1 <= hi)
            result = TriBool.UNKNOWN if reachable else TriBool.FALSE
        if result is TriBool.TRUE and diff.may_absent:
            return TriBool.UNKNOWN
        return result


# Compositional functions


@dataclass(frozen=True)
class And(Node):
    operands: tuple[Node, ...]
    KIND = FunctionKind.AND
    TYPE = ExprType.BOOL
    PRECEDENCE = PREC_AND
    SIGNATURE = ("expr*",)

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ProgramTypeError("AND needs at least two operands")
        for op in self.operands:
            _expect(op, ExprType.BOOL, "AND")

    def children(self):
        return self.operands

    def to_text(self) -> str:
        return " AND ".join(_wrap(op, PREC_AND + 1) for op in self.operands)

    def evaluate(self, ctx) -> TriBool:
        return TriBool.all(op.evaluate(ctx) for op in self.operands)


@dataclass(frozen=True)
class Or(Node):
    operands: tuple[Node, ...]
    KIND = FunctionKind.OR
    TYPE = ExprType.BOOL
    PRECEDENCE = PREC_OR
    SIGNATURE = ("expr*",)

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ProgramTypeError("OR needs at least two operands")
        for op in self.operands:
            _expect(op, ExprType.BOOL, "OR")

    def children(self):
        return self.operands

    def to_text(self) -> str:
        return " OR ".join(_wrap(op, PREC_OR + 1) for op in self.operands)

    def evaluate(self, ctx) -> TriBool:
        return TriBool.any(op.evaluate(ctx) for op in self.operands)


@dataclass(frozen=True)
class Not(Node):
    operand: Node
    KIND = FunctionKind.NOT
    TYPE = ExprType.BOOL
    PRECEDENCE = PREC_NOT
    SIGNATURE = ("expr",)

    def __post_init__(self):
        _expect(self.operand, ExprType.BOOL, "NOT")

    def children(self):
        return (self.operand,)

    def to_text(self) -> str:
        return "NOT " + _wrap(self.operand, PREC_NOT)

    def evaluate(self, ctx) -> TriBool:
        return ~self.operand.evaluate(ctx)


@dataclass(frozen=True)
class IfThen(Node):
    antecedents: tuple[Node, ...]
    consequents: tuple[Node, ...]
    KIND = FunctionKind.IF_THEN
    TYPE = ExprType.BOOL
    SIGNATURE = ("boolset", "boolset")

    def __post_init__(self):
        if not self.antecedents or not self.consequents:
            raise ProgramTypeError("IfThen needs non-empty condition and consequence sets")
        for op in self.antecedents + self.consequents:
            _expect(op, ExprType.BOOL, "IfThen")

    def children(self):
        return self.antecedents + self.consequents

    def to_text(self) -> str:
        first = ", ".join(op.to_text() for op in self.antecedents)
        second = ", ".join(op.to_text() for op in self.consequents)
        return f"IfThen({{{first}}}, {{{second}}})"

    def evaluate(self, ctx) -> TriBool:
        condition = TriBool.all(op.evaluate(ctx) for op in self.antecedents)
        if condition is TriBool.FALSE:
            return TriBool.TRUE
        return ~condition | TriBool.all(op.evaluate(ctx) for op in self.consequents)


# Operators


@dataclass(frozen=True)
class Value(Node):
    participant: str
    KIND = FunctionKind.VALUE
    TYPE = ExprType.NUM
    SIGNATURE = ("name",)

    def entity_refs(self):
        yield "participant", self.participant

    def to_text(self) -> str:
        return f"VALUE({format_name(self.participant)})"

    def evaluate(self, ctx) -> NumValue:
        return ctx.value(ctx.participant_id(self.participant))


@dataclass(frozen=True)
class Select(Node):
    position: str
    KIND = FunctionKind.SELECT
    TYPE = ExprType.SET
    SIGNATURE = ("name",)

    def entity_refs(self):
        yield "position", self.position
        yield "all-participants", ""

    def to_text(self) -> str:
        return f"SELECT({format_name(self.position)})"

    def evaluate(self, ctx) -> list[TriBool]:
        pos = ctx.position_id(self.position)
        return [ctx.cell(pid, pos) for pid in range(ctx.n_participants)]


@dataclass(frozen=True)
class Count(Node):
    members: Node
    position: Optional[str] = None
    KIND = FunctionKind.COUNT
    TYPE = ExprType.NUM
    SIGNATURE = ("set", "name?")

    def __post_init__(self):
        _expect(self.members, ExprType.SET, "COUNT")

    def children(self):
        return (self.members,)

    def entity_refs(self):
        if self.position is not None:
            yield "position", self.position

    def to_text(self) -> str:
        if self.position is None:
            return f"COUNT({self.members.to_text()})"
        return f"COUNT({self.members.to_text()},{format_name(self.position)})"

    def evaluate(self, ctx) -> NumValue:
        membership = self.members.evaluate(ctx)
        pos = ctx.position_id(self.position) if self.position is not None else None
        certain = possible = 0
        for pid, member in enumerate(membership):
            where = ctx.cell(pid, pos) if pos is not None else ctx.placed(pid)
            counted = member & where
            if counted is TriBool.TRUE:
                certain += 1
            elif counted is TriBool.UNKNOWN:
                possible += 1
        return NumValue(certain, certain + possible)


@dataclass(frozen=True)
class _Extreme(Node):
    members: Node

    def __post_init__(self):
        _expect(self.members, ExprType.SET, self.KIND.value)

    def children(self):
        return (self.members,)

    def to_text(self) -> str:
        return f"{self.KIND.value}({self.members.to_text()})"

    def _member_values(self, ctx) -> Optional[dict[int, int]]:
        """Ordinals of the placed members, or None while membership or placement is open."""
        values = {}
        for pid, member in enumerate(self.members.evaluate(ctx)):
            if member is TriBool.UNKNOWN:
                return None
            if member is TriBool.FALSE:
                continue
            value = ctx.value(pid)
            if value.absent:
                continue
            if not value.is_exact:
                return None
            values[pid] = value.lo
        return values


@dataclass(frozen=True)
class Max(_Extreme):
    KIND = FunctionKind.MAX
    TYPE = ExprType.NUM
    SIGNATURE = ("set",)

    def evaluate(self, ctx) -> NumValue:
        values = self._member_values(ctx)
        if values is None:
            return NumValue(may_absent=True)
        return NumValue.exact(max(values.values())) if values else NumValue.missing()


@dataclass(frozen=True)
class Min(_Extreme):
    KIND = FunctionKind.MIN
    TYPE = ExprType.NUM
    SIGNATURE = ("set",)

    def evaluate(self, ctx) -> NumValue:
        values = self._member_values(ctx)
        if values is None:
            return NumValue(may_absent=True)
        return NumValue.exact(min(values.values())) if values else NumValue.missing()


@dataclass(frozen=True)
class ArgMax(_Extreme):
    KIND = FunctionKind.ARGMAX
    TYPE = ExprType.ENTITY
    SIGNATURE = ("set",)

    def evaluate(self, ctx) -> EntityValue:
        values = self._member_values(ctx)
        if values is None:
            return EntityValue(False)
        best = max(values.values(), default=None)
        return EntityValue(True, frozenset(p for p, v in values.items() if v == best))


@dataclass(frozen=True)
class ArgMin(_Extreme):
    KIND = FunctionKind.ARGMIN
    TYPE = ExprType.ENTITY
    SIGNATURE = ("set",)

    def evaluate(self, ctx) -> EntityValue:
        values = self._member_values(ctx)
        if values is None:
            return EntityValue(False)
        best = min(values.values(), default=None)
        return EntityValue(True, frozenset(p for p, v in values.items() if v == best))


# Comparators and arithmetic


@dataclass(frozen=True)
class Compare(Node):
    op: FunctionKind
    left: Node
    right: Node
    TYPE = ExprType.BOOL
    PRECEDENCE = PREC_CMP

    def __post_init__(self):
        if self.op not in COMPARATORS:
            raise ProgramTypeError(f"{self.op.value!r} is not a comparator")
        if self.left.TYPE is ExprType.ENTITY or self.right.TYPE is ExprType.ENTITY:
            if self.op not in (FunctionKind.EQ, FunctionKind.NE):
                raise ProgramTypeError(f"participants can only be compared with = and !=")
            _expect(self.left, ExprType.ENTITY, self.op.value)
            _expect(self.right, ExprType.ENTITY, self.op.value)
        else:
            _expect(self.left, ExprType.NUM, self.op.value)
            _expect(self.right, ExprType.NUM, self.op.value)

    @property
    def KIND(self) -> FunctionKind:
        return self.op

    def children(self):
        return (self.left, self.right)

    def to_text(self) -> str:
        return f"{_wrap(self.left, PREC_SUM)} {self.op.value} {_wrap(self.right, PREC_SUM)}"

    def evaluate(self, ctx) -> TriBool:
        left = self.left.evaluate(ctx)
        right = self.right.evaluate(ctx)
        if isinstance(left, EntityValue):
            if not (left.determined and right.determined):
                return TriBool.UNKNOWN
            same = TriBool.of(bool(left.members & right.members))
            return same if self.op is FunctionKind.EQ else ~same
        return compare_nums(self.op, left, right)


@dataclass(frozen=True)
class Arith(Node):
    op: FunctionKind
    left: Node
    right: Node
    TYPE = ExprType.NUM
    PRECEDENCE = PREC_SUM

    def __post_init__(self):
        if self.op not in (FunctionKind.PLUS, FunctionKind.MINUS):
            raise ProgramTypeError(f"{self.op.value!r} is not an arithmetic operator")
        _expect(self.left, ExprType.NUM, self.op.value)
        _expect(self.right, ExprType.NUM, self.op.value)

    @property
    def KIND(self) -> FunctionKind:
        return self.op

    def children(self):
        return (self.left, self.right)

    def to_text(self) -> str:
        return f"{_wrap(self.left, PREC_SUM)} {self.op.value} {_wrap(self.right, PREC_ATOM)}"

    def evaluate(self, ctx) -> NumValue:
        left = self.left.evaluate(ctx)
        right = self.right.evaluate(ctx)
        return left + right if self.op is FunctionKind.PLUS else left - right


def _definitely(op: FunctionKind, left: NumValue, right: NumValue) -> TriBool:
    """Compares two intervals; None bounds are unbounded."""
    lo1, hi1, lo2, hi2 = left.lo, left.hi, right.lo, right.hi

    def lt(a, b):
        return a is not None and b is not None and a < b

    def le(a, b):
        return a is not None and b is not None and a <= b

    if op is FunctionKind.LT:
        return TriBool.TRUE if lt(hi1, lo2) else TriBool.FALSE if le(hi2, lo1) else TriBool.UNKNOWN
    if op is FunctionKind.LE:
        return TriBool.TRUE if le(hi1, lo2) else TriBool.FALSE if lt(hi2, lo1) else TriBool.UNKNOWN
    if op is FunctionKind.GT:
        return _definitely(FunctionKind.LT, right, left)
    if op is FunctionKind.GE:
        return _definitely(FunctionKind.LE, right, left)
    if op is FunctionKind.EQ:
        if lo1 is not None and lo1 == hi1 == lo2 == hi2:
            return TriBool.TRUE
        return TriBool.FALSE if lt(hi1, lo2) or lt(hi2, lo1) else TriBool.UNKNOWN
    return ~_definitely(FunctionKind.EQ, left, right)


def compare_nums(op: FunctionKind, left: NumValue, right: NumValue) -> TriBool:
    """
    Three-valued comparison of two numeric approximations.

    Any comparison involving an undefined value (an unplaced participant) is False.

    Args:
        op (FunctionKind): One of the comparator kinds.
        left (NumValue): Left operand.
        right (NumValue): Right operand.

    Returns:
        TriBool: True or False when every possible value pair agrees, Unknown otherwise.
    """
    if left.absent or right.absent:
        return TriBool.FALSE
    result = _definitely(op, left, right)
    if result is TriBool.TRUE and (left.may_absent or right.may_absent):
        return TriBool.UNKNOWN
    return result
