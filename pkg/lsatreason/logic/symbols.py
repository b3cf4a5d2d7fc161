"""Propositional symbols, literals and implications.

A logical symbol is a text constituent extracted from a passage ("have
keyboarding skills"); literals are possibly negated symbols and implications
connect two literals. All values are immutable.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from ..errors import LogicInputError


@dataclass(frozen=True)
class LogicSymbol:
    """
    An atomic proposition.

    Args:
        id (int): Identifier, unique within one problem.
        surface (str): The text span the symbol stands for.
    """

    id: int
    surface: str

    def __post_init__(self):
        if not self.surface.strip():
            raise LogicInputError(f"symbol {self.id} has an empty surface")


@dataclass(frozen=True, order=True)
class Literal:
    symbol: int
    negated: bool = False

    def __str__(self) -> str:
        return ("~" if self.negated else "") + str(self.symbol)

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        negated = text.startswith("~")
        try:
            return cls(int(text.lstrip("~")), negated)
        except ValueError:
            raise LogicInputError(f"malformed literal {text!r}") from None


@dataclass(frozen=True, order=True)
class Implication:
    """
    A conditional between two literals over distinct symbols.

    Args:
        antecedent (Literal): The "if" side.
        consequent (Literal): The "then" side.

    Raises:
        LogicInputError: If both literals share a symbol.
    """

    antecedent: Literal
    consequent: Literal

    def __post_init__(self):
        if self.antecedent.symbol == self.consequent.symbol:
            raise LogicInputError(f"self-implication over symbol {self.antecedent.symbol}")

    @property
    def symbols(self) -> frozenset[int]:
        return frozenset((self.antecedent.symbol, self.consequent.symbol))

    def __str__(self) -> str:
        return f"{self.antecedent} -> {self.consequent}"

    @classmethod
    def parse(cls, text: str) -> "Implication":
        left, sep, right = text.partition("->")
        if not sep:
            raise LogicInputError(f"malformed implication {text!r}")
        return cls(Literal.parse(left), Literal.parse(right))


def negate(literal: Literal) -> Literal:
    return Literal(literal.symbol, not literal.negated)


def contrapose(implication: Implication) -> Implication:
    """
    Contraposition: (a -> b) becomes (~b -> ~a).

    Args:
        implication (Implication): The implication to contrapose.

    Returns:
        Implication: The contrapositive.
    """
    return Implication(negate(implication.consequent), negate(implication.antecedent))


class ExpressionSet:
    """
    An ordered, duplicate-free, immutable collection of implications.

    Iteration follows insertion order; adding an implication that is already
    present keeps the first occurrence.
    """

    __slots__ = ("_exprs", "_index")

    def __init__(self, exprs: Iterable[Implication] = ()):
        ordered: dict[Implication, None] = {}
        for expr in exprs:
            ordered.setdefault(expr, None)
        self._exprs = tuple(ordered)
        self._index = frozenset(self._exprs)

    def __iter__(self) -> Iterator[Implication]:
        return iter(self._exprs)

    def __len__(self) -> int:
        return len(self._exprs)

    def __contains__(self, expr) -> bool:
        return expr in self._index

    def __getitem__(self, i: int) -> Implication:
        return self._exprs[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpressionSet):
            return NotImplemented
        return self._exprs == other._exprs

    def __hash__(self) -> int:
        return hash(self._exprs)

    def __repr__(self) -> str:
        return "ExpressionSet([" + ", ".join(str(e) for e in self._exprs) + "])"

    def as_set(self) -> frozenset[Implication]:
        return self._index

    def union(self, other: Iterable[Implication]) -> "ExpressionSet":
        return ExpressionSet((*self._exprs, *other))

    def difference(self, other: Iterable[Implication]) -> "ExpressionSet":
        removed = frozenset(other)
        return ExpressionSet(e for e in self._exprs if e not in removed)

    def replace(self, i: int, expr: Implication) -> "ExpressionSet":
        return ExpressionSet((*self._exprs[:i], expr, *self._exprs[i + 1 :]))

    def remove_at(self, i: int) -> "ExpressionSet":
        return ExpressionSet((*self._exprs[:i], *self._exprs[i + 1 :]))

    @property
    def symbols(self) -> frozenset[int]:
        out: set[int] = set()
        for expr in self._exprs:
            out |= expr.symbols
        return frozenset(out)

    def dumps(self) -> str:
        """
        Serializes the set, one `[~]id -> [~]id` implication per LF-terminated line.

        Returns:
            str: The serialized text (empty for an empty set).
        """
        return "".join(f"{expr}\n" for expr in self._exprs)

    @classmethod
    def loads(cls, text: str) -> "ExpressionSet":
        return cls(Implication.parse(line) for line in text.splitlines() if line.strip())


SymbolTable = Mapping[int, str]


def symbol_table(symbols: Union[Iterable[LogicSymbol], SymbolTable]) -> dict[int, str]:
    """
    Builds an id -> surface mapping, checking that ids are unique.

    Args:
        symbols: Either LogicSymbol objects or an existing mapping.

    Returns:
        dict[int, str]: The symbol surfaces keyed by id.
    """
    if isinstance(symbols, Mapping):
        return dict(symbols)
    table: dict[int, str] = {}
    for symbol in symbols:
        if symbol.id in table:
            raise LogicInputError(f"duplicate symbol id {symbol.id}")
        table[symbol.id] = symbol.surface
    return table
