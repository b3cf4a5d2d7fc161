"""Logic verbalization: rendering implications back into template sentences."""

from typing import Iterable

from ..errors import VerbalizationError
from .symbols import ExpressionSet, Implication, Literal, SymbolTable


def _surface(literal: Literal, table: SymbolTable) -> str:
    try:
        return table[literal.symbol]
    except KeyError:
        raise VerbalizationError(f"no surface text for symbol {literal.symbol}") from None


def verbalize(implication: Implication, table: SymbolTable) -> str:
    """
    Fills the template "If [do not] <antecedent>, then [will not] <consequent>".

    Args:
        implication (Implication): The implication to render.
        table (SymbolTable): Symbol id -> surface text.

    Returns:
        str: The rendered sentence.

    Raises:
        VerbalizationError: If either symbol is missing from the table.
    """
    antecedent = _surface(implication.antecedent, table)
    consequent = _surface(implication.consequent, table)
    if implication.antecedent.negated:
        antecedent = "do not " + antecedent
    if implication.consequent.negated:
        consequent = "will not " + consequent
    return f"If {antecedent}, then {consequent}"


def verbalize_all(exprs: Iterable[Implication], table: SymbolTable) -> str:
    """Verbalizes every implication and joins the sentences into one passage."""
    return " ".join(verbalize(e, table) + "." for e in exprs)


def verbalize_set(exprs: ExpressionSet, table: SymbolTable) -> list[str]:
    return [verbalize(e, table) for e in exprs]
