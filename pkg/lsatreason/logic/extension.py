"""Logic extension: closing a set of implications under contraposition and transitivity.

The closure is explored breadth-first. Each round first contraposes the
expressions that appeared in the previous round, then joins every ordered pair
of known expressions in which at least one member appeared in the previous
round. Conclusions of a round only become premises in the next one, so the
order of the extended set is fully determined by the input order.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from .symbols import ExpressionSet, Implication, contrapose

CONTRAPOSITION = "contraposition"
TRANSITIVITY = "transitivity"


@dataclass(frozen=True)
class Derivation:
    """
    One derived implication together with the rule and premises that produced it.

    Args:
        conclusion (Implication): The derived implication.
        rule (str): Either "contraposition" or "transitivity".
        premises (tuple[Implication, ...]): One premise for contraposition, two for transitivity.
        round (int): The breadth-first round (1-based) in which it was derived.
    """

    conclusion: Implication
    rule: str
    premises: tuple[Implication, ...]
    round: int


def transitive_join(first: Implication, second: Implication) -> Optional[Implication]:
    """
    Transitive law: (a -> b) and (b -> c) give (a -> c).

    The middle literals must agree on both symbol and polarity. Joins that would
    produce an implication between literals of the same symbol are suppressed.

    Args:
        first (Implication): The implication providing the antecedent.
        second (Implication): The implication providing the consequent.

    Returns:
        Implication or None: The joined implication, or None when the rule does not apply.
    """
    if first.consequent != second.antecedent:
        return None
    if first.antecedent.symbol == second.consequent.symbol:
        return None
    return Implication(first.antecedent, second.consequent)


def derive(exprs: Iterable[Implication]) -> list[Derivation]:
    """
    Computes the closure of `exprs` and records how every new implication was obtained.

    Args:
        exprs (Iterable[Implication]): The asserted implications.

    Returns:
        list[Derivation]: One entry per implication not in the input, in derivation order.
    """
    known = list(ExpressionSet(exprs))
    seen = set(known)
    frontier_start = 0
    derivations: list[Derivation] = []
    round_no = 0

    while frontier_start < len(known):
        round_no += 1
        snapshot = len(known)
        found: list[Derivation] = []

        def _add(conclusion: Optional[Implication], rule: str, premises: tuple):
            if conclusion is None or conclusion in seen:
                return
            seen.add(conclusion)
            found.append(Derivation(conclusion, rule, premises, round_no))

        for i in range(frontier_start, snapshot):
            _add(contrapose(known[i]), CONTRAPOSITION, (known[i],))

        for i in range(snapshot):
            for j in range(snapshot):
                if i == j or (i < frontier_start and j < frontier_start):
                    continue
                _add(transitive_join(known[i], known[j]), TRANSITIVITY, (known[i], known[j]))

        known.extend(d.conclusion for d in found)
        derivations.extend(found)
        frontier_start = snapshot

    logging.debug("Closure finished after %d rounds with %d new expressions", round_no, len(derivations))
    return derivations


def extend_closure(exprs: ExpressionSet) -> ExpressionSet:
    """
    The extended set: everything derivable from `exprs` that `exprs` does not already contain.

    Args:
        exprs (ExpressionSet): The asserted implications.

    Returns:
        ExpressionSet: The extended implications in breadth-first derivation order.
    """
    return ExpressionSet(d.conclusion for d in derive(exprs))


def select_related(extended: ExpressionSet, option_symbols: Iterable[int]) -> ExpressionSet:
    """
    Keeps the implications that mention at least one of the option's symbols.

    Args:
        extended (ExpressionSet): The extended implications.
        option_symbols (Iterable[int]): Ids of the symbols found in the option.

    Returns:
        ExpressionSet: The related implications, original order preserved.
    """
    wanted = frozenset(getattr(s, "id", s) for s in option_symbols)
    return ExpressionSet(e for e in extended if e.symbols & wanted)
