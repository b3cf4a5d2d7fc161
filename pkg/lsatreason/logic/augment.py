"""Logic-driven negative sample augmentation.

Each operator edits exactly one expression of a set so that the result reads
almost the same but means something else. Candidate edits are enumerated in
expression order, edits that would only reproduce an expression already in the
set are skipped, and one candidate is drawn with the seeded `MCG64` generator.
"""

from abc import ABC, abstractmethod
from typing import Optional

from ..errors import AugmentationError
from .rng import MCG64
from .symbols import ExpressionSet, Implication, SymbolTable, negate
from .verbalize import verbalize_all


class AugmentOp(ABC):
    _registry = {}

    def __init_subclass__(cls, **kwargs):
        """
        Automatically register the subclass in the operator registry.

        Args:
            cls: The subclass being initialized.
            **kwargs: Additional keyword arguments.
        """
        super().__init_subclass__(**kwargs)
        cls._registry[cls.NAME] = cls

    @classmethod
    def create(cls, name: str, *args, **kwargs) -> "AugmentOp":
        """
        Create an instance of a registered operator.

        Args:
            name (str): Operator name ("delete", "reverse" or "negate").

        Returns:
            AugmentOp: The operator.
        """
        try:
            return cls._registry[name.lower()](*args, **kwargs)
        except KeyError:
            raise AugmentationError(f"unknown augmentation operator {name!r}") from None

    @classmethod
    def names(cls) -> list[str]:
        return list(cls._registry)

    @abstractmethod
    def candidates(self, exprs: ExpressionSet) -> list[ExpressionSet]:
        """
        All single-expression edits of `exprs` that change its meaning.

        Args:
            exprs (ExpressionSet): The set to edit.

        Returns:
            list[ExpressionSet]: Candidate results in enumeration order.
        """
        pass

    def __call__(self, exprs: ExpressionSet, rng: MCG64) -> ExpressionSet:
        if len(exprs) == 0:
            raise AugmentationError("cannot augment an empty expression set")
        options = self.candidates(exprs)
        if not options:
            raise AugmentationError(f"{self.NAME}: every edit reproduces an existing expression")
        result = options[rng.below(len(options))]
        assert result != exprs
        return result


class Delete(AugmentOp):
    NAME = "delete"

    def candidates(self, exprs: ExpressionSet) -> list[ExpressionSet]:
        return [exprs.remove_at(i) for i in range(len(exprs))]


class ReverseConditional(AugmentOp):
    NAME = "reverse"

    def candidates(self, exprs: ExpressionSet) -> list[ExpressionSet]:
        out = []
        for i, expr in enumerate(exprs):
            reversed_expr = Implication(expr.consequent, expr.antecedent)
            if reversed_expr not in exprs:
                out.append(exprs.replace(i, reversed_expr))
        return out


class NegateSymbol(AugmentOp):
    NAME = "negate"

    def candidates(self, exprs: ExpressionSet) -> list[ExpressionSet]:
        out = []
        for i, expr in enumerate(exprs):
            edits = (
                Implication(negate(expr.antecedent), expr.consequent),
                Implication(expr.antecedent, negate(expr.consequent)),
            )
            for edit in edits:
                if edit not in exprs:
                    out.append(exprs.replace(i, edit))
        return out


def augment_negative(exprs: ExpressionSet, op: str, seed: int = 0) -> ExpressionSet:
    """
    Builds a literally similar but logically different expression set.

    Args:
        exprs (ExpressionSet): The asserted expressions; must not be empty.
        op (str): "delete", "reverse" or "negate".
        seed (int, optional): Seed of the draw. Defaults to 0.

    Returns:
        ExpressionSet: The edited set; differs from `exprs` in exactly one expression.

    Raises:
        AugmentationError: If the set is empty or no meaning-changing edit exists.
    """
    return AugmentOp.create(op)(exprs, MCG64(seed))


def negative_contexts(
    exprs: ExpressionSet,
    table: SymbolTable,
    seed: int = 0,
) -> dict[str, Optional[str]]:
    """
    Verbalizes one negative context per operator.

    Args:
        exprs (ExpressionSet): The asserted expressions.
        table (SymbolTable): Symbol id -> surface text.
        seed (int, optional): Seed shared by all operators. Defaults to 0.

    Returns:
        dict[str, Optional[str]]: Operator name -> verbalized negative context,
            or None when the operator has no valid edit.
    """
    out: dict[str, Optional[str]] = {}
    for name in AugmentOp.names():
        try:
            out[name] = verbalize_all(augment_negative(exprs, name, seed), table)
        except AugmentationError:
            out[name] = None
    return out
