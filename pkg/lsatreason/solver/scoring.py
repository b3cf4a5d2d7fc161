"""Option scores and answer selection."""

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ..errors import LsatError
from ..game.assignment import Assignment, is_complete
from ..game.config import GameConfig
from ..program.ast import Node
from ..program.evaluator import evaluate
from ..program.values import TriBool

N_OPTIONS = 5


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class ScoreMode(ABC):
    NAME: str
    _registry = {}

    def __init_subclass__(cls, **kwargs):
        """
        Registers a new subclass in the score mode registry.

        Args:
            cls: The subclass being initialized.
            **kwargs: Additional keyword arguments.
        """
        super().__init_subclass__(**kwargs)
        cls._registry[cls.NAME] = cls

    @classmethod
    def create(cls, name: str, *args, **kwargs) -> "ScoreMode":
        """
        Creates an instance of a score mode subclass.

        Args:
            name (str): The name of the mode, "count" or "ratio".

        Returns:
            An instance of the specified score mode.
        """
        if name not in cls._registry:
            raise LsatError(f"unknown score mode {name!r}, expected one of {sorted(cls._registry)}")
        return cls._registry[name](*args, **kwargs)

    @classmethod
    def names(cls) -> list[str]:
        return sorted(cls._registry)

    @abstractmethod
    def __call__(self, satisfied: int, total: int) -> float:
        """
        Turns a count of satisfying assignments into a score.

        Args:
            satisfied (int): Legitimate assignments on which the option holds.
            total (int): All legitimate assignments.

        Returns:
            float: The score.
        """
        pass


class CountMode(ScoreMode):
    NAME = "count"

    def __call__(self, satisfied: int, total: int) -> float:
        return float(satisfied)


class RatioMode(ScoreMode):
    NAME = "ratio"

    def __call__(self, satisfied: int, total: int) -> float:
        return satisfied / total if total else 0.0


@dataclass(frozen=True)
class OptionScore:
    """
    Score of one answer option.

    Args:
        option_index (int): 0..4.
        mode (str): Name of the score mode.
        value (float): The score; a ratio lies in [0, 1].
        interpretable (bool): False when the option had no program.
        diagnostic (str, optional): Why the option could not be scored.
    """

    option_index: int
    mode: str
    value: float
    interpretable: bool = True
    diagnostic: Optional[str] = None


def score_option(
    legit: Iterable[Assignment],
    option_ast: Optional[Node],
    mode: Union[str, ScoreMode],
    cfg: GameConfig,
    option_index: int = 0,
    diagnostic: Optional[str] = None,
) -> OptionScore:
    """
    Scores an option program over the legitimate assignments.

    Args:
        legit (Iterable[Assignment]): Complete legitimate assignments.
        option_ast (Node, optional): The option program; None for an uninterpretable option.
        mode (str or ScoreMode): "count", "ratio" or a mode instance.
        cfg (GameConfig): The game configuration.
        option_index (int, optional): Index of the option. Defaults to 0.
        diagnostic (str, optional): Reason an option has no program.

    Returns:
        OptionScore: The score; 0 and flagged for an uninterpretable option.
    """
    mode = ScoreMode.create(mode) if isinstance(mode, str) else mode
    if option_ast is None:
        return OptionScore(option_index, mode.NAME, 0.0, False, diagnostic or "option not interpretable")
    legit = list(legit)
    if not all(is_complete(a) for a in legit):
        raise LsatError("options can only be scored over complete assignments")
    satisfied = sum(evaluate(option_ast, a, cfg) is TriBool.TRUE for a in legit)
    return OptionScore(option_index, mode.NAME, mode(satisfied, len(legit)))


def select_answer(scores: Sequence[OptionScore], polarity: Polarity = Polarity.POSITIVE) -> int:
    """
    Picks the best option: highest score, or lowest under negative polarity.

    Ties go to the lowest option index. Under negative polarity uninterpretable
    options are passed over unless no option is interpretable.

    Args:
        scores (Sequence[OptionScore]): Exactly five scores in option order.
        polarity (Polarity, optional): Defaults to Polarity.POSITIVE.

    Returns:
        int: The selected option index.
    """
    if len(scores) != N_OPTIONS:
        raise LsatError(f"expected {N_OPTIONS} option scores, got {len(scores)}")
    values = np.array([s.value for s in scores], dtype=float)
    if polarity is Polarity.POSITIVE:
        return int(np.argmax(values))
    usable = np.array([s.interpretable for s in scores])
    if not usable.any():
        usable[:] = True
    return int(np.argmin(np.where(usable, values, np.inf)))
