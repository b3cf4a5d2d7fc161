"""Exception types shared across the solver toolkit.

Every error raised on bad input derives from `LsatError`, itself a `ValueError`,
so callers that only care about "invalid input" can keep catching `ValueError`.
Propagation contradictions are not errors: they surface as `None` results.
"""

from typing import Optional


class LsatError(ValueError):
    """Base class for all toolkit errors."""


class GameConfigError(LsatError):
    """The participants/positions configuration is inconsistent."""


class ProgramSyntaxError(LsatError):
    """
    A program text does not follow the DSL grammar.

    Args:
        message (str): What went wrong.
        line (int): 1-based line of the offending token.
        column (int): 1-based column of the offending token.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class ProgramTypeError(LsatError):
    """An operator was applied to an operand of the wrong type."""


class ProgramBindError(LsatError):
    """A program references an entity that the game does not define."""


class LogicInputError(LsatError):
    """Symbol spans handed to logic identification are malformed."""


class VerbalizationError(LsatError):
    """An implication mentions a symbol with no surface text."""


class AugmentationError(LsatError):
    """No logically different variant could be produced."""


class EntityExtractionError(LsatError):
    """The leading sentence does not name both participants and positions."""


class InterpretationError(LsatError):
    """
    An option could not be turned into a program.

    Args:
        message (str): What went wrong.
        option_index (int, optional): Index of the option, 0..4.
    """

    def __init__(self, message: str, option_index: Optional[int] = None):
        super().__init__(message)
        self.option_index = option_index


class LexiconError(LsatError):
    """
    A lexicon file entry is malformed.

    Args:
        message (str): What went wrong.
        line (int): 1-based line number in the lexicon file.
    """

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (lexicon line {line})")
        self.line = line


class UnsatisfiableError(LsatError):
    """The deterministic constraints contradict each other."""


class LimitsExceeded(LsatError):
    """
    The search outgrew its node or assignment budget.

    Args:
        message (str): What limit was hit.
        stats (SearchStats): Statistics gathered up to the point of failure.
    """

    def __init__(self, message: str, stats):
        super().__init__(message)
        self.stats = stats


class DatasetError(LsatError):
    """
    A dataset record violates the schema.

    Args:
        message (str): What went wrong.
        record_id (str, optional): Id of the offending record, when known.
    """

    def __init__(self, message: str, record_id: Optional[str] = None):
        prefix = f"record {record_id}: " if record_id is not None else ""
        super().__init__(prefix + message)
        self.record_id = record_id


class ScaleError(LsatError):
    """The score conversion table is empty or not monotone."""
