"""Logic identification: turning conditional sentences into implications.

Symbol spans are supplied by the caller (gold annotations or a chunker). A
literal is negated when a negation cue occurs inside its span or among the few
tokens right before it, and each sentence contributes at most one implication,
taken from the first conditional pattern that matches:

    unless   "~b unless a"   -> (a -> b)
    due to   "b due to a"    -> (a -> b)
    thus     "a thus b"      -> (a -> b)
    if       "if a, then b"  -> (a -> b)
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..errors import LogicInputError
from .symbols import ExpressionSet, Implication, Literal, LogicSymbol, negate

NEGATION_CUES = ("not", "n't", "unable", "no", "few", "little", "neither", "none of")

_TOKEN = re.compile(r"[A-Za-z']+|[^\sA-Za-z']")


@dataclass(frozen=True)
class ConditionalPatterns:
    """
    Trigger phrases for the four conditional templates, and the negation cues.

    Args:
        unless (tuple[str, ...]): Triggers of "~b unless a".
        due_to (tuple[str, ...]): Triggers of "b due to a".
        thus (tuple[str, ...]): Triggers of "a thus b".
        if_then (tuple[str, ...]): Triggers of "if a, then b".
        negation_cues (tuple[str, ...]): Words that negate a nearby symbol.
        window (int): How many tokens before a span are searched for a cue.
    """

    unless: tuple[str, ...] = ("unless",)
    due_to: tuple[str, ...] = ("due to",)
    thus: tuple[str, ...] = ("thus",)
    if_then: tuple[str, ...] = ("if",)
    negation_cues: tuple[str, ...] = NEGATION_CUES
    window: int = 3
    _regexes: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        def _compile(words):
            alternatives = "|".join(re.escape(w) for w in sorted(words, key=len, reverse=True))
            return re.compile(rf"\b(?:{alternatives})\b", re.IGNORECASE)

        regexes = {
            "unless": _compile(self.unless),
            "due_to": _compile(self.due_to),
            "thus": _compile(self.thus),
            "if_then": _compile(self.if_then),
        }
        object.__setattr__(self, "_regexes", regexes)

    def trigger(self, name: str) -> re.Pattern:
        return self._regexes[name]

    def all_triggers(self) -> list[re.Pattern]:
        return list(self._regexes.values())


DEFAULT_PATTERNS = ConditionalPatterns()


@dataclass(frozen=True)
class _Span:
    start: int
    end: int
    symbol: int


def _locate_spans(sentence: str, spans: Iterable[tuple[str, LogicSymbol]]) -> list[_Span]:
    lowered = sentence.lower()
    located = []
    for text, symbol in spans:
        symbol_id = getattr(symbol, "id", symbol)
        start = lowered.find(text.lower())
        if start < 0:
            logging.warning("Span %r not found in sentence %r", text, sentence)
            continue
        located.append(_Span(start, start + len(text), symbol_id))
    located.sort(key=lambda s: (s.start, s.end))
    for a, b in zip(located, located[1:]):
        if b.start < a.end:
            raise LogicInputError(f"overlapping symbol spans in sentence {sentence!r}")
    return located


def has_negation_cue(text: str, cues: Sequence[str] = NEGATION_CUES) -> bool:
    """
    Whether any negation cue occurs in `text`.

    Multi-word cues must appear as consecutive tokens; "n't" matches as a token suffix.
    """
    tokens = [t.lower() for t in _TOKEN.findall(text)]
    for cue in cues:
        if cue == "n't":
            if any(t.endswith("n't") for t in tokens):
                return True
            continue
        parts = cue.split()
        for i in range(len(tokens) - len(parts) + 1):
            if tokens[i : i + len(parts)] == parts:
                return True
    return False


def _preceding_window(sentence: str, start: int, floor: int, patterns: ConditionalPatterns) -> str:
    """The last `window` tokens before `start`, cut at `floor`, at commas and at triggers."""
    text = sentence[floor:start]
    text = text.rsplit(",", 1)[-1]
    for regex in patterns.all_triggers():
        matches = list(regex.finditer(text))
        if matches:
            text = text[matches[-1].end() :]
    tokens = _TOKEN.findall(text)
    return " ".join(tokens[-patterns.window :]) if patterns.window > 0 else ""


def _literals(sentence: str, spans: list[_Span], patterns: ConditionalPatterns) -> list[Literal]:
    literals = []
    floor = 0
    for span in spans:
        inside = sentence[span.start : span.end]
        before = _preceding_window(sentence, span.start, floor, patterns)
        negated = has_negation_cue(inside, patterns.negation_cues) or has_negation_cue(
            before, patterns.negation_cues
        )
        literals.append(Literal(span.symbol, negated))
        floor = span.end
    return literals


def _around(spans: list[_Span], position: int, end: int) -> tuple[Optional[int], Optional[int]]:
    """Index of the nearest span ending before `position` and of the nearest one starting after `end`."""
    left = None
    right = None
    for i, span in enumerate(spans):
        if span.end <= position:
            left = i
        elif span.start >= end and right is None:
            right = i
    return left, right


def _sentence_implication(
    sentence: str,
    spans: list[_Span],
    patterns: ConditionalPatterns,
) -> Optional[Implication]:
    if len(spans) < 2:
        return None
    literals = _literals(sentence, spans, patterns)

    match = patterns.trigger("unless").search(sentence)
    if match:
        left, right = _around(spans, match.start(), match.end())
        if left is not None and right is not None:
            return _make(literals[right], negate(literals[left]))

    match = patterns.trigger("due_to").search(sentence)
    if match:
        left, right = _around(spans, match.start(), match.end())
        if left is not None and right is not None:
            return _make(literals[right], literals[left])

    match = patterns.trigger("thus").search(sentence)
    if match:
        left, right = _around(spans, match.start(), match.end())
        if left is not None and right is not None:
            return _make(literals[left], literals[right])

    match = patterns.trigger("if_then").search(sentence)
    if match:
        _, first = _around(spans, match.start(), match.end())
        if first is not None and first + 1 < len(spans):
            return _make(literals[first], literals[first + 1])

    return None


def _make(antecedent: Literal, consequent: Literal) -> Optional[Implication]:
    if antecedent.symbol == consequent.symbol:
        logging.debug("Dropping self-implication over symbol %d", antecedent.symbol)
        return None
    return Implication(antecedent, consequent)


def identify_logic(
    sentences: Sequence[str],
    symbol_spans: Sequence[Iterable[tuple[str, LogicSymbol]]],
    patterns: ConditionalPatterns = DEFAULT_PATTERNS,
) -> ExpressionSet:
    """
    Identifies one implication per conditional sentence.

    Args:
        sentences (Sequence[str]): The sentences of the passage.
        symbol_spans (Sequence[Iterable[tuple[str, LogicSymbol]]]): For each sentence,
            the (span text, symbol) pairs found in it.
        patterns (ConditionalPatterns, optional): Triggers and negation cues.

    Returns:
        ExpressionSet: The identified implications in sentence order.

    Raises:
        LogicInputError: If the spans of one sentence overlap, or the two
            sequences have different lengths.
    """
    if len(sentences) != len(symbol_spans):
        raise LogicInputError("one list of symbol spans is required per sentence")
    exprs = []
    for sentence, spans in zip(sentences, symbol_spans):
        located = _locate_spans(sentence, spans)
        expr = _sentence_implication(sentence, located, patterns)
        if expr is not None:
            exprs.append(expr)
    return ExpressionSet(exprs)


def identification_recall(predicted: Iterable[Implication], gold: Iterable[Implication]) -> float:
    """
    Fraction of gold implications that were identified.

    Args:
        predicted (Iterable[Implication]): Identified implications.
        gold (Iterable[Implication]): Annotated implications.

    Returns:
        float: Recall in [0, 1]; 1.0 when there is nothing to recall.
    """
    gold_set = set(gold)
    if not gold_set:
        return 1.0
    return len(gold_set & set(predicted)) / len(gold_set)
