"""Trigger lexicons: ordered `pattern => template` rules.

A lexicon file holds one rule per line; blank lines and lines starting with `#`
are ignored. The pattern is a case-insensitive regular expression searched in
a clause; the template is a program whose slots are filled from the entities
mentioned around the match:

    [P<k]  [P>k]   k-th participant left of / right of the match (k >= 1)
    [S<k]  [S>k]   k-th position left / right
    [N<k]  [N>k]   k-th number left / right (digits or number words)
    [P]  [S]       nearest on the left, else nearest on the right
    [P<*]  [P>*]   every participant on that side, as a set literal {A,B}
    [P<&]  [P>&]   every participant on that side, one instance each, joined by AND
    [@k]           regex group k, interpreted recursively as a clause

"Left" means ending before the match starts; "right" means starting at or after it.

Example:

    \\b(?:serves?|assigned)\\b(?:\\s+\\w+)?\\s+(?:on|to)\\b => To([P<&],[S>1])
"""

import logging
import re
from dataclasses import dataclass
from importlib.resources import files
from typing import Optional

from ..errors import LexiconError, ProgramSyntaxError, ProgramTypeError
from ..program.ast import FunctionKind, Node
from ..program.parser import parse_program

SLOT = re.compile(r"\[(?P<role>[PSN@])(?P<side>[<>])?(?P<index>\d+|\*|&)?\]")

_HEAD = re.compile(r"\s*([A-Za-z_]+)")

_DUMMY = {"P": "p", "S": "s", "N": "1", "@": "To(p,s)"}


@dataclass(frozen=True)
class LexiconRule:
    """
    One trigger rule.

    Args:
        pattern (re.Pattern): Compiled case-insensitive trigger pattern.
        template (str): Program text with slots.
        kind (FunctionKind): Function named by the head of the template.
        line (int): Line of the rule in its file.
    """

    pattern: re.Pattern
    template: str
    kind: FunctionKind
    line: int


@dataclass(frozen=True)
class TriggerLexicon:
    rules: tuple[LexiconRule, ...]
    source: str = "<string>"

    def __len__(self) -> int:
        return len(self.rules)


def _template_kind(template: str, line: int) -> FunctionKind:
    match = _HEAD.match(template)
    head = match.group(1).upper() if match else ""
    if head == "NOT":
        return FunctionKind.NOT
    if head == "IF":
        return FunctionKind.IF_THEN
    node = Node.lookup(head)
    if node is None:
        raise LexiconError(f"template {template!r} must start with a function name", line)
    return node.KIND


def _check_slots(pattern: re.Pattern, template: str, line: int):
    each = 0
    for slot in SLOT.finditer(template):
        role, side, index = slot.group("role"), slot.group("side"), slot.group("index")
        if role == "@":
            if side is not None or index is None or not index.isdigit():
                raise LexiconError(f"clause slot {slot.group()!r} needs a group number and no side", line)
            if not 1 <= int(index) <= pattern.groups:
                raise LexiconError(f"clause slot {slot.group()!r} refers to a missing group", line)
            continue
        if index in ("*", "&"):
            if role != "P" or side is None:
                raise LexiconError(f"set slot {slot.group()!r} needs role P and a side", line)
            each += index == "&"
        elif index is not None and (side is None or int(index) < 1):
            raise LexiconError(f"slot {slot.group()!r} needs a side and an index of at least 1", line)
        elif index is None and side is not None:
            raise LexiconError(f"slot {slot.group()!r} needs an index", line)
    if each > 1:
        raise LexiconError("a template can expand at most one [P<&]/[P>&] slot", line)

    def dummy(slot: re.Match) -> str:
        if slot.group("index") == "*":
            return "{p}"
        return _DUMMY[slot.group("role")]

    try:
        parse_program(SLOT.sub(dummy, template))
    except (ProgramSyntaxError, ProgramTypeError) as e:
        raise LexiconError(f"template {template!r} is not a valid program: {e}", line) from None


def parse_rule(text: str, line: int) -> LexiconRule:
    """
    Parses a single `pattern => template` line.

    Raises:
        LexiconError: If the separator, the pattern, the template head or a slot is invalid.
    """
    if " => " not in text:
        raise LexiconError("expected 'pattern => template'", line)
    source, template = (part.strip() for part in text.rsplit(" => ", 1))
    if not source or not template:
        raise LexiconError("empty pattern or template", line)
    try:
        pattern = re.compile(source, re.IGNORECASE)
    except re.error as e:
        raise LexiconError(f"invalid pattern {source!r}: {e}", line) from None
    kind = _template_kind(template, line)
    _check_slots(pattern, template, line)
    return LexiconRule(pattern, template, kind, line)


def parse_lexicon(text: str, source: str = "<string>") -> TriggerLexicon:
    rules = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rules.append(parse_rule(line, lineno))
    logging.debug("Loaded %d lexicon rules from %s", len(rules), source)
    return TriggerLexicon(tuple(rules), source)


def load_lexicon(path: str) -> TriggerLexicon:
    """
    Reads a lexicon file.

    Args:
        path (str): Path of the UTF-8 lexicon file.

    Returns:
        TriggerLexicon: The rules in file order.

    Raises:
        LexiconError: With the line number of the first malformed rule.
    """
    with open(path, encoding="utf-8") as f:
        return parse_lexicon(f.read(), path)


_DEFAULT: Optional[TriggerLexicon] = None


def default_lexicon() -> TriggerLexicon:
    """The starter lexicon shipped with the package."""
    global _DEFAULT
    if _DEFAULT is None:
        text = files("lsatreason.interpret.data").joinpath("starter.lex").read_text(encoding="utf-8")
        _DEFAULT = parse_lexicon(text, "starter.lex")
    return _DEFAULT
