"""Rule-based interpretation of constraint sentences and answer options.

A clause is matched against the lexicon rules in order and the first matching
rule decides its program. Slots are bound by position relative to the match,
nearest first. A relational result (To, Before, After, Adjacent) is negated
when a negation cue occurs between its left participant and the end of the
trigger ("B does not serve on X").
"""

import logging
import re
from typing import Optional

from ..errors import InterpretationError, ProgramSyntaxError, ProgramTypeError
from ..logic.identification import NEGATION_CUES, has_negation_cue
from ..program.ast import And, Node, Not, To, format_name
from ..program.parser import parse_program
from .entities import EntityCatalog, Mention, split_sentences
from .lexicon import SLOT, TriggerLexicon, default_lexicon

MAX_DEPTH = 8

_ROLES = {"P": "participant", "S": "position", "N": "number"}
_EACH = "\x00each\x00"

_PREMISE = re.compile(
    r"^\s*if\s+(.+?),\s*(?:then\s+)?(?=(?:which|what|each|how|who|then)\b)",
    re.IGNORECASE,
)
_ROSTER_PART = re.compile(r"^\s*([^:]+?)\s*:\s*(.*?)\s*[.]?\s*$")
_ROSTER_ITEMS = re.compile(r"\s*,\s*(?:and\s+)?|\s+and\s+", re.IGNORECASE)


class _Unresolved(Exception):
    pass


def _pick(side: list[Mention], role: str, k: int, slot: str) -> Mention:
    candidates = [m for m in side if m.role == role]
    if len(candidates) < k:
        raise _Unresolved(f"no {role} for slot {slot}")
    return candidates[k - 1]


def _instantiate(
    rule, match: re.Match, text: str, cat: EntityCatalog, lex: TriggerLexicon, depth: int
) -> list[Node]:
    mentions = cat.mentions(text)
    left = [m for m in mentions if m.end <= match.start()]
    right = [m for m in mentions if m.start >= match.start()]
    nearest_left = list(reversed(left))
    each: list[str] = []

    def fill(slot: re.Match) -> str:
        role, side, index = slot.group("role"), slot.group("side"), slot.group("index")
        if role == "@":
            clause = match.group(int(index))
            if not clause:
                raise _Unresolved(f"empty clause for slot {slot.group()}")
            node, diagnostic = interpret_clause(clause, cat, lex, depth + 1)
            if node is None:
                raise _Unresolved(f"clause {clause!r}: {diagnostic}")
            return f"({node.to_text()})"
        kind = _ROLES[role]
        if index in ("*", "&"):
            names = list(dict.fromkeys(m.name for m in (left if side == "<" else right) if m.role == kind))
            if not names:
                raise _Unresolved(f"no {kind} for slot {slot.group()}")
            if index == "*":
                return "{" + ",".join(format_name(n) for n in names) + "}"
            each.extend(names)
            return _EACH
        if side is None:
            candidates = [m for m in nearest_left if m.role == kind] or [m for m in right if m.role == kind]
            mention = _pick(candidates, kind, 1, slot.group())
        else:
            mention = _pick(nearest_left if side == "<" else right, kind, int(index), slot.group())
        return str(mention.value) if role == "N" else format_name(mention.name)

    filled = SLOT.sub(fill, rule.template)
    texts = [filled.replace(_EACH, format_name(name)) for name in each] if each else [filled]
    try:
        nodes = [parse_program(t) for t in texts]
    except (ProgramSyntaxError, ProgramTypeError) as e:
        raise _Unresolved(f"instantiated template does not parse: {e}") from None

    if rule.kind.category == "relational":
        floor = next((m.end for m in nearest_left if m.role == "participant"), 0)
        if has_negation_cue(text[floor : match.end()], NEGATION_CUES):
            nodes = [Not(node) for node in nodes]
    return nodes


def interpret_clause(
    text: str, cat: EntityCatalog, lex: TriggerLexicon, depth: int = 0
) -> tuple[Optional[Node], Optional[str]]:
    """
    Interprets one clause with the first matching lexicon rule.

    Args:
        text (str): The clause.
        cat (EntityCatalog): Entities of the game.
        lex (TriggerLexicon): Rules to try in order.
        depth (int, optional): Nesting depth of clause slots. Defaults to 0.

    Returns:
        tuple[Optional[Node], Optional[str]]: The program, or None and a diagnostic.
    """
    if depth > MAX_DEPTH:
        return None, "clauses nested too deeply"
    for rule in lex.rules:
        match = rule.pattern.search(text)
        if match is None:
            continue
        try:
            nodes = _instantiate(rule, match, text, cat, lex, depth)
        except _Unresolved as e:
            return None, f"lexicon line {rule.line}: {e}"
        return (nodes[0] if len(nodes) == 1 else And(tuple(nodes))), None
    return None, "no trigger matched"


def interpret_constraint(
    sentence: str, cat: EntityCatalog, lex: Optional[TriggerLexicon] = None
) -> Optional[Node]:
    """
    Interprets a constraint sentence into a program.

    Sentences that match no rule, or whose matched rule cannot fill a slot, are
    skipped: dropping a constraint only loosens the game.

    Args:
        sentence (str): The constraint sentence.
        cat (EntityCatalog): Entities of the game.
        lex (TriggerLexicon, optional): Defaults to the starter lexicon.

    Returns:
        Optional[Node]: The program, or None when the sentence is skipped.
    """
    node, diagnostic = interpret_clause(sentence, cat, lex or default_lexicon())
    if node is None:
        logging.debug("Skipping constraint %r: %s", sentence, diagnostic)
    return node


def interpret_context(
    context: str, cat: EntityCatalog, lex: Optional[TriggerLexicon] = None
) -> list[tuple[str, Optional[Node], Optional[str]]]:
    """
    Interprets every sentence after the leading one.

    Returns:
        list[tuple[str, Optional[Node], Optional[str]]]: (sentence, program, diagnostic) triples.
    """
    lex = lex or default_lexicon()
    return [(s, *interpret_clause(s, cat, lex)) for s in split_sentences(context)[1:]]


def roster_program(option: str, cat: EntityCatalog) -> Optional[Node]:
    """
    Reads a full roster such as "X: A, B, D; Y: C, E" as a conjunction of To atoms.

    Returns:
        Optional[Node]: The conjunction, or None when the text is not a roster.
    """
    parts = [p for p in re.split(r"[;\n]", option) if p.strip()]
    atoms = []
    for part in parts:
        match = _ROSTER_PART.match(part)
        if match is None:
            return None
        head = cat.resolve(match.group(1))
        if head is None or head[0] != "position":
            return None
        body = match.group(2)
        if not body or body.lower() == "none":
            continue
        for item in _ROSTER_ITEMS.split(body):
            if not item:
                continue
            resolved = cat.resolve(item)
            if resolved is None or resolved[0] != "participant":
                return None
            atoms.append(To(resolved[1], head[1]))
    if not atoms:
        return None
    return atoms[0] if len(atoms) == 1 else And(tuple(atoms))


def question_premise(question: str, cat: EntityCatalog, lex: Optional[TriggerLexicon] = None) -> Optional[Node]:
    """The program of a conditional stem ("If B serves on X, which ..."), if any."""
    match = _PREMISE.match(question)
    if match is None:
        return None
    node, diagnostic = interpret_clause(match.group(1), cat, lex or default_lexicon())
    if node is None:
        logging.debug("Ignoring question premise %r: %s", match.group(1), diagnostic)
    return node


def conjoin(first: Node, second: Node) -> Node:
    """AND of two programs, flattening nested conjunctions."""
    operands = []
    for node in (first, second):
        operands.extend(node.operands if isinstance(node, And) else (node,))
    return And(tuple(operands))


def interpret_option(
    question: str,
    option: str,
    cat: EntityCatalog,
    lex: Optional[TriggerLexicon] = None,
    option_index: Optional[int] = None,
) -> Node:
    """
    Interprets an answer option, conjoined with the question's premise when the stem is conditional.

    Args:
        question (str): The question stem.
        option (str): The option text.
        cat (EntityCatalog): Entities of the game.
        lex (TriggerLexicon, optional): Defaults to the starter lexicon.
        option_index (int, optional): Index of the option, carried by errors.

    Returns:
        Node: The option program.

    Raises:
        InterpretationError: If the option cannot be interpreted.
    """
    lex = lex or default_lexicon()
    program = roster_program(option, cat)
    if program is None:
        program, diagnostic = interpret_clause(option, cat, lex)
        if program is None:
            raise InterpretationError(f"option {option!r}: {diagnostic}", option_index)
    premise = question_premise(question, cat, lex)
    if premise is not None:
        program = conjoin(premise, program)
    return program
