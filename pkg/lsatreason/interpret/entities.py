"""Participants and positions of a game, and where they are mentioned in text.

`extract_entities` reads the leading sentence of a context: coordinated lists
("A, B, C, and D", "the X committee and the Y committee") become entity
groups, and a position range ("Monday through Saturday", "1 through 7")
becomes an ordered group. The earlier group holds the participants, the later
one the positions.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import EntityExtractionError
from ..game.config import GameConfig, Multiplicity, name_key

WEEKDAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")

NUMBER_WORDS = {
    "zero": 0,
    "one": 1,
    "two": 2,
    "three": 3,
    "four": 4,
    "five": 5,
    "six": 6,
    "seven": 7,
    "eight": 8,
    "nine": 9,
    "ten": 10,
    "eleven": 11,
    "twelve": 12,
}

_SENTENCE_END = re.compile(r"(?<=[.!?])\s+(?=\S)")

_WORD = r"[A-Za-z0-9][\w'-]*"
_ITEM = rf"(?:(?:the|a|an)\s+)?{_WORD}(?:\s+(?!(?:and|or)\b){_WORD})?"
_SEP = r"(?:\s*,\s*(?:and|or)\s+|\s*,\s*|\s+(?:and|or)\s+)"
_GROUP = re.compile(rf"(?<![\w'-]){_ITEM}(?:{_SEP}{_ITEM})+", re.IGNORECASE)
_SPLIT_ITEMS = re.compile(_SEP, re.IGNORECASE)
_ARTICLE = re.compile(r"^(?:the|a|an)\s+", re.IGNORECASE)
_RANGE = re.compile(r"(?<![\w'-])(\w+)\s+through\s+(\w+)(?![\w'-])", re.IGNORECASE)
_NUMBER = re.compile(
    r"(?<![\w'-])(\d+|" + "|".join(NUMBER_WORDS) + r")(?![\w'-])",
    re.IGNORECASE,
)


def split_sentences(text: str) -> list[str]:
    """Splits a passage at sentence-final punctuation followed by whitespace."""
    return [s.strip() for s in _SENTENCE_END.split(text.strip()) if s.strip()]


def number_value(token: str) -> Optional[int]:
    if token.isdigit():
        return int(token)
    return NUMBER_WORDS.get(token.lower())


@dataclass(frozen=True)
class Mention:
    """
    One occurrence of an entity or a number in a text.

    Args:
        start (int): Offset of the first character.
        end (int): Offset past the last character.
        role (str): "participant", "position" or "number".
        name (str): Canonical entity name, or the number as written.
        value (int, optional): Integer value of a number mention.
    """

    start: int
    end: int
    role: str
    name: str
    value: Optional[int] = None


def _head_noun_aliases(names: Sequence[str]) -> list[tuple[str, str]]:
    """ "X committee", "Y committee" -> aliases "X", "Y" when every name shares the head noun."""
    split = [name.rsplit(" ", 1) for name in names]
    if len(names) < 2 or any(len(parts) != 2 for parts in split):
        return []
    heads = {parts[1].casefold() for parts in split}
    if len(heads) != 1:
        return []
    return [(parts[0], name) for parts, name in zip(split, names)]


def _surface_pattern(surface: str) -> str:
    body = re.escape(surface)
    if len(surface) > 1:
        body = f"(?i:{body})"
    return rf"(?<![\w'-]){body}(?![\w'-])"


@dataclass(frozen=True)
class EntityCatalog:
    """
    The named entities of one game.

    Args:
        participants (tuple[str, ...]): Participant names in order.
        positions (tuple[str, ...]): Position names, in ordinal order when `ordered`.
        aliases (tuple[tuple[str, str], ...]): (alias, canonical name) pairs.
        ordered (bool): Whether positions form a sequence.

    Raises:
        EntityExtractionError: If a name is duplicated or used in both roles.
    """

    participants: tuple[str, ...]
    positions: tuple[str, ...]
    aliases: tuple[tuple[str, str], ...] = ()
    ordered: bool = False
    _roles: dict = field(default=None, init=False, repr=False, compare=False)
    _regex: re.Pattern = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        roles = {}
        for role, names in (("participant", self.participants), ("position", self.positions)):
            for name in names:
                if not name:
                    raise EntityExtractionError("entity names must be non-empty")
                if name_key(name) in roles:
                    raise EntityExtractionError(f"entity name {name!r} is listed twice")
                roles[name_key(name)] = (role, name)
        for alias, canonical in self.aliases:
            if name_key(canonical) not in roles:
                raise EntityExtractionError(f"alias {alias!r} refers to unknown entity {canonical!r}")
            roles.setdefault(name_key(alias), roles[name_key(canonical)])
        surfaces = sorted({surface for surface, _ in roles.values()} | {a for a, _ in self.aliases}, key=len, reverse=True)
        regex = re.compile("|".join(_surface_pattern(s) for s in surfaces)) if surfaces else None
        object.__setattr__(self, "_roles", roles)
        object.__setattr__(self, "_regex", regex)

    @classmethod
    def build(cls, participants: Sequence[str], positions: Sequence[str], ordered: bool = False) -> "EntityCatalog":
        """
        Builds a catalog from plain names, deriving head-noun aliases for both groups.

        Args:
            participants (Sequence[str]): Participant names.
            positions (Sequence[str]): Position names.
            ordered (bool, optional): Whether positions form a sequence. Defaults to False.

        Returns:
            EntityCatalog: The catalog.
        """
        aliases = _head_noun_aliases(participants) + _head_noun_aliases(positions)
        taken = {name_key(n) for n in list(participants) + list(positions)}
        aliases = [(a, c) for a, c in aliases if name_key(a) not in taken]
        return cls(tuple(participants), tuple(positions), tuple(aliases), ordered)

    def resolve(self, surface: str) -> Optional[tuple[str, str]]:
        """(role, canonical name) of a surface form, or None."""
        return self._roles.get(name_key(surface.strip()))

    def mentions(self, text: str) -> list[Mention]:
        """
        Finds entity and number mentions, longest entity surface first.

        Args:
            text (str): The text to scan.

        Returns:
            list[Mention]: Non-overlapping mentions sorted by offset.
        """
        found = []
        if self._regex is not None:
            for match in self._regex.finditer(text):
                role, name = self._roles[name_key(match.group())]
                found.append(Mention(match.start(), match.end(), role, name))
        for match in _NUMBER.finditer(text):
            if any(m.start < match.end() and match.start() < m.end for m in found):
                continue
            found.append(Mention(match.start(), match.end(), "number", match.group(), number_value(match.group())))
        found.sort(key=lambda m: m.start)
        return found

    def game_config(
        self,
        multiplicity: Multiplicity = Multiplicity.EXACTLY_ONE,
        capacities: Optional[Sequence[tuple[int, int]]] = None,
    ) -> GameConfig:
        return GameConfig.build(self.participants, self.positions, multiplicity, capacities, self.ordered)


def _range_names(first: str, last: str) -> Optional[list[str]]:
    if first.isdigit() and last.isdigit() and int(first) < int(last):
        return [str(i) for i in range(int(first), int(last) + 1)]
    days = [d.casefold() for d in WEEKDAYS]
    if first.casefold() in days and last.casefold() in days:
        i, j = days.index(first.casefold()), days.index(last.casefold())
        if i < j:
            return list(WEEKDAYS[i : j + 1])
    return None


def _count_phrase(item: str) -> bool:
    parts = _ARTICLE.sub("", item).split()
    return len(parts) == 2 and number_value(parts[0]) is not None


def _entity_like(item: str) -> bool:
    if _count_phrase(item):
        return False
    core = _ARTICLE.sub("", item)
    return bool(_ARTICLE.match(item)) or core[:1].isupper() or core[:1].isdigit()


def _group_names(text: str) -> Optional[list[str]]:
    items = [item.strip() for item in _SPLIT_ITEMS.split(text) if item.strip()]
    # "two committees, the X committee and the Y committee" or "A, B and C, will be": trim both ends.
    while items and not _entity_like(items[0]):
        items.pop(0)
    while items and not _entity_like(items[-1]):
        items.pop()
    if len(items) < 2 or not all(_entity_like(item) for item in items):
        return None
    items = [_ARTICLE.sub("", item) for item in items]
    split = [item.split() for item in items]
    heads = {parts[1].casefold() for parts in split if len(parts) == 2}
    if len(heads) == 1 and all(len(parts) == 2 for parts in split):
        return items
    return [parts[0] for parts in split]


def extract_entities(context: str) -> EntityCatalog:
    """
    Collects participants and positions from the leading sentence of a context.

    Args:
        context (str): The passage; its first sentence introduces the game.

    Returns:
        EntityCatalog: Participants from the earlier group, positions from the later
            one; ordered when the positions come from a range.

    Raises:
        EntityExtractionError: If fewer than two entity groups are found.
    """
    sentences = split_sentences(context)
    if not sentences:
        raise EntityExtractionError("the context is empty")
    leading = sentences[0]

    groups = []
    ranges = []
    for match in _RANGE.finditer(leading):
        names = _range_names(match.group(1), match.group(2))
        if names is not None:
            ranges.append((match.start(), match.end(), names))
    for match in _GROUP.finditer(leading):
        if any(s < match.end() and match.start() < e for s, e, _ in ranges):
            continue
        names = _group_names(match.group())
        if names is not None:
            groups.append((match.start(), names))

    if ranges:
        if not groups:
            raise EntityExtractionError(f"no participant group found in {leading!r}")
        participants, positions, ordered = groups[0][1], ranges[0][2], True
    else:
        if len(groups) < 2:
            raise EntityExtractionError(f"expected two entity groups in {leading!r}, found {len(groups)}")
        participants, positions, ordered = groups[0][1], groups[1][1], False
    logging.debug("Extracted participants %s and positions %s", participants, positions)
    return EntityCatalog.build(participants, positions, ordered)
