"""LSAT-format datasets stored as JSON lines.

One record per line:

    {"id": "ar-0001", "section": "AR", "context": "...", "question": "...",
     "options": ["...", "...", "...", "...", "..."], "label": 2,
     "polarity": "positive", "annotations": {...}}

`label` is an index 0..4 (a letter A..E is accepted on input), `polarity` is
optional and `annotations` may carry any of:

    participants, positions     entity names (override extraction)
    ordered                     whether positions form a sequence
    multiplicity                "exactly-one" or "at-most-one"
    capacities                  per-position [min, max]
    programs                    one constraint program per constraint sentence
    option_programs             one program (or null) per option
    symbols                     [{"id": 0, "surface": "..."}, ...] for LR records
    spans                       per context sentence, [[span text, symbol id], ...]
    option_spans                per option, [[span text, symbol id], ...]
    gold_expressions            asserted implications as "[~]id -> [~]id"

Records with four options are padded to five by repeating one wrong option,
drawn from a generator seeded with the dataset seed and the record id.
"""

import enum
import json
import logging
import zlib
from collections import Counter
from dataclasses import dataclass, field, replace
from importlib.resources import files
from typing import Any, Callable, Iterable

from ..errors import DatasetError
from ..logic.rng import MCG64
from ..solver.scoring import N_OPTIONS, Polarity
from ..utils.json_utils import read_jsonl, write_jsonl

REQUIRED_KEYS = {"id", "section", "context", "question", "options", "label"}
OPTIONAL_KEYS = {"polarity", "annotations"}
_PER_OPTION = ("option_programs", "option_spans")


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _list_of(check) -> Callable[[Any], bool]:
    return lambda v: isinstance(v, list) and all(check(x) for x in v)


def _pair(first, second) -> Callable[[Any], bool]:
    return lambda v: isinstance(v, list) and len(v) == 2 and first(v[0]) and second(v[1])


def _is_str(v: Any) -> bool:
    return isinstance(v, str)


def _is_symbol(v: Any) -> bool:
    return isinstance(v, dict) and _is_int(v.get("id")) and _is_str(v.get("surface"))


_span_list = _list_of(_pair(_is_str, _is_int))
_optional_programs = _list_of(lambda v: v is None or _is_str(v))

# key -> (shape check, description used in errors)
ANNOTATION_SHAPES: dict[str, tuple[Callable[[Any], bool], str]] = {
    "participants": (_list_of(_is_str), "a list of strings"),
    "positions": (_list_of(_is_str), "a list of strings"),
    "ordered": (lambda v: isinstance(v, bool), "a boolean"),
    "multiplicity": (_is_str, "a string"),
    "capacities": (_list_of(_pair(_is_int, _is_int)), "a list of [min, max] integer pairs"),
    "programs": (_optional_programs, "a list of program strings"),
    "option_programs": (_optional_programs, "a list of program strings or nulls"),
    "symbols": (_list_of(_is_symbol), 'a list of {"id": int, "surface": str} objects'),
    "spans": (_list_of(_span_list), "a list of [[span text, symbol id], ...] lists"),
    "option_spans": (_list_of(_span_list), "a list of [[span text, symbol id], ...] lists"),
    "gold_expressions": (_list_of(_is_str), "a list of strings"),
}
ANNOTATION_KEYS = set(ANNOTATION_SHAPES)


class Section(enum.Enum):
    AR = "AR"
    LR = "LR"
    RC = "RC"


@dataclass(frozen=True)
class ProblemRecord:
    """
    One multiple-choice item.

    Args:
        id (str): Unique record id.
        section (Section): AR, LR or RC.
        context (str): The passage.
        question (str): The question stem.
        options (tuple[str, ...]): Exactly five options.
        label (int): Index of the correct option.
        polarity (Polarity): Whether the answer is the best or the worst scored option.
        annotations (dict): Optional gold annotations, see the module docstring.
    """

    id: str
    section: Section
    context: str
    question: str
    options: tuple[str, ...]
    label: int
    polarity: Polarity = Polarity.POSITIVE
    annotations: dict = field(default_factory=dict, compare=True, hash=False)

    def annotation(self, key: str, default: Any = None) -> Any:
        return self.annotations.get(key, default)

    def to_dict(self) -> dict:
        data = {
            "id": self.id,
            "section": self.section.value,
            "context": self.context,
            "question": self.question,
            "options": list(self.options),
            "label": self.label,
            "polarity": self.polarity.value,
        }
        if self.annotations:
            data["annotations"] = self.annotations
        return data


def _label(value: Any, record_id: str) -> int:
    if isinstance(value, str) and len(value) == 1 and value.upper() in "ABCDE":
        return "ABCDE".index(value.upper())
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise DatasetError(f"label must be an index or a letter A-E, got {value!r}", record_id)


def record_from_dict(data: Any) -> ProblemRecord:
    """
    Validates one decoded JSON object.

    Args:
        data (Any): The decoded line.

    Returns:
        ProblemRecord: The record, with four options left unpadded.

    Raises:
        DatasetError: On missing keys, wrong types or out-of-range values.
    """
    if not isinstance(data, dict):
        raise DatasetError(f"expected a JSON object, got {type(data).__name__}")
    record_id = data.get("id")
    if not isinstance(record_id, str) or not record_id:
        raise DatasetError("missing or empty 'id'")
    missing = REQUIRED_KEYS - set(data)
    if missing:
        raise DatasetError(f"missing keys {sorted(missing)}", record_id)
    unknown = set(data) - REQUIRED_KEYS - OPTIONAL_KEYS
    if unknown:
        raise DatasetError(f"unknown keys {sorted(unknown)}", record_id)
    try:
        section = Section(data["section"])
    except ValueError:
        raise DatasetError(f"section must be AR, LR or RC, got {data['section']!r}", record_id) from None
    for key in ("context", "question"):
        if not isinstance(data[key], str):
            raise DatasetError(f"'{key}' must be a string", record_id)
    options = data["options"]
    if not isinstance(options, list) or not all(isinstance(o, str) for o in options):
        raise DatasetError("'options' must be a list of strings", record_id)
    if len(options) not in (N_OPTIONS - 1, N_OPTIONS):
        raise DatasetError(f"expected {N_OPTIONS} options (or 4 to pad), got {len(options)}", record_id)
    label = _label(data["label"], record_id)
    if not 0 <= label < len(options):
        raise DatasetError(f"label {label} out of range", record_id)
    try:
        polarity = Polarity(data.get("polarity", "positive"))
    except ValueError:
        raise DatasetError(f"polarity must be positive or negative, got {data['polarity']!r}", record_id) from None
    annotations = data.get("annotations") or {}
    if not isinstance(annotations, dict):
        raise DatasetError("'annotations' must be an object", record_id)
    unknown = set(annotations) - ANNOTATION_KEYS
    if unknown:
        raise DatasetError(f"unknown annotation keys {sorted(unknown)}", record_id)
    for key, value in annotations.items():
        check, shape = ANNOTATION_SHAPES[key]
        if not check(value):
            raise DatasetError(f"annotation '{key}' must be {shape}", record_id)
    for key in _PER_OPTION:
        if key in annotations and len(annotations[key]) != len(options):
            raise DatasetError(f"annotation '{key}' needs one entry per option", record_id)
    return ProblemRecord(
        id=record_id,
        section=section,
        context=data["context"],
        question=data["question"],
        options=tuple(options),
        label=label,
        polarity=polarity,
        annotations=annotations,
    )


def pad_options(record: ProblemRecord, seed: int = 0) -> ProblemRecord:
    """
    Appends a copy of one wrong option to a four-option record.

    Args:
        record (ProblemRecord): The record.
        seed (int, optional): Dataset seed. Defaults to 0.

    Returns:
        ProblemRecord: The record with five options; unchanged when it already has five.
    """
    if len(record.options) == N_OPTIONS:
        return record
    rng = MCG64(seed * 0x9E3779B1 + zlib.crc32(record.id.encode("utf-8")))
    wrong = [i for i in range(len(record.options)) if i != record.label]
    pick = wrong[rng.below(len(wrong))]
    annotations = dict(record.annotations)
    for key in _PER_OPTION:
        if key in annotations:
            annotations[key] = list(annotations[key]) + [annotations[key][pick]]
    return replace(record, options=record.options + (record.options[pick],), annotations=annotations)


def load_dataset(path: str, seed: int = 0) -> list[ProblemRecord]:
    """
    Reads and validates a JSON-lines dataset.

    Args:
        path (str): Path of the file.
        seed (int, optional): Seed of the option padding. Defaults to 0.

    Returns:
        list[ProblemRecord]: Records in file order, all with five options.

    Raises:
        DatasetError: On invalid JSON, schema violations or duplicate ids.
    """
    records = []
    seen = set()
    padded = 0
    try:
        for lineno, data in read_jsonl(path):
            try:
                record = record_from_dict(data)
            except DatasetError as e:
                raise DatasetError(f"line {lineno}: {e}") from None
            if record.id in seen:
                raise DatasetError(f"line {lineno}: duplicate id", record.id)
            seen.add(record.id)
            if len(record.options) < N_OPTIONS:
                record = pad_options(record, seed)
                padded += 1
            records.append(record)
    except json.JSONDecodeError as e:
        raise DatasetError(f"{path}: invalid JSON at {e.msg}") from None
    logging.info("Loaded %d records from %s (%d padded)", len(records), path, padded)
    return records


def dump_dataset(records: Iterable[ProblemRecord], path: str):
    """Writes records in the format `load_dataset` reads."""
    write_jsonl(path, (record.to_dict() for record in records))


def dataset_stats(records: Iterable[ProblemRecord]) -> dict[str, dict[str, int]]:
    """
    Per-section numbers of distinct contexts and of questions.

    Args:
        records (Iterable[ProblemRecord]): The dataset.

    Returns:
        dict[str, dict[str, int]]: {"AR": {"contexts": .., "questions": ..}, ...}
    """
    questions = Counter()
    contexts: dict[str, set] = {}
    for record in records:
        questions[record.section.value] += 1
        contexts.setdefault(record.section.value, set()).add(record.context)
    return {
        section: {"contexts": len(contexts[section]), "questions": questions[section]}
        for section in sorted(questions)
    }


def synthetic_suite_path() -> str:
    """The shipped ten-game analytical reasoning suite; every game has gold programs."""
    return str(files("lsatreason.data").joinpath("ar_suite.jsonl"))
