"""Utility functions for JSON serialization and JSON-lines files."""

from typing import Any, Iterable, Iterator, Optional

import json


def serialize_json(data: Any, indent: Optional[int] = 2) -> str:
    """
    Serializes a Python object into a JSON string.

    Keys keep their insertion order so that artifacts are byte-stable across runs.

    Args:
        data (Any): The Python object to serialize.
        indent (int, optional): Indentation width, or None for a single line. Defaults to 2.

    Returns:
        str: The serialized JSON string.
    """
    separators = (",", ": ") if indent is not None else (",", ":")
    return json.dumps(data, indent=indent, ensure_ascii=False, separators=separators)


def read_jsonl(path: str) -> Iterator[tuple[int, Any]]:
    """
    Iterates over the non-blank lines of a JSON-lines file.

    Args:
        path (str): Path of the file.

    Yields:
        tuple[int, Any]: The 1-based line number and the decoded object.

    Raises:
        json.JSONDecodeError: If a line is not valid UTF-8 JSON; the message starts with its line number.
    """
    with open(path, "rb") as f:
        for lineno, raw in enumerate(f, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                text = raw.decode("utf-8", errors="replace")
                raise json.JSONDecodeError(f"line {lineno}: invalid UTF-8 ({e.reason})", text, e.start) from None
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as e:
                raise json.JSONDecodeError(f"line {lineno}: {e.msg}", e.doc, e.pos) from None
            yield lineno, data


def write_jsonl(path: str, rows: Iterable[Any]):
    """
    Writes objects to a JSON-lines file, one compact object per LF-terminated line.

    Args:
        path (str): Path of the file.
        rows (Iterable[Any]): Objects to write.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in rows:
            f.write(serialize_json(row, indent=None))
            f.write("\n")
