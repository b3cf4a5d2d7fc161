"""Evaluation reports, accuracy and LSAT-scale conversion."""

import logging
import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib.resources import files
from typing import Optional, Sequence

import numpy as np

from ..errors import ScaleError
from ..utils.json_utils import serialize_json

SECTION_WEIGHTS = {"AR": 1.0, "LR": 2.0, "RC": 1.0}
SCALE_MIN = 120
SCALE_MAX = 180


@dataclass
class QuestionResult:
    """
    Outcome of one question.

    Args:
        id (str): Record id.
        gold (int): Labelled option.
        predicted (int, optional): Selected option; None is an abstention.
        scores (list[float]): One score per option.
        diagnostics (list[str]): Everything that went wrong on the way.
        legit (int, optional): Number of legitimate assignments, for AR questions.
    """

    id: str
    gold: int
    predicted: Optional[int]
    scores: list[float] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    legit: Optional[int] = None

    @property
    def correct(self) -> bool:
        return self.predicted == self.gold


@dataclass
class EvalReport:
    """
    Per-question results of one section run.

    Args:
        section (str): AR, LR or RC.
        questions (list[QuestionResult]): Results sorted by record id.
        extra (dict): Run-level counters (skips, limit hits, interpretation stats).
    """

    section: str
    questions: list[QuestionResult] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def correct(self) -> int:
        return sum(q.correct for q in self.questions)

    @property
    def abstained(self) -> int:
        return sum(q.predicted is None for q in self.questions)

    def to_dict(self) -> dict:
        return {
            "section": self.section,
            "accuracy": accuracy(self),
            "total": len(self.questions),
            "correct": self.correct,
            "abstained": self.abstained,
            "extra": self.extra,
            "questions": [asdict(q) for q in self.questions],
        }


def accuracy(report: EvalReport) -> float:
    """
    Percentage of correctly answered questions; abstentions count as wrong.

    Args:
        report (EvalReport): The report.

    Returns:
        float: Accuracy in [0, 100]; 0 for an empty report.
    """
    if not report.questions:
        return 0.0
    return 100.0 * report.correct / len(report.questions)


class ScoreScale:
    """
    Monotone conversion from raw percent to the 120-180 scale.

    Between anchors the scaled score is interpolated linearly and rounded to the
    nearest integer; outside the first and last anchor it is clamped.

    Args:
        anchors (Sequence[tuple[float, float]]): (raw percent, scaled score) pairs.
    """

    def __init__(self, anchors: Sequence[tuple[float, float]]):
        if not anchors:
            raise ScaleError("score scale needs at least one anchor")
        pairs = sorted((float(raw), float(scaled)) for raw, scaled in anchors)
        self.raw = np.array([raw for raw, _ in pairs])
        self.scaled = np.array([scaled for _, scaled in pairs])
        if np.any(np.diff(self.raw) <= 0):
            raise ScaleError(f"score scale anchors must have distinct raw values, got {list(self.raw)}")
        if np.any(np.diff(self.scaled) < 0):
            raise ScaleError("score scale must be non-decreasing")
        if self.raw[0] < 0 or self.raw[-1] > 100:
            raise ScaleError("raw anchors must lie in [0, 100]")
        if self.scaled[0] < SCALE_MIN or self.scaled[-1] > SCALE_MAX:
            raise ScaleError(f"scaled anchors must lie in [{SCALE_MIN}, {SCALE_MAX}]")

    @property
    def anchors(self) -> list[tuple[float, float]]:
        return list(zip(self.raw.tolist(), self.scaled.tolist()))

    def __call__(self, percent: float) -> int:
        return int(np.round(np.interp(percent, self.raw, self.scaled)))

    def __repr__(self) -> str:
        return f"ScoreScale({self.anchors})"


def _check_percent(value: float, name: str):
    if not 0.0 <= value <= 100.0:
        raise ScaleError(f"{name} must be a percentage in [0, 100], got {value}")


def scaled_score(percent: float, scale: ScoreScale) -> int:
    """
    Converts a raw accuracy to the LSAT scale.

    Args:
        percent (float): Raw accuracy in [0, 100].
        scale (ScoreScale): The conversion table.

    Returns:
        int: Scaled score in [120, 180].
    """
    _check_percent(percent, "raw score")
    return scale(percent)


def overall_score(ar: float, lr: float, rc: float) -> float:
    """
    Weighted average of the section accuracies with weights 1:2:1.

    Args:
        ar (float): Analytical reasoning accuracy in percent.
        lr (float): Logical reasoning accuracy in percent.
        rc (float): Reading comprehension accuracy in percent.

    Returns:
        float: Overall accuracy in percent.
    """
    for name, value in (("ar", ar), ("lr", lr), ("rc", rc)):
        _check_percent(value, name)
    return float(np.average([ar, lr, rc], weights=list(SECTION_WEIGHTS.values())))


@lru_cache(maxsize=None)
def default_scale() -> ScoreScale:
    """The scale shipped in `lsatreason/data/scale.conf`."""
    from ..interface.registry import parse_config

    text = files("lsatreason.data").joinpath("scale.conf").read_text(encoding="utf-8")
    scale = parse_config(text)
    if not isinstance(scale, ScoreScale):
        raise ScaleError("scale.conf must evaluate to score_scale(...)")
    return scale


def load_scale(path: str) -> ScoreScale:
    """Reads a scale configuration file such as `scale.conf`."""
    from ..interface.registry import load_config

    scale = load_config(path)
    if not isinstance(scale, ScoreScale):
        raise ScaleError(f"{path} must evaluate to score_scale(...)")
    return scale


def save_report(report: EvalReport, out_dir: str, name: Optional[str] = None) -> str:
    """
    Writes a report as JSON into `out_dir`.

    Args:
        report (EvalReport): The report.
        out_dir (str): Output directory; created when missing.
        name (str, optional): File stem. Defaults to the lower-cased section name.

    Returns:
        str: Path of the written file.
    """
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{name or report.section.lower()}.json")
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_json(report.to_dict()))
    logging.info("Wrote %s report to %s", report.section, path)
    return path
