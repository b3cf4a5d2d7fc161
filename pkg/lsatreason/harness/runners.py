"""Section runners: analytical reasoning end-to-end and logical-reasoning context extension."""

import logging
import os
import re
import zlib
from collections import Counter
from typing import Iterable, Optional, Sequence

import numpy as np

from ..errors import (
    DatasetError,
    LimitsExceeded,
    LsatError,
    ProgramBindError,
)
from ..game.config import GameConfig, Multiplicity
from ..interpret.entities import EntityCatalog, extract_entities, split_sentences
from ..interpret.interpreter import interpret_context, interpret_option
from ..interpret.lexicon import TriggerLexicon, default_lexicon
from ..logic.augment import negative_contexts
from ..logic.extension import derive, select_related
from ..logic.identification import identification_recall, identify_logic
from ..logic.rng import MCG64
from ..logic.symbols import ExpressionSet, Implication, LogicSymbol, symbol_table
from ..logic.verbalize import verbalize_all
from ..program.ast import Node
from ..program.evaluator import bind
from ..program.parser import parse_program, tokenize
from ..solver.executor import SearchTrace, solve
from ..solver.limits import SearchLimits, SearchStats
from ..solver.scoring import N_OPTIONS, Polarity, ScoreMode, score_option, select_answer
from ..utils.json_utils import write_jsonl
from .dataset import ProblemRecord, Section
from .metrics import EvalReport, QuestionResult

FALLBACKS = ("abstain", "random")

# Words carrying no content for overlap matching; negations are kept.
STOPWORDS = frozenset(
    """a an the and or of to in on for at by with from as is are was were be been being
    it its this that these those which who whom what if then than so such can could
    will would shall should may might must do does did have has had you your we our
    they their he she his her i me my any all each every some one""".split()
)
_WORDS = re.compile(r"[a-z0-9]+(?:'[a-z]+)?")

# Question-stem boilerplate; what is left of a stem is its topic.
STEM_WORDS = frozenset(
    """following follows follow logically inferred infer properly drawn concluded conclusion
    true false most strongly supported support statements statement above passage argument
    about except""".split()
)


def _sorted(questions: list[QuestionResult]) -> list[QuestionResult]:
    return sorted(questions, key=lambda q: q.id)


def _record_rng(record_id: str, seed: int) -> MCG64:
    return MCG64(seed * 0x9E3779B1 + zlib.crc32(record_id.encode("utf-8")))


def catalog_for(record: ProblemRecord) -> EntityCatalog:
    """
    The entity catalog of an AR record: annotated names when present, extracted otherwise.

    Raises:
        EntityExtractionError: If nothing is annotated and extraction fails.
    """
    participants = record.annotation("participants")
    positions = record.annotation("positions")
    if participants and positions:
        return EntityCatalog.build(participants, positions, bool(record.annotation("ordered", False)))
    return extract_entities(record.context)


def game_config_for(record: ProblemRecord, cat: EntityCatalog) -> GameConfig:
    """
    The game configuration of an AR record.

    Raises:
        DatasetError: On an unknown multiplicity.
        GameConfigError: If the capacities do not fit the catalog.
    """
    try:
        multiplicity = Multiplicity(record.annotation("multiplicity", Multiplicity.EXACTLY_ONE.value))
    except ValueError:
        raise DatasetError(f"unknown multiplicity {record.annotation('multiplicity')!r}", record.id) from None
    capacities = record.annotation("capacities")
    return cat.game_config(multiplicity, [tuple(c) for c in capacities] if capacities else None)


def _program_tokens(text: str) -> list[str]:
    return [t.text for t in tokenize(text) if t.kind != "EOF"]


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of the longest common subsequence of two token sequences."""
    if not a or not b:
        return 0
    table = np.zeros((len(a) + 1, len(b) + 1), dtype=int)
    for i, x in enumerate(a, start=1):
        for j, y in enumerate(b, start=1):
            table[i, j] = table[i - 1, j - 1] + 1 if x == y else max(table[i - 1, j], table[i, j - 1])
    return int(table[-1, -1])


def rouge_l(predicted: str, gold: str) -> float:
    """
    Token-level Rouge-L F1 between two program texts.

    Args:
        predicted (str): The interpreted program.
        gold (str): The annotated program.

    Returns:
        float: F1 of LCS precision and recall over DSL tokens, in [0, 1].
    """
    p, g = _program_tokens(predicted), _program_tokens(gold)
    lcs = lcs_length(p, g)
    if lcs == 0:
        return 0.0
    precision, recall = lcs / len(p), lcs / len(g)
    return 2 * precision * recall / (precision + recall)


class _InterpretationStats:
    def __init__(self):
        self.counts = Counter()
        self.rouge: list[float] = []

    def to_dict(self) -> dict:
        c = self.counts
        out = {
            "sentences": c["sentences"],
            "interpreted": c["interpreted"],
            "bound": c["bound"],
            "precision": c["bound"] / c["interpreted"] if c["interpreted"] else 1.0,
            "coverage": c["interpreted"] / c["sentences"] if c["sentences"] else 0.0,
        }
        if c["compared"]:
            out["exact_match"] = c["exact"] / c["compared"]
            out["rouge_l"] = float(np.mean(self.rouge))
        return out


def _constraint_programs(
    record: ProblemRecord,
    cat: EntityCatalog,
    cfg: GameConfig,
    lexicon: TriggerLexicon,
    use_gold: bool,
    stats: _InterpretationStats,
    diagnostics: list[str],
) -> list[Node]:
    gold = record.annotation("programs")
    if use_gold and gold is not None:
        return [parse_program(text) for text in gold if text]

    programs = []
    readings = interpret_context(record.context, cat, lexicon)
    for i, (sentence, node, diagnostic) in enumerate(readings):
        stats.counts["sentences"] += 1
        if node is None:
            diagnostics.append(f"skipped constraint {sentence!r}: {diagnostic}")
            continue
        stats.counts["interpreted"] += 1
        try:
            bind(node, cfg)
        except ProgramBindError as e:
            diagnostics.append(f"constraint {sentence!r} does not bind: {e}")
            continue
        stats.counts["bound"] += 1
        programs.append(node)
        if gold is not None and len(gold) == len(readings) and gold[i]:
            reference = parse_program(gold[i]).to_text()
            stats.counts["compared"] += 1
            stats.counts["exact"] += node.to_text() == reference
            stats.rouge.append(rouge_l(node.to_text(), reference))
    return programs


def _option_programs(
    record: ProblemRecord,
    cat: EntityCatalog,
    cfg: GameConfig,
    lexicon: TriggerLexicon,
    use_gold: bool,
) -> list[tuple[Optional[Node], Optional[str]]]:
    gold = record.annotation("option_programs")
    out = []
    for i, option in enumerate(record.options):
        try:
            if use_gold and gold is not None:
                if gold[i] is None:
                    out.append((None, "option has no annotated program"))
                    continue
                node = parse_program(gold[i])
            else:
                node = interpret_option(record.question, option, cat, lexicon, option_index=i)
            out.append((bind(node, cfg), None))
        except LsatError as e:
            out.append((None, str(e)))
    return out


def run_ar(
    records: Iterable[ProblemRecord],
    lexicon: Optional[TriggerLexicon] = None,
    limits: Optional[SearchLimits] = None,
    mode: str = "ratio",
    use_gold: bool = True,
    fallback: str = "abstain",
    seed: int = 0,
    trace_path: Optional[str] = None,
) -> EvalReport:
    """
    Solves analytical reasoning questions end to end.

    For every record the entities are taken from the annotations or extracted,
    the constraints are taken from the annotated programs or interpreted, the
    legitimate assignments are enumerated and each option is scored over them.
    Questions sharing a game reuse one solve.

    Args:
        records (Iterable[ProblemRecord]): AR records; other sections are ignored.
        lexicon (TriggerLexicon, optional): Defaults to the starter lexicon.
        limits (SearchLimits, optional): Budget of each solve. Defaults to SearchLimits().
        mode (str, optional): "count" or "ratio". Defaults to "ratio".
        use_gold (bool, optional): Prefer annotated programs over interpretation. Defaults to True.
        fallback (str, optional): "abstain" or "random" for questions that cannot be answered.
        seed (int, optional): Seed of the random fallback. Defaults to 0.
        trace_path (str, optional): Write the search trees of every solve to this JSON-lines file.

    Returns:
        EvalReport: Per-question results sorted by record id.
    """
    if fallback not in FALLBACKS:
        raise LsatError(f"fallback must be one of {FALLBACKS}, got {fallback!r}")
    score_mode = ScoreMode.create(mode)
    lexicon = lexicon or default_lexicon()
    limits = limits or SearchLimits()
    interpretation = _InterpretationStats()
    solved: dict[tuple, list] = {}
    trace_rows: list[dict] = []
    counts = Counter()
    questions = []

    for record in records:
        if record.section is not Section.AR:
            counts["skipped"] += 1
            continue
        diagnostics: list[str] = []
        scores = [0.0] * N_OPTIONS
        predicted = None
        legit = None
        try:
            cat = catalog_for(record)
            cfg = game_config_for(record, cat)
            programs = _constraint_programs(record, cat, cfg, lexicon, use_gold, interpretation, diagnostics)
            key = (cfg, tuple(p.to_text() for p in programs))
            if key not in solved:
                stats = SearchStats()
                trace = SearchTrace() if trace_path else None
                try:
                    solved[key] = solve(programs, cfg, limits, stats, trace)
                finally:
                    if trace is not None:
                        trace_rows.extend({"record": record.id, **row} for row in trace.rows)
                logging.info(
                    "%s: %d nodes, %d pruned, %d legitimate assignments",
                    record.id,
                    stats.nodes,
                    stats.pruned,
                    stats.assignments,
                )
            assignments = solved[key]
            legit = len(assignments)
            if not assignments:
                diagnostics.append("unsatisfiable")
            else:
                option_scores = []
                for i, (node, diagnostic) in enumerate(_option_programs(record, cat, cfg, lexicon, use_gold)):
                    if diagnostic:
                        diagnostics.append(f"option {i}: {diagnostic}")
                    option_scores.append(score_option(assignments, node, score_mode, cfg, i, diagnostic))
                scores = [s.value for s in option_scores]
                if any(s.interpretable for s in option_scores):
                    predicted = select_answer(option_scores, record.polarity)
                else:
                    diagnostics.append("no option could be interpreted")
        except LimitsExceeded as e:
            counts["limits_hit"] += 1
            diagnostics.append(f"limits exceeded: {e}")
        except LsatError as e:
            diagnostics.append(str(e))

        if predicted is None:
            counts["abstained"] += 1
            if fallback == "random":
                predicted = _record_rng(record.id, seed).below(N_OPTIONS)
                diagnostics.append("random fallback")
            logging.warning("%s: no answer (%s)", record.id, "; ".join(diagnostics[-1:]))
        questions.append(QuestionResult(record.id, record.label, predicted, scores, diagnostics, legit))

    if trace_path:
        write_jsonl(trace_path, trace_rows)
        logging.info("Wrote %d trace rows to %s", len(trace_rows), trace_path)

    extra = {
        "mode": score_mode.NAME,
        "use_gold": use_gold,
        "fallback": fallback,
        "solves": len(solved),
        "skipped": counts["skipped"],
        "abstained": counts["abstained"],
        "limits_hit": counts["limits_hit"],
    }
    if interpretation.counts["sentences"]:
        extra["interpretation"] = interpretation.to_dict()
    return EvalReport(Section.AR.value, _sorted(questions), extra)


def content_words(text: str) -> set[str]:
    """Lower-cased word tokens of `text` without stopwords."""
    return {w for w in _WORDS.findall(text.lower()) if w not in STOPWORDS}


def jaccard(x: set[str], y: set[str]) -> float:
    """Jaccard overlap of two word sets; 0 when either is empty."""
    if not x or not y:
        return 0.0
    return len(x & y) / len(x | y)


def _symbols(record: ProblemRecord) -> list[LogicSymbol]:
    return [LogicSymbol(int(s["id"]), s["surface"]) for s in record.annotation("symbols") or []]


def _option_symbol_spans(record: ProblemRecord, table: dict[int, str]) -> list[list[tuple[str, int]]]:
    annotated = record.annotation("option_spans")
    if annotated is not None:
        return [[(text, int(sid)) for text, sid in spans] for spans in annotated]
    out = []
    for option in record.options:
        lowered = option.lower()
        out.append([(surface, sid) for sid, surface in table.items() if surface.lower() in lowered])
    return out


def stem_words(question: str) -> set[str]:
    """Content words of a question stem without the usual stem boilerplate."""
    return content_words(question) - STEM_WORDS


def match_score(
    option_exprs: ExpressionSet, known: ExpressionSet, option: str, extended_context: str, question: str
) -> tuple[float, int]:
    """
    Symbolic option score.

    The primary score is the Jaccard overlap between the content words of the
    option together with its extended context and the topic words of the stem.
    The number of option implications the passage entails breaks ties.

    Args:
        option_exprs (ExpressionSet): Implications identified in the option.
        known (ExpressionSet): Asserted and extended implications of the passage.
        option (str): The option text.
        extended_context (str): The verbalized related implications.
        question (str): The question stem.

    Returns:
        tuple[float, int]: The stem overlap and the number of entailed implications.
    """
    score = jaccard(content_words(f"{option} {extended_context}"), stem_words(question))
    return score, sum(e in known for e in option_exprs)


def pick_option(scores: Sequence[float], entailed: Sequence[int], polarity: Polarity) -> int:
    """
    Best option by score, then by entailed implications, then by lowest index.

    Negative polarity picks the worst option under the same order.
    """
    scores, entailed = np.asarray(scores, dtype=float), np.asarray(entailed)
    if polarity is Polarity.NEGATIVE:
        order = np.lexsort((entailed, scores))
    else:
        order = np.lexsort((-entailed, -scores))
    return int(order[0])


def encoder_input(context: str, question: str, option: str, extended_context: str) -> str:
    return f"[CLS] {context} [SEP] {question} || {option} [EXT] {extended_context} [SEP]"


def extend_record(record: ProblemRecord, seed: int = 0) -> dict:
    """
    Context extension of one LR record.

    Args:
        record (ProblemRecord): An LR record with `symbols` and `spans` annotations.
        seed (int, optional): Seed of the negative contexts. Defaults to 0.

    Returns:
        dict: The artifacts: expressions, extended expressions, derivations,
            one extended context and encoder input per option, negative contexts,
            option scores and the predicted option.

    Raises:
        DatasetError: If the spans do not line up with the context sentences.
    """
    table = symbol_table(_symbols(record))
    sentences = split_sentences(record.context)
    spans = record.annotation("spans")
    if len(spans) != len(sentences):
        raise DatasetError(f"{len(spans)} span lists for {len(sentences)} sentences", record.id)
    exprs = identify_logic(sentences, [[(text, int(sid)) for text, sid in s] for s in spans])
    derivations = derive(exprs)
    extended = ExpressionSet(d.conclusion for d in derivations)
    known = exprs.union(extended)

    option_spans = _option_symbol_spans(record, table)
    contexts, inputs, scores, entailed = [], [], [], []
    for option, spans_i in zip(record.options, option_spans):
        related = select_related(extended, [sid for _, sid in spans_i])
        e = verbalize_all(related, table)
        option_exprs = identify_logic([option], [spans_i])
        contexts.append(e)
        inputs.append(encoder_input(record.context, record.question, option, e))
        score, n = match_score(option_exprs, known, option, e, record.question)
        scores.append(score)
        entailed.append(n)

    predicted = pick_option(scores, entailed, record.polarity)
    artifact = {
        "id": record.id,
        "expressions": [str(e) for e in exprs],
        "extended": [str(e) for e in extended],
        "derivations": [
            {"conclusion": str(d.conclusion), "rule": d.rule, "premises": [str(p) for p in d.premises]}
            for d in derivations
        ],
        "extended_contexts": contexts,
        "encoder_inputs": inputs,
        "negative_contexts": negative_contexts(exprs, table, seed),
        "scores": scores,
        "predicted": predicted,
    }
    gold = record.annotation("gold_expressions")
    if gold is not None:
        artifact["identification_recall"] = identification_recall(exprs, (Implication.parse(g) for g in gold))
    return artifact


def run_lr_extend(
    records: Iterable[ProblemRecord], out_dir: Optional[str] = None, seed: int = 0
) -> tuple[list[dict], EvalReport]:
    """
    Extends the contexts of logical reasoning questions and picks answers symbolically.

    Records without `symbols`/`spans` annotations are skipped and counted.

    Args:
        records (Iterable[ProblemRecord]): LR records; other sections are ignored.
        out_dir (str, optional): Write the artifacts to `out_dir/lr_extend.jsonl`.
        seed (int, optional): Seed of the negative contexts. Defaults to 0.

    Returns:
        tuple[list[dict], EvalReport]: Artifacts sorted by record id, and the report.
    """
    artifacts, questions = [], []
    counts = Counter()
    for record in records:
        if record.section is not Section.LR:
            counts["other_sections"] += 1
            continue
        if not record.annotation("symbols") or record.annotation("spans") is None:
            counts["skipped"] += 1
            logging.debug("%s: no symbol spans, skipped", record.id)
            continue
        try:
            artifact = extend_record(record, seed)
        except LsatError as e:
            counts["failed"] += 1
            logging.warning("%s: %s", record.id, e)
            questions.append(QuestionResult(record.id, record.label, None, diagnostics=[str(e)]))
            continue
        artifacts.append(artifact)
        questions.append(QuestionResult(record.id, record.label, artifact["predicted"], artifact["scores"]))

    artifacts.sort(key=lambda a: a["id"])
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "lr_extend.jsonl")
        write_jsonl(path, artifacts)
        logging.info("Wrote %d extension artifacts to %s", len(artifacts), path)
    extra = {"skipped": counts["skipped"], "failed": counts["failed"], "other_sections": counts["other_sections"]}
    return artifacts, EvalReport(Section.LR.value, _sorted(questions), extra)
