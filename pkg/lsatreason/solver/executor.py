"""Tree search over constraint programs.

The root node is the initial assignment: every deterministic program (To atoms,
their negations and conjunctions, and IfThen programs whose condition already
holds) is applied with unit propagation until nothing changes. Then, for each
program in order, every frontier node is expanded over the participants the
program mentions and children on which the program is False are pruned. A
final grounding pass completes the remaining columns and keeps the grids on
which every program is True.
"""

import logging
from typing import Optional, Sequence

from ..errors import LimitsExceeded, UnsatisfiableError
from ..game.assignment import (
    Assignment,
    enumerate_completions,
    is_complete,
    new_assignment,
    propagate,
    set_cells,
    validate,
)
from ..game.config import GameConfig, Participant, Position
from ..program.ast import And, IfThen, Node, Not, To
from ..program.evaluator import EvalContext, bind, evaluate, free_entities
from ..program.values import TriBool
from ..utils.json_utils import write_jsonl
from .limits import SearchLimits, SearchStats

Cell = tuple[Participant, Position, bool]


class SearchTrace:
    """
    Records the search tree as (node id, parent id, program index, verdict) rows.

    The root has no parent and no program; grounding rows have no program index.
    """

    def __init__(self):
        self.rows: list[dict] = []

    def record(self, node_id: int, parent_id: Optional[int], program_index: Optional[int], verdict: str):
        self.rows.append(
            {"node": node_id, "parent": parent_id, "program": program_index, "verdict": verdict}
        )

    def dump(self, path: str):
        write_jsonl(path, self.rows)
        logging.info("Wrote %d trace rows to %s", len(self.rows), path)


def _forced_cells(node: Node, ctx: EvalContext) -> Optional[list[Cell]]:
    """The cells a program forces under `ctx`, or None when it forces nothing definite."""
    cfg = ctx.cfg
    if isinstance(node, To):
        return [(cfg.participant(node.participant), cfg.position(node.position), True)]
    if isinstance(node, Not) and isinstance(node.operand, To):
        atom = node.operand
        return [(cfg.participant(atom.participant), cfg.position(atom.position), False)]
    if isinstance(node, And):
        cells = []
        for op in node.operands:
            forced = _forced_cells(op, ctx)
            if forced is None:
                return None
            cells.extend(forced)
        return cells
    if isinstance(node, IfThen):
        if TriBool.all(op.evaluate(ctx) for op in node.antecedents) is not TriBool.TRUE:
            return None
        cells = []
        for op in node.consequents:
            forced = _forced_cells(op, ctx)
            if forced is None:
                return None
            cells.extend(forced)
        return cells
    return None


def initial_assignment(programs: Sequence[Node], cfg: GameConfig, adjacency: bool = True) -> Assignment:
    """
    Builds the root node from the deterministic programs.

    Args:
        programs (Sequence[Node]): Bound constraint programs.
        cfg (GameConfig): The game configuration.
        adjacency (bool, optional): Allow Adjacent. Defaults to True.

    Returns:
        Assignment: The propagated root assignment.

    Raises:
        UnsatisfiableError: If the deterministic programs contradict each other
            or the game's capacities.
    """
    root = propagate(new_assignment(cfg), cfg)
    if root is None:
        raise UnsatisfiableError("unsatisfiable constraints: capacities cannot be met")
    changed = True
    while changed:
        changed = False
        for index, program in enumerate(programs):
            cells = _forced_cells(program, EvalContext(root, cfg, adjacency))
            if not cells:
                continue
            child = set_cells(root, cells, cfg)
            if child is None:
                raise UnsatisfiableError(f"unsatisfiable constraints: program {index} {program.to_text()!r}")
            if child != root:
                root = child
                changed = True
    return root


class _Search:
    def __init__(self, cfg: GameConfig, limits: SearchLimits, stats: SearchStats, trace: Optional[SearchTrace]):
        self.cfg = cfg
        self.limits = limits
        self.stats = stats
        self.trace = trace

    def new_node(self, parent_id: Optional[int], program_index: Optional[int], verdict: str) -> int:
        node_id = self.stats.nodes
        self.stats.nodes += 1
        if self.stats.nodes > self.limits.max_nodes:
            raise LimitsExceeded(f"search exceeded {self.limits.max_nodes} nodes", self.stats)
        if self.trace is not None:
            self.trace.record(node_id, parent_id, program_index, verdict)
        return node_id


def solve(
    programs: Sequence[Node],
    cfg: GameConfig,
    limits: Optional[SearchLimits] = None,
    stats: Optional[SearchStats] = None,
    trace: Optional[SearchTrace] = None,
    adjacency: bool = True,
) -> list[Assignment]:
    """
    All complete assignments satisfying every program.

    Args:
        programs (Sequence[Node]): Constraint programs; bound against `cfg` here.
        cfg (GameConfig): The game configuration.
        limits (SearchLimits, optional): Node and result budgets. Defaults to SearchLimits().
        stats (SearchStats, optional): Counters to fill in; a fresh one is used otherwise.
        trace (SearchTrace, optional): Collects the search tree when given.
        adjacency (bool, optional): Allow Adjacent. Defaults to True.

    Returns:
        list[Assignment]: The legitimate assignments, sorted by their rendering.

    Raises:
        ProgramBindError: If a program does not bind against `cfg`.
        LimitsExceeded: If a budget runs out; carries the statistics so far.
    """
    limits = limits or SearchLimits()
    stats = stats if stats is not None else SearchStats()
    programs = [bind(p, cfg) for p in programs]
    search = _Search(cfg, limits, stats, trace)

    try:
        root = initial_assignment(programs, cfg, adjacency)
    except UnsatisfiableError as e:
        logging.info("No legitimate assignments: %s", e)
        return []
    frontier = [(root, search.new_node(None, None, "root"))]

    for index, program in enumerate(programs):
        participants, _ = free_entities(program, cfg)
        expanded: dict[Assignment, int] = {}
        for node, node_id in frontier:
            for child in enumerate_completions(node, cfg, participants):
                verdict = evaluate(program, child, cfg, adjacency)
                child_id = search.new_node(node_id, index, str(verdict))
                if verdict is TriBool.FALSE:
                    stats.pruned += 1
                elif child not in expanded:
                    expanded[child] = child_id
        frontier = list(expanded.items())
        stats.frontier_peak = max(stats.frontier_peak, len(frontier))
        logging.debug("Program %d %r leaves %d nodes", index, program.to_text(), len(frontier))

    legit: set[Assignment] = set()
    for node, node_id in frontier:
        for child in enumerate_completions(node, cfg, cfg.participants):
            ok = (
                is_complete(child)
                and validate(child, cfg)
                and all(evaluate(p, child, cfg, adjacency) is TriBool.TRUE for p in programs)
            )
            search.new_node(node_id, None, str(TriBool.of(ok)))
            if not ok:
                stats.pruned += 1
                continue
            legit.add(child)
            if len(legit) > limits.max_assignments:
                stats.assignments = len(legit)
                raise LimitsExceeded(f"more than {limits.max_assignments} legitimate assignments", stats)
    stats.assignments = len(legit)
    return sorted(legit, key=lambda a: a.render(cfg))
