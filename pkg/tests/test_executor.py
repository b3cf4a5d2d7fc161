import json
import os
import tempfile
import unittest

import numpy as np

from lsatreason.errors import LimitsExceeded, LsatError, ProgramBindError
from lsatreason.game import Assignment, GameConfig, Multiplicity
from lsatreason.program import parse_program
from lsatreason.solver import (
    OptionScore,
    Polarity,
    SearchLimits,
    SearchStats,
    SearchTrace,
    initial_assignment,
    score_option,
    select_answer,
    solve,
)

from oracles import brute_force, random_game, random_program

COMMITTEE_PROGRAMS = ["To(D,X) AND To(F,X)", "IfThen({To(A,X)}, {To(B,Y)})"]
COMMITTEE_OPTIONS = ["To(A,X) AND To(B,X)", "To(D,Y)", "To(F,X)", "To(C,X)", "To(A,X)"]


def committee_game():
    cfg = GameConfig.build(list("ABCDEFG"), ["X", "Y"])
    return cfg, [parse_program(p) for p in COMMITTEE_PROGRAMS]


class TestCommitteeGame(unittest.TestCase):
    def test_initial_assignment(self):
        cfg, programs = committee_game()
        self.assertEqual(initial_assignment(programs, cfg), Assignment.from_rows(["...T.T.", "...F.F."]))

    def test_legit_assignments(self):
        cfg, programs = committee_game()
        stats = SearchStats()
        legit = solve(programs, cfg, stats=stats)
        self.assertEqual(len(legit), 24)
        self.assertEqual(stats.assignments, 24)
        self.assertGreater(stats.nodes, 24)
        self.assertEqual(set(legit), brute_force(cfg, programs))
        self.assertEqual(legit, sorted(legit, key=lambda a: a.render(cfg)))

    def test_option_scores(self):
        cfg, programs = committee_game()
        legit = solve(programs, cfg)
        options = [parse_program(o) for o in COMMITTEE_OPTIONS]
        counts = [score_option(legit, o, "count", cfg, i) for i, o in enumerate(options)]
        ratios = [score_option(legit, o, "ratio", cfg, i) for i, o in enumerate(options)]
        self.assertEqual([s.value for s in counts], [0, 0, 24, 12, 8])
        self.assertEqual([s.value for s in ratios], [0.0, 0.0, 1.0, 0.5, 8 / 24])
        self.assertEqual(select_answer(counts), 2)
        self.assertEqual(select_answer(ratios), 2)
        self.assertEqual(select_answer(ratios, Polarity.NEGATIVE), 0)

    def test_program_order_does_not_matter(self):
        cfg, programs = committee_game()
        self.assertEqual(solve(programs, cfg), solve(programs[::-1], cfg))

    def test_trace(self):
        cfg, programs = committee_game()
        trace = SearchTrace()
        stats = SearchStats()
        solve(programs, cfg, stats=stats, trace=trace)
        self.assertEqual(trace.rows[0], {"node": 0, "parent": None, "program": None, "verdict": "root"})
        self.assertEqual(len(trace.rows), stats.nodes)
        self.assertEqual({r["verdict"] for r in trace.rows[1:]} - {"True", "False", "Unknown"}, set())
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "trace.jsonl")
            trace.dump(path)
            with open(path) as f:
                rows = [json.loads(line) for line in f]
        self.assertEqual(rows, trace.rows)


class TestLimits(unittest.TestCase):
    def test_node_budget(self):
        cfg, programs = committee_game()
        with self.assertRaises(LimitsExceeded) as cm:
            solve(programs, cfg, limits=SearchLimits(max_nodes=5))
        self.assertEqual(cm.exception.stats.nodes, 6)

    def test_assignment_budget(self):
        cfg, programs = committee_game()
        with self.assertRaises(LimitsExceeded) as cm:
            solve(programs, cfg, limits=SearchLimits(max_assignments=10))
        self.assertEqual(cm.exception.stats.assignments, 11)

    def test_parse(self):
        self.assertEqual(SearchLimits.parse("100,5"), SearchLimits(100, 5))
        with self.assertRaises(LsatError):
            SearchLimits.parse("100")
        with self.assertRaises(LsatError):
            SearchLimits(0, 1)


class TestEdgeCases(unittest.TestCase):
    def test_contradictory_constraints(self):
        cfg = GameConfig.build(["A", "B"], ["X", "Y"])
        programs = [parse_program("To(A,X)"), parse_program("NOT To(A,X)")]
        self.assertEqual(solve(programs, cfg), [])
        programs = [parse_program("To(A,X)"), parse_program("COUNT(SELECT(X)) = 0")]
        self.assertEqual(solve(programs, cfg), [])

    def test_no_programs(self):
        cfg = GameConfig.build(["A", "B"], ["X", "Y"], Multiplicity.AT_MOST_ONE)
        self.assertEqual(len(solve([], cfg)), 9)

    def test_bind_errors(self):
        cfg = GameConfig.build(["A", "B"], ["X", "Y"])
        with self.assertRaises(ProgramBindError):
            solve([parse_program("To(C,X)")], cfg)
        cfg = GameConfig.build(["A", "B"], ["1", "2"], ordered=True)
        with self.assertRaises(ProgramBindError):
            solve([parse_program("Adjacent(A,B)")], cfg, adjacency=False)

    def test_ordering_game(self):
        cfg = GameConfig.build(list("JKLMN"), ["1", "2", "3", "4", "5"], capacities=[(1, 1)] * 5, ordered=True)
        programs = [parse_program(p) for p in ["Before(J,K)", "VALUE(M) = VALUE(L) + 1", "To(N,1)"]]
        legit = solve(programs, cfg)
        self.assertEqual(len(legit), 3)
        self.assertEqual(set(legit), brute_force(cfg, programs))


class TestAgainstBruteForce(unittest.TestCase):
    def test_random_games(self):
        rng = np.random.default_rng(7)
        for game in range(500):
            cfg = random_game(rng)
            programs = [random_program(rng, cfg) for _ in range(int(rng.integers(0, 7)))]
            legit = solve(programs, cfg)
            self.assertEqual(set(legit), brute_force(cfg, programs), [p.to_text() for p in programs])
            self.assertEqual(len(legit), len(set(legit)))
            if game < 100 and len(programs) > 1:
                shuffled = [programs[int(i)] for i in rng.permutation(len(programs))]
                self.assertEqual(solve(shuffled, cfg), legit)


class TestSelection(unittest.TestCase):
    def scores(self, values, interpretable=None):
        interpretable = interpretable or [True] * len(values)
        return [OptionScore(i, "ratio", v, ok) for i, (v, ok) in enumerate(zip(values, interpretable))]

    def test_ties_go_to_lowest_index(self):
        self.assertEqual(select_answer(self.scores([0.2, 0.5, 0.5, 0.1, 0.5])), 1)
        self.assertEqual(select_answer(self.scores([0.2, 0.1, 0.5, 0.1, 0.5]), Polarity.NEGATIVE), 1)

    def test_negative_polarity_skips_uninterpretable(self):
        scores = self.scores([0.0, 0.3, 0.2, 0.9, 0.4], [False, True, True, True, True])
        self.assertEqual(select_answer(scores, Polarity.NEGATIVE), 2)
        scores = self.scores([0.0] * 5, [False] * 5)
        self.assertEqual(select_answer(scores, Polarity.NEGATIVE), 0)

    def test_errors(self):
        with self.assertRaises(LsatError):
            select_answer(self.scores([0.1, 0.2]))
        cfg, programs = committee_game()
        with self.assertRaises(LsatError):
            score_option([], parse_program("To(A,X)"), "median", cfg)
        with self.assertRaises(LsatError):
            score_option([Assignment.from_rows(["." * 7, "." * 7])], parse_program("To(A,X)"), "count", cfg)

    def test_uninterpretable_option(self):
        cfg, _ = committee_game()
        score = score_option([], None, "ratio", cfg, 3, "no trigger matched")
        self.assertEqual(score, OptionScore(3, "ratio", 0.0, False, "no trigger matched"))
        self.assertEqual(score_option([], parse_program("To(A,X)"), "ratio", cfg).value, 0.0)


if __name__ == "__main__":
    unittest.main()
