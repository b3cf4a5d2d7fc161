import unittest

import numpy as np

from lsatreason.errors import ProgramBindError, ProgramTypeError
from lsatreason.game import Assignment, GameConfig, Multiplicity
from lsatreason.game.assignment import new_assignment, set_cell
from lsatreason.program import NumValue, TriBool, Value, evaluate, parse_program
from lsatreason.program.ast import FunctionKind, compare_nums

from oracles import concrete_eval, placements, random_game, random_program, to_assignment


def ordering(multiplicity=Multiplicity.EXACTLY_ONE) -> GameConfig:
    return GameConfig.build(["A", "B", "C"], ["1", "2", "3"], multiplicity, ordered=True)


def truth(text: str, rows, cfg: GameConfig) -> TriBool:
    return evaluate(parse_program(text), Assignment.from_rows(rows), cfg)


class TestTriBool(unittest.TestCase):
    def test_kleene_tables(self):
        T, F, U = TriBool.TRUE, TriBool.FALSE, TriBool.UNKNOWN
        self.assertIs(F & U, F)
        self.assertIs(T & U, U)
        self.assertIs(T | U, T)
        self.assertIs(F | U, U)
        self.assertIs(~U, U)
        self.assertIs(TriBool.all([]), T)
        self.assertIs(TriBool.any([]), F)
        self.assertEqual(str(U), "Unknown")

    def test_comparisons(self):
        self.assertIs(compare_nums(FunctionKind.LT, NumValue(1, 2), NumValue(3, 4)), TriBool.TRUE)
        self.assertIs(compare_nums(FunctionKind.LT, NumValue(1, 3), NumValue(3, 4)), TriBool.UNKNOWN)
        self.assertIs(compare_nums(FunctionKind.GE, NumValue(1, 2), NumValue(3, 4)), TriBool.FALSE)
        self.assertIs(compare_nums(FunctionKind.NE, NumValue.missing(), NumValue.exact(1)), TriBool.FALSE)
        self.assertIs(compare_nums(FunctionKind.EQ, NumValue(2, 2, may_absent=True), NumValue.exact(2)), TriBool.UNKNOWN)


class TestSemantics(unittest.TestCase):
    def test_ordering_functions(self):
        cfg = ordering()
        rows = ["TFF", "FFT", "FTF"]  # A=1, C=2, B=3
        self.assertIs(truth("Before(A,C) AND After(B,C)", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("Adjacent(A,C) AND NOT Adjacent(A,B)", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("VALUE(A) + 1 = VALUE(C)", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("MAX({A,C}) = 2 AND MIN(SELECT(3)) = 3", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("B = ARGMAX({A,B,C}) AND A = ARGMIN({A,B,C})", rows, cfg), TriBool.TRUE)

    def test_argmax_ties(self):
        cfg = GameConfig.build(["A", "B", "C"], ["1", "2"], ordered=True)
        rows = ["FFT", "TTF"]
        self.assertIs(truth("A = ARGMAX({A,B,C})", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("B = ARGMAX({A,B,C})", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("C != ARGMAX({A,B,C})", rows, cfg), TriBool.TRUE)

    def test_unplaced_participants(self):
        cfg = ordering(Multiplicity.AT_MOST_ONE)
        rows = ["FTF", "FFT", "FFF"]  # A unplaced
        for text in ["VALUE(A) != 2", "VALUE(A) = 2", "Before(A,B)", "After(A,B)", "Adjacent(A,B)"]:
            self.assertIs(truth(text, rows, cfg), TriBool.FALSE, text)
        self.assertIs(truth("NOT Before(A,B)", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("COUNT({A,B,C}) = 2", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("A != ARGMAX(SELECT(3))", rows, cfg), TriBool.TRUE)
        self.assertIs(truth("MAX(SELECT(3)) = 3", rows, cfg), TriBool.FALSE)

    def test_partial_assignments(self):
        cfg = GameConfig.build(["A", "B", "C"], ["X", "Y"])
        root = new_assignment(cfg)
        self.assertIs(evaluate(parse_program("COUNT(SELECT(X)) >= 0"), root, cfg), TriBool.TRUE)
        self.assertIs(evaluate(parse_program("COUNT(SELECT(X)) > 3"), root, cfg), TriBool.FALSE)
        self.assertIs(evaluate(parse_program("COUNT(SELECT(X)) = 1"), root, cfg), TriBool.UNKNOWN)
        self.assertIs(evaluate(parse_program("COUNT({A,B,C}) = 3"), root, cfg), TriBool.TRUE)
        self.assertIs(evaluate(parse_program("IfThen({To(A,X)}, {To(B,Y)})"), root, cfg), TriBool.UNKNOWN)
        a = set_cell(root, cfg.participant("A"), cfg.position("Y"), True, cfg)
        self.assertIs(evaluate(parse_program("IfThen({To(A,X)}, {To(B,Y)})"), a, cfg), TriBool.TRUE)
        self.assertIs(evaluate(parse_program("To(A,X) AND To(B,Y)"), a, cfg), TriBool.FALSE)

    def test_value_in_unordered_games(self):
        cfg = GameConfig.build(["A", "B"], ["X", "Y"])
        self.assertIs(truth("VALUE(B) = 2", ["TF", "FT"], cfg), TriBool.TRUE)

    def test_errors(self):
        cfg = GameConfig.build(["A", "B"], ["X", "Y"])
        a = new_assignment(cfg)
        with self.assertRaises(ProgramTypeError):
            evaluate(Value("A"), a, cfg)
        with self.assertRaises(ProgramBindError):
            evaluate(parse_program("Before(A,B)"), a, cfg)
        with self.assertRaises(ProgramBindError):
            evaluate(parse_program("To(Q,X)"), a, cfg)
        cfg = ordering()
        with self.assertRaises(ProgramBindError):
            evaluate(parse_program("Adjacent(A,B)"), new_assignment(cfg), cfg, adjacency=False)


class TestAgainstConcreteSemantics(unittest.TestCase):
    def test_complete_assignments(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            cfg = random_game(rng)
            program = random_program(rng, cfg)
            for where in placements(cfg):
                expected = TriBool.of(concrete_eval(program, where, cfg))
                self.assertIs(evaluate(program, to_assignment(where, cfg), cfg), expected, program.to_text())

    def test_refinement_never_flips_a_definite_value(self):
        rng = np.random.default_rng(6)
        checked = 0
        while checked < 10000:
            cfg = random_game(rng)
            complete = list(placements(cfg))
            if not complete:
                continue
            program = random_program(rng, cfg)
            where = complete[int(rng.integers(len(complete)))]
            final = TriBool.of(concrete_eval(program, where, cfg))
            cells = [(p, s) for p in cfg.participants for s in cfg.positions]
            order = rng.permutation(len(cells))
            a = new_assignment(cfg)
            values = [evaluate(program, a, cfg)]
            for i in order:
                participant, position = cells[int(i)]
                a = set_cell(a, participant, position, where[participant.id] == position.id, cfg)
                self.assertIsNotNone(a)
                values.append(evaluate(program, a, cfg))
            self.assertIs(values[-1], final)
            for k, partial in enumerate(values):
                for refined in values[k + 1 :]:
                    if partial is not TriBool.UNKNOWN:
                        self.assertIs(refined, partial, program.to_text())
                    checked += 1


if __name__ == "__main__":
    unittest.main()
