import unittest

import numpy as np

from lsatreason.errors import ProgramBindError, ProgramSyntaxError, ProgramTypeError
from lsatreason.game import GameConfig
from lsatreason.program import (
    And,
    Compare,
    Const,
    Count,
    FunctionKind,
    IfThen,
    Not,
    ParticipantSet,
    Select,
    To,
    Value,
    bind,
    free_entities,
    load_programs,
    parse_program,
    print_program,
    tokenize,
    walk,
)

from oracles import random_game, random_program


class TestPrinting(unittest.TestCase):
    def test_canonical_round_trips(self):
        for text in [
            "VALUE(roadster) > VALUE(van) AND VALUE(roadster) < VALUE(hatchback)",
            "IfThen({To(A,X)}, {To(B,Y)})",
            "To(A,X) AND (To(B,Y) OR To(C,X))",
            "NOT (To(A,X) AND To(B,X))",
            "COUNT({A,B},X) >= 1 OR COUNT(SELECT(Y)) = 2",
            "VALUE(J) + 1 = VALUE(K)",
            "VALUE(J) - (VALUE(K) - 1) > 0",
            "A = ARGMAX(SELECT(X)) AND MIN({A,B}) != 3",
            'To(A,"X committee") AND NOT Before(A,"before")',
        ]:
            self.assertEqual(print_program(parse_program(text)), text)

    def test_normalization(self):
        self.assertEqual(
            print_program(parse_program("to(A, X) and count(select(X)) >= 2")),
            "To(A,X) AND COUNT(SELECT(X)) >= 2",
        )
        self.assertEqual(print_program(parse_program("VALUE(A) <> 2")), "VALUE(A) != 2")
        self.assertEqual(print_program(parse_program("VALUE(A) ≤ 2")), "VALUE(A) <= 2")
        self.assertEqual(
            parse_program("IF To(A,X) THEN To(B,Y)"),
            parse_program("IfThen({To(A,X)}, {To(B,Y)})"),
        )
        self.assertEqual(parse_program("AND(To(A,X), To(B,X))"), parse_program("To(A,X) AND To(B,X)"))
        self.assertEqual(parse_program("NOT(To(A,X))"), Not(To("A", "X")))

    def test_tree(self):
        ast = parse_program("To(D,X) AND COUNT(SELECT(Y)) = 2")
        self.assertEqual(
            ast,
            And((To("D", "X"), Compare(FunctionKind.EQ, Count(Select("Y")), Const(2)))),
        )
        self.assertEqual([type(n).__name__ for n in walk(ast)], ["And", "To", "Compare", "Count", "Select", "Const"])

    def test_random_programs_round_trip(self):
        rng = np.random.default_rng(4)
        for _ in range(500):
            cfg = random_game(rng)
            ast = random_program(rng, cfg, depth=3)
            self.assertEqual(parse_program(print_program(ast)), ast)


class TestSyntaxErrors(unittest.TestCase):
    def assert_error_at(self, text, line, column):
        with self.assertRaises(ProgramSyntaxError) as cm:
            parse_program(text)
        self.assertEqual((cm.exception.line, cm.exception.column), (line, column))

    def test_positions(self):
        self.assert_error_at("To(A,X) AND", 1, 12)
        self.assert_error_at("To(A X)", 1, 6)
        self.assert_error_at("Foo(A)", 1, 1)
        self.assert_error_at("To(A,X) & To(B,Y)", 1, 9)
        self.assert_error_at("To(A,X)\nAND To(B,", 2, 10)

    def test_chained_comparison(self):
        with self.assertRaises(ProgramSyntaxError):
            parse_program("VALUE(A) < VALUE(B) < 3")

    def test_message(self):
        with self.assertRaises(ProgramSyntaxError) as cm:
            parse_program("IF To(A,X) To(B,Y)")
        self.assertIn("expected THEN", str(cm.exception))

    def test_tokens(self):
        tokens = tokenize('To(A, "X committee") # trailing')
        self.assertEqual([t.kind for t in tokens], ["IDENT", "OP", "IDENT", "OP", "STRING", "OP", "EOF"])
        self.assertEqual(tokens[4].column, 7)


class TestTypeErrors(unittest.TestCase):
    def test_ill_typed(self):
        for text in ["VALUE(A)", "To(A,X) AND VALUE(B)", "A < 3", "NOT 3", "VALUE(A) = To(A,X)", "{A,B}"]:
            with self.assertRaises((ProgramTypeError, ProgramSyntaxError), msg=text):
                parse_program(text)
        with self.assertRaises(ProgramTypeError):
            parse_program("VALUE(A)")

    def test_constructors_check_types(self):
        with self.assertRaises(ProgramTypeError):
            And((To("A", "X"),))
        with self.assertRaises(ProgramTypeError):
            IfThen((), (To("A", "X"),))
        with self.assertRaises(ProgramTypeError):
            Count(Const(1))
        with self.assertRaises(ProgramTypeError):
            Compare(FunctionKind.PLUS, Value("A"), Const(1))
        with self.assertRaises(ProgramTypeError):
            Compare(FunctionKind.LT, Value("A"), ParticipantSet(("A",)))


class TestProgramFiles(unittest.TestCase):
    def test_load(self):
        programs = load_programs("# committee game\nTo(D,X) AND To(F,X)\n\nIF To(A,X) THEN To(B,Y)  # rule 2\n")
        self.assertEqual([print_program(p) for p in programs], ["To(D,X) AND To(F,X)", "IfThen({To(A,X)}, {To(B,Y)})"])

    def test_error_reports_file_line(self):
        with self.assertRaises(ProgramSyntaxError) as cm:
            load_programs("To(A,X)\n\n# note\nTo(B,Y) AND\n")
        self.assertEqual((cm.exception.line, cm.exception.column), (4, 12))


class TestBind(unittest.TestCase):
    CFG = GameConfig.build(["A", "B", "C"], ["X", "Y"])

    def test_ok(self):
        ast = parse_program("To(A,X) AND COUNT({B},Y) = 1")
        self.assertIs(bind(ast, self.CFG), ast)
        participants, positions = free_entities(ast, self.CFG)
        self.assertEqual({p.name for p in participants}, {"A", "B"})
        self.assertEqual({p.name for p in positions}, {"X", "Y"})

    def test_select_depends_on_everyone(self):
        participants, _ = free_entities(parse_program("COUNT(SELECT(X)) = 1"), self.CFG)
        self.assertEqual({p.name for p in participants}, {"A", "B", "C"})

    def test_errors(self):
        for text in ["To(Q,X)", "To(A,Q)", "To(X,A)", "Before(A,B)", "VALUE(X) = 1", "COUNT(SELECT(A)) = 1"]:
            with self.assertRaises(ProgramBindError, msg=text):
                bind(parse_program(text), self.CFG)

    def test_hint(self):
        with self.assertRaises(ProgramBindError) as cm:
            bind(parse_program("To(X,Y)"), self.CFG)
        self.assertIn("it is a position", str(cm.exception))


if __name__ == "__main__":
    unittest.main()
