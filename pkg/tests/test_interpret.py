import os
import tempfile
import unittest

from lsatreason.errors import EntityExtractionError, InterpretationError, LexiconError
from lsatreason.interpret import (
    EntityCatalog,
    annotate_positions,
    conjoin,
    default_lexicon,
    extract_entities,
    interpret_clause,
    interpret_constraint,
    interpret_context,
    interpret_option,
    load_lexicon,
    parse_lexicon,
    question_premise,
    roster_program,
    split_sentences,
)
from lsatreason.program import And, FunctionKind, IfThen, Not, To, parse_program

COMMITTEE_CONTEXT = (
    "A company's seven directors, A, B, C, D, E, F, and G, will be assigned to two committees, "
    "the X committee and the Y committee. D and F both serve on the X committee. "
    "If A serves on the X committee, then B serves on the Y committee. "
    "C does not serve on the Y committee."
)
ORDERING_CONTEXT = (
    "Five cars, J, K, L, M, and N, are serviced on days 1 through 5. J is serviced before K. "
    "M is serviced immediately after L. N is serviced on day 1."
)


def committee_catalog() -> EntityCatalog:
    return EntityCatalog.build(list("ABCDEFG"), ["X committee", "Y committee"])


def ordering_catalog() -> EntityCatalog:
    return EntityCatalog.build(list("JKLMN"), ["1", "2", "3", "4", "5"], ordered=True)


class TestEntities(unittest.TestCase):
    def test_split_sentences(self):
        self.assertEqual(split_sentences(" One. Two?  Three! "), ["One.", "Two?", "Three!"])
        self.assertEqual(split_sentences("  "), [])

    def test_committee_game(self):
        cat = extract_entities(COMMITTEE_CONTEXT)
        self.assertEqual(cat.participants, tuple("ABCDEFG"))
        self.assertEqual(cat.positions, ("X committee", "Y committee"))
        self.assertEqual(cat.aliases, (("X", "X committee"), ("Y", "Y committee")))
        self.assertFalse(cat.ordered)

    def test_ordering_game(self):
        cat = extract_entities(ORDERING_CONTEXT)
        self.assertEqual(cat.participants, tuple("JKLMN"))
        self.assertEqual(cat.positions, ("1", "2", "3", "4", "5"))
        self.assertTrue(cat.ordered)
        cfg = cat.game_config(capacities=[(1, 1)] * 5)
        self.assertEqual(cfg.shape, (5, 5))
        self.assertEqual(cfg.ordinal(cfg.position("3").id), 3)

    def test_weekday_range(self):
        cat = extract_entities("Six lectures, F, G, H, I, J, and K, are given on Monday through Saturday.")
        self.assertEqual(cat.participants, tuple("FGHIJK"))
        self.assertEqual(cat.positions, ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"))
        self.assertTrue(cat.ordered)

    def test_extraction_errors(self):
        for context in ["", "Nothing to see here.", "Five cars are serviced on days 1 through 5."]:
            with self.assertRaises(EntityExtractionError, msg=context):
                extract_entities(context)

    def test_catalog_errors(self):
        with self.assertRaises(EntityExtractionError):
            EntityCatalog(("A", "A"), ("X", "Y"))
        with self.assertRaises(EntityExtractionError):
            EntityCatalog(("A", "B"), ("A", "Y"))
        with self.assertRaises(EntityExtractionError):
            EntityCatalog(("A", "B"), ("X", "Y"), aliases=(("Z", "Q"),))

    def test_mentions(self):
        cat = committee_catalog()
        mentions = cat.mentions("If A serves on the X committee, then B serves on the y committee.")
        self.assertEqual(
            [(m.role, m.name) for m in mentions],
            [("participant", "A"), ("position", "X committee"), ("participant", "B"), ("position", "Y committee")],
        )
        self.assertEqual(cat.resolve(" X "), ("position", "X committee"))
        self.assertIsNone(cat.resolve("x"))

    def test_number_mentions(self):
        mentions = committee_catalog().mentions("at least 3 but no more than four")
        self.assertEqual([(m.role, m.value) for m in mentions], [("number", 3), ("number", 4)])


class TestConstraints(unittest.TestCase):
    def test_membership(self):
        cat = committee_catalog()
        self.assertEqual(
            interpret_constraint("D and F both serve on the X committee.", cat),
            And((To("D", "X committee"), To("F", "X committee"))),
        )
        self.assertEqual(interpret_constraint("E serves on the Y committee.", cat), To("E", "Y committee"))

    def test_negation(self):
        cat = committee_catalog()
        self.assertEqual(
            interpret_constraint("C does not serve on the Y committee.", cat), Not(To("C", "Y committee"))
        )
        self.assertEqual(
            interpret_constraint("G cannot serve on the X committee.", cat), Not(To("G", "X committee"))
        )

    def test_conditional(self):
        cat = committee_catalog()
        self.assertEqual(
            interpret_constraint("If A serves on the X committee, then B serves on the Y committee.", cat),
            IfThen((To("A", "X committee"),), (To("B", "Y committee"),)),
        )

    def test_counting(self):
        cat = committee_catalog()
        self.assertEqual(
            interpret_constraint("Exactly two directors serve on the X committee.", cat),
            parse_program('COUNT(SELECT("X committee")) = 2'),
        )

    def test_ordering(self):
        cat = ordering_catalog()
        self.assertEqual(interpret_constraint("J is serviced before K.", cat), parse_program("Before(J,K)"))
        self.assertEqual(
            interpret_constraint("M is serviced immediately after L.", cat),
            parse_program("VALUE(M) = VALUE(L) + 1"),
        )
        self.assertEqual(interpret_constraint("N is serviced on day 1.", cat), To("N", "1"))

    def test_unresolved_slots_are_skipped(self):
        cat = committee_catalog()
        node, diagnostic = interpret_clause("A serves on the committee.", cat, default_lexicon())
        self.assertIsNone(node)
        self.assertIn("no position", diagnostic)
        self.assertIsNone(interpret_constraint("A serves on the committee.", cat))
        self.assertEqual(
            interpret_clause("A sits in X.", cat, default_lexicon()),
            (None, "no trigger matched"),
        )

    def test_context(self):
        cat = extract_entities(COMMITTEE_CONTEXT)
        triples = interpret_context(COMMITTEE_CONTEXT, cat)
        self.assertEqual(len(triples), 3)
        self.assertTrue(all(node is not None and diagnostic is None for _, node, diagnostic in triples))
        self.assertEqual(triples[2][0], "C does not serve on the Y committee.")


class TestLexicon(unittest.TestCase):
    def test_starter_lexicon(self):
        lex = default_lexicon()
        self.assertGreater(len(lex), 10)
        self.assertIs(lex, default_lexicon())
        self.assertIs(lex.rules[0].kind, FunctionKind.IF_THEN)
        self.assertIs(lex.rules[-1].kind, FunctionKind.TO)

    def test_custom_rules(self):
        lex = parse_lexicon("# seating\n\n\\bsits\\s+in\\b => To([P<1],[S>1])\n")
        self.assertEqual(len(lex), 1)
        self.assertEqual(lex.rules[0].line, 3)
        cat = EntityCatalog.build(["A", "B"], ["X", "Y"])
        self.assertEqual(interpret_clause("A sits in X.", cat, lex), (To("A", "X"), None))

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "rules.lex")
            with open(path, "w", encoding="utf-8") as f:
                f.write("\\bnext\\s+to\\b => Adjacent([P<1],[P>1])\n")
            lex = load_lexicon(path)
        self.assertEqual(lex.source, path)
        self.assertIs(lex.rules[0].kind, FunctionKind.ADJACENT)

    def test_errors_report_line(self):
        for text in [
            "no separator here",
            "x => Bar([P<1])",
            "(unclosed => To([P<1],[S>1])",
            "x => To([P],[S<0])",
            "x => IfThen({[@1]}, {[@1]})",
            "x => To([S<*],[S>1])",
            "x => AND(To([P<&],[S>1]), To([P>&],[S>1]))",
            "x => To([P<1],[S>1]) AND",
        ]:
            with self.assertRaises(LexiconError, msg=text) as cm:
                parse_lexicon("# header\n" + text)
            self.assertEqual(cm.exception.line, 2, text)


class TestOptions(unittest.TestCase):
    def test_roster(self):
        cat = committee_catalog()
        self.assertEqual(
            roster_program("X: A and B; Y: none", cat),
            And((To("A", "X committee"), To("B", "X committee"))),
        )
        program = roster_program("X committee: A, D, F; Y committee: B, C, E, G", cat)
        self.assertEqual(len(program.operands), 7)
        for text in ["A serves on the X committee.", "Q: A", "X: A, Q", "X: none"]:
            self.assertIsNone(roster_program(text, cat), text)

    def test_premise(self):
        cat = committee_catalog()
        question = "If B serves on the Y committee, which one of the following must be true?"
        self.assertEqual(question_premise(question, cat), To("B", "Y committee"))
        self.assertIsNone(question_premise("Which one of the following could be true?", cat))
        self.assertEqual(
            interpret_option(question, "A serves on the X committee.", cat),
            And((To("B", "Y committee"), To("A", "X committee"))),
        )

    def test_conjoin_flattens(self):
        a, b, c = To("A", "X"), To("B", "X"), To("C", "Y")
        self.assertEqual(conjoin(And((a, b)), c), And((a, b, c)))
        self.assertEqual(conjoin(a, And((b, c))), And((a, b, c)))

    def test_uninterpretable_option(self):
        cat = committee_catalog()
        with self.assertRaises(InterpretationError) as cm:
            interpret_option(
                "Which one of the following could be true?", "None of the above is possible.", cat, option_index=4
            )
        self.assertEqual(cm.exception.option_index, 4)


class TestPositions(unittest.TestCase):
    def test_marks(self):
        marked = annotate_positions("First line.\nSecond line.\n\n\nNext paragraph.\n")
        self.assertEqual(
            marked,
            "<P1><line1>First line.</line1>\n<line2>Second line.</line2></P1>\n\n"
            "<P2><line3>Next paragraph.</line3></P2>",
        )
        self.assertEqual(annotate_positions(marked), marked)
        self.assertEqual(annotate_positions(""), "")


if __name__ == "__main__":
    unittest.main()
