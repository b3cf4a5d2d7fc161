import unittest

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from lsatreason.errors import AugmentationError, LogicInputError, VerbalizationError
from lsatreason.logic import (
    MCG64,
    ExpressionSet,
    Implication,
    Literal,
    LogicSymbol,
    augment_negative,
    contrapose,
    derive,
    extend_closure,
    has_negation_cue,
    identification_recall,
    identify_logic,
    negative_contexts,
    select_related,
    symbol_table,
    verbalize,
    verbalize_all,
)
from lsatreason.logic.extension import CONTRAPOSITION, TRANSITIVITY, transitive_join

from oracles import closure_oracle, random_implications

literals = st.builds(Literal, st.integers(0, 5), st.booleans())
implications = (
    st.tuples(literals, literals)
    .filter(lambda pair: pair[0].symbol != pair[1].symbol)
    .map(lambda pair: Implication(*pair))
)

SKILLS = "have keyboarding skills"
COMPUTER = "use a computer"
ESSAY = "write your essay using a word processing program"
SENTENCES = [
    "If you do not have keyboarding skills, you will be unable to use a computer.",
    "And if you are unable to use a computer, you will be unable to write your essay "
    "using a word processing program.",
]
SPANS = [[(SKILLS, 0), (COMPUTER, 1)], [(COMPUTER, 1), (ESSAY, 2)]]
TABLE = {0: SKILLS, 1: COMPUTER, 2: ESSAY}


def imp(text: str) -> Implication:
    return Implication.parse(text)


class TestSymbols(unittest.TestCase):
    @given(implications)
    def test_contrapose_is_an_involution(self, e):
        self.assertEqual(contrapose(contrapose(e)), e)
        self.assertNotEqual(contrapose(e), e)

    def test_self_implication_rejected(self):
        with self.assertRaises(LogicInputError):
            Implication(Literal(1), Literal(1, True))

    def test_parse(self):
        self.assertEqual(imp("~0 -> 2"), Implication(Literal(0, True), Literal(2)))
        with self.assertRaises(LogicInputError):
            imp("0 => 1")
        with self.assertRaises(LogicInputError):
            Literal.parse("~x")

    def test_expression_set_keeps_first_occurrence(self):
        exprs = ExpressionSet([imp("0 -> 1"), imp("1 -> 2"), imp("0 -> 1")])
        self.assertEqual(list(exprs), [imp("0 -> 1"), imp("1 -> 2")])
        self.assertEqual(exprs.symbols, frozenset({0, 1, 2}))

    def test_dumps_loads(self):
        exprs = ExpressionSet([imp("~0 -> ~1"), imp("~1 -> ~2")])
        self.assertEqual(exprs.dumps(), "~0 -> ~1\n~1 -> ~2\n")
        self.assertEqual(ExpressionSet.loads(exprs.dumps()), exprs)
        self.assertEqual(ExpressionSet().dumps(), "")

    def test_symbol_table_duplicate_ids(self):
        with self.assertRaises(LogicInputError):
            symbol_table([LogicSymbol(0, "a"), LogicSymbol(0, "b")])
        with self.assertRaises(LogicInputError):
            LogicSymbol(3, "   ")


class TestExtension(unittest.TestCase):
    def test_transitive_join(self):
        self.assertEqual(transitive_join(imp("0 -> ~1"), imp("~1 -> 2")), imp("0 -> 2"))
        self.assertIsNone(transitive_join(imp("0 -> 1"), imp("~1 -> 2")))
        self.assertIsNone(transitive_join(imp("0 -> 1"), imp("1 -> ~0")))

    def test_keyboarding_closure_order(self):
        exprs = ExpressionSet([imp("~0 -> ~1"), imp("~1 -> ~2")])
        derivations = derive(exprs)
        self.assertEqual(
            [str(d.conclusion) for d in derivations],
            ["1 -> 0", "2 -> 1", "~0 -> ~2", "2 -> 0"],
        )
        self.assertEqual([d.rule for d in derivations], [CONTRAPOSITION, CONTRAPOSITION, TRANSITIVITY, CONTRAPOSITION])
        self.assertEqual([d.round for d in derivations], [1, 1, 1, 2])
        self.assertEqual(derivations[2].premises, (imp("~0 -> ~1"), imp("~1 -> ~2")))

    def test_matches_fixpoint_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(10000):
            exprs = ExpressionSet(random_implications(rng, max_symbols=5, max_exprs=4))
            extended = extend_closure(exprs)
            self.assertEqual(extended.as_set(), closure_oracle(list(exprs)))
            self.assertFalse(extended.as_set() & exprs.as_set())
            self.assertEqual(len(extended), len(extended.as_set()))

    def test_closure_is_closed(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            exprs = ExpressionSet(random_implications(rng))
            closed = exprs.union(extend_closure(exprs))
            self.assertEqual(len(extend_closure(closed)), 0)

    def test_deterministic(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            exprs = ExpressionSet(random_implications(rng))
            self.assertEqual(extend_closure(exprs), extend_closure(exprs))

    def test_empty_and_unrelated(self):
        self.assertEqual(len(extend_closure(ExpressionSet())), 0)
        # Middle literals must agree in polarity.
        exprs = ExpressionSet([imp("0 -> 1"), imp("~1 -> 2")])
        self.assertNotIn(imp("0 -> 2"), extend_closure(exprs))

    def test_select_related(self):
        extended = extend_closure(ExpressionSet([imp("~0 -> ~1"), imp("~1 -> ~2")]))
        related = select_related(extended, [LogicSymbol(2, ESSAY)])
        self.assertEqual([str(e) for e in related], ["2 -> 1", "~0 -> ~2", "2 -> 0"])
        self.assertEqual(len(select_related(extended, [7])), 0)


class TestIdentification(unittest.TestCase):
    def test_keyboarding_passage(self):
        exprs = identify_logic(SENTENCES, SPANS)
        self.assertEqual([str(e) for e in exprs], ["~0 -> ~1", "~1 -> ~2"])

    def test_symbol_objects_are_accepted(self):
        symbols = [LogicSymbol(0, SKILLS), LogicSymbol(1, COMPUTER)]
        exprs = identify_logic(SENTENCES[:1], [[(SKILLS, symbols[0]), (COMPUTER, symbols[1])]])
        self.assertEqual([str(e) for e in exprs], ["~0 -> ~1"])

    def test_unless(self):
        exprs = identify_logic(["You will not pass unless you study."], [[("pass", 0), ("study", 1)]])
        self.assertEqual([str(e) for e in exprs], ["1 -> 0"])

    def test_due_to_and_thus(self):
        exprs = identify_logic(
            ["The crop failed due to the drought.", "Prices rise, thus demand falls."],
            [[("crop failed", 0), ("drought", 1)], [("prices rise", 2), ("demand falls", 3)]],
        )
        self.assertEqual([str(e) for e in exprs], ["1 -> 0", "2 -> 3"])

    def test_sentences_without_conditionals(self):
        exprs = identify_logic(
            ["You have keyboarding skills and use a computer.", "If you use a computer."],
            [[(SKILLS, 0), (COMPUTER, 1)], [(COMPUTER, 1)]],
        )
        self.assertEqual(len(exprs), 0)

    def test_bad_spans(self):
        with self.assertRaises(LogicInputError):
            identify_logic(SENTENCES, SPANS[:1])
        with self.assertRaises(LogicInputError):
            identify_logic(["If a big dog barks, then cats run."], [[("a big dog", 0), ("big dog barks", 1)]])

    def test_negation_cues(self):
        self.assertTrue(has_negation_cue("she doesn't know"))
        self.assertTrue(has_negation_cue("none of them"))
        self.assertTrue(has_negation_cue("unable to"))
        self.assertFalse(has_negation_cue("nonetheless"))
        self.assertFalse(has_negation_cue("none"))

    def test_recall(self):
        gold = [imp("~0 -> ~1"), imp("~1 -> ~2")]
        self.assertEqual(identification_recall(identify_logic(SENTENCES, SPANS), gold), 1.0)
        self.assertEqual(identification_recall([imp("~0 -> ~1")], gold), 0.5)
        self.assertEqual(identification_recall([], []), 1.0)


class TestVerbalize(unittest.TestCase):
    def test_template(self):
        self.assertEqual(
            verbalize(imp("~0 -> ~2"), TABLE),
            "If do not have keyboarding skills, then will not write your essay using a word processing program",
        )
        self.assertEqual(verbalize(imp("1 -> 0"), TABLE), "If use a computer, then have keyboarding skills")

    def test_passage(self):
        text = verbalize_all([imp("2 -> 1"), imp("1 -> 0")], TABLE)
        self.assertEqual(
            text,
            "If write your essay using a word processing program, then use a computer. "
            "If use a computer, then have keyboarding skills.",
        )
        self.assertEqual(verbalize_all([], TABLE), "")

    def test_missing_symbol(self):
        with self.assertRaises(VerbalizationError):
            verbalize(imp("0 -> 9"), TABLE)


class TestAugment(unittest.TestCase):
    EXPRS = ExpressionSet([imp("~0 -> ~1"), imp("~1 -> ~2"), imp("3 -> 0")])

    def test_each_operator_edits_one_expression(self):
        for seed in range(1000):
            for op in ("delete", "reverse", "negate"):
                result = augment_negative(self.EXPRS, op, seed)
                self.assertEqual(result, augment_negative(self.EXPRS, op, seed))
                removed = self.EXPRS.as_set() - result.as_set()
                added = result.as_set() - self.EXPRS.as_set()
                self.assertEqual(len(removed), 1)
                if op == "delete":
                    self.assertEqual(len(result), len(self.EXPRS) - 1)
                    self.assertFalse(added)
                else:
                    self.assertEqual(len(result), len(self.EXPRS))
                    self.assertEqual(len(added), 1)
                    (old,), (new,) = removed, added
                    self.assertEqual(list(self.EXPRS).index(old), list(result).index(new))

    def test_reverse_swaps_sides(self):
        result = augment_negative(ExpressionSet([imp("0 -> 1")]), "reverse", 5)
        self.assertEqual(list(result), [imp("1 -> 0")])

    def test_failures(self):
        with self.assertRaises(AugmentationError):
            augment_negative(ExpressionSet(), "delete")
        with self.assertRaises(AugmentationError):
            augment_negative(ExpressionSet([imp("0 -> 1"), imp("1 -> 0")]), "reverse")
        with self.assertRaises(AugmentationError):
            augment_negative(self.EXPRS, "shuffle")

    def test_negative_contexts(self):
        table = dict(TABLE, **{3: "type quickly"})
        contexts = negative_contexts(self.EXPRS, table, seed=4)
        self.assertEqual(set(contexts), {"delete", "reverse", "negate"})
        for text in contexts.values():
            self.assertTrue(text.startswith("If "))
        blocked = negative_contexts(ExpressionSet([imp("0 -> 1"), imp("1 -> 0")]), TABLE)
        self.assertIsNone(blocked["reverse"])
        self.assertIsNotNone(blocked["delete"])


class TestMCG64(unittest.TestCase):
    def test_reference_sequence(self):
        rng = MCG64(0)
        self.assertEqual([rng.next() for _ in range(3)], [1481765933, 1751095458, 184838518])
        self.assertEqual(MCG64(7).below(10), 1)

    def test_below_range(self):
        rng = MCG64(123)
        draws = [rng.below(5) for _ in range(1000)]
        self.assertEqual(set(draws), {0, 1, 2, 3, 4})
        with self.assertRaises(ValueError):
            rng.below(0)

    def test_seeds_replay(self):
        a, b = MCG64(-3), MCG64(-3)
        self.assertEqual([a.next() for _ in range(10)], [b.next() for _ in range(10)])


if __name__ == "__main__":
    unittest.main()
