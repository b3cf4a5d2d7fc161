from .entities import EntityCatalog, Mention, extract_entities, split_sentences
from .lexicon import LexiconRule, TriggerLexicon, default_lexicon, load_lexicon, parse_lexicon
from .interpreter import (
    conjoin,
    interpret_clause,
    interpret_constraint,
    interpret_context,
    interpret_option,
    question_premise,
    roster_program,
)
from .positions import annotate_positions
