from .symbols import (
    ExpressionSet,
    Implication,
    Literal,
    LogicSymbol,
    contrapose,
    negate,
    symbol_table,
)
from .extension import Derivation, derive, extend_closure, select_related, transitive_join
from .identification import (
    NEGATION_CUES,
    ConditionalPatterns,
    has_negation_cue,
    identification_recall,
    identify_logic,
)
from .verbalize import verbalize, verbalize_all
from .augment import AugmentOp, augment_negative, negative_contexts
from .rng import MCG64
