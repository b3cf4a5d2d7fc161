from .limits import SearchLimits, SearchStats
from .executor import SearchTrace, initial_assignment, solve
from .scoring import (
    N_OPTIONS,
    CountMode,
    OptionScore,
    Polarity,
    RatioMode,
    ScoreMode,
    score_option,
    select_answer,
)
