from .errors import LsatError
from .game import GameConfig, Multiplicity, Assignment
from .program import parse_program, print_program, evaluate
from .interpret import EntityCatalog, default_lexicon, extract_entities, interpret_constraint, interpret_option
from .solver import SearchLimits, solve, score_option, select_answer
from .harness import load_dataset, run_ar, run_lr_extend, overall_score, scaled_score, default_scale
from .logic import extend_closure, identify_logic, verbalize, augment_negative
