from .values import EntityValue, NumValue, TriBool
from .ast import (
    Adjacent,
    After,
    And,
    ArgMax,
    ArgMin,
    Arith,
    Before,
    Compare,
    Const,
    Count,
    ExprType,
    FunctionKind,
    IfThen,
    Max,
    Min,
    Node,
    Not,
    Or,
    ParticipantRef,
    ParticipantSet,
    Select,
    To,
    Value,
    walk,
)
from .evaluator import EvalContext, bind, evaluate, free_entities
from .parser import load_programs, parse_program, print_program, tokenize
