from .formula import (
    And,
    Const,
    ExactlyOne,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    TRUE,
    Var,
    evaluate,
    partial_evaluate,
    to_text,
    variables,
)
from .cnf import CnfFormula, to_cnf
from .solver import CapacityError, count_models, enumerate_models, is_satisfiable
from .bruteforce import (
    truth_table_count,
    truth_table_models,
    truth_table_satisfiable,
)

__all__ = [
    "And",
    "CapacityError",
    "CnfFormula",
    "Const",
    "ExactlyOne",
    "FALSE",
    "Formula",
    "Iff",
    "Implies",
    "Not",
    "Or",
    "TRUE",
    "Var",
    "count_models",
    "enumerate_models",
    "evaluate",
    "is_satisfiable",
    "partial_evaluate",
    "to_cnf",
    "to_text",
    "truth_table_count",
    "truth_table_models",
    "truth_table_satisfiable",
    "variables",
]
