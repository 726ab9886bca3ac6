"""Minimal sets over monotone predicates for Boolean function problems.

Reduces MUS/MCS extraction, redundancy removal, backbones, prime
implicants/implicates, autarkies, minimal models and their cardinality
variants to one scheme: minimize a monotone predicate over a reference set,
answering predicate tests with an incremental SAT oracle.
"""

from .formula import (
    And,
    Assignment,
    Atom,
    CnfFormula,
    DnfFormula,
    EvaluationError,
    Formula,
    FormulaError,
    Not,
    Or,
    clausify,
    cnf_negation_of_clause_set,
    evaluate,
    flip_polarity,
    negate,
    substitute,
    variables,
)
from .formats import ParseError, ProblemInstance, parse_dimacs, parse_dnf, parse_formula_text, parse_gcnf, parse_wcnf
from .minimize import (
    ALGORITHMS,
    IllPosedError,
    MinimalSetResult,
    MonotonePredicate,
    extract_minimal,
    oracle_call_count,
)
from .oracle import EmbeddedSession, ExternalSession, OracleError, OracleSession, SolveOutcome, make_session
from .reductions import PreconditionError, Problem, ProblemAnswer, build_predicate, decode_answer, solve
from .verifier import BruteForceBudget, BudgetExceededError, brute_solve, check_answer, check_monotone, enumerate_models

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "And",
    "Assignment",
    "Atom",
    "BruteForceBudget",
    "BudgetExceededError",
    "CnfFormula",
    "DnfFormula",
    "EmbeddedSession",
    "EvaluationError",
    "ExternalSession",
    "Formula",
    "FormulaError",
    "IllPosedError",
    "MinimalSetResult",
    "MonotonePredicate",
    "Not",
    "OracleError",
    "OracleSession",
    "Or",
    "ParseError",
    "PreconditionError",
    "Problem",
    "ProblemAnswer",
    "ProblemInstance",
    "SolveOutcome",
    "brute_solve",
    "build_predicate",
    "check_answer",
    "check_monotone",
    "clausify",
    "cnf_negation_of_clause_set",
    "decode_answer",
    "enumerate_models",
    "evaluate",
    "extract_minimal",
    "flip_polarity",
    "make_session",
    "negate",
    "oracle_call_count",
    "parse_dimacs",
    "parse_dnf",
    "parse_formula_text",
    "parse_gcnf",
    "parse_wcnf",
    "solve",
    "substitute",
    "variables",
]
