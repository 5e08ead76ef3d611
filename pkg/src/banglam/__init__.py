"""Lambek calculus with a bang modality: prover, categorical compiler,
tensor semantics, and a phrase-disambiguation experiment harness."""

from .formulas import (
    Atom,
    Bang,
    Formula,
    FormulaSyntaxError,
    Over,
    Product,
    Sequent,
    Under,
    Unit,
    UNIT,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)
from .prover import (
    DEFAULT_BUDGET,
    Derivation,
    RuleData,
    RuleTag,
    SearchBudget,
    check,
    check_detailed,
    prove,
    prove_all,
    rule_counts,
)

__version__ = "0.1.0"
