"""Four-valued and fuzzy bilattice logic with dual-domain free quantification.

The package covers the whole pipeline: truth-value algebra (values),
formula syntax and sugar (syntax), Tarski-style model evaluation and
theory axioms (semantics), truth tables and bounded countermodel search
(search), and a command-line front end (cli).
"""

__version__ = "0.1.0"

from .values import (
    BOTH,
    CORNERS,
    FALSE,
    NEITHER,
    TRUE,
    Classification,
    Mode,
    TruthValue,
    baaz_delta,
    bd_delta,
    bd_neg,
    bivalent_neg,
    circ,
    classify,
    grid_degree,
    grid_degrees,
    grid_values,
    implies,
    leq_i,
    leq_t,
    on_grid,
    parse_value,
    strong_and,
    strong_or,
    weak_and,
    weak_or,
)
from .syntax import (
    EXISTENCE,
    Atom,
    BaazDelta,
    BdDelta,
    BivalentNeg,
    Circ,
    Const,
    Formula,
    Implies,
    InnerExists,
    InnerForall,
    Neg,
    OuterExists,
    OuterForall,
    ParseError,
    Signature,
    SignatureError,
    StrongAnd,
    StrongOr,
    Var,
    WeakAnd,
    WeakOr,
    ast_dump,
    collect_signature,
    desugar,
    free_vars,
    iter_formula_lines,
    parse,
    pretty_print,
)
from .semantics import (
    AXIOM_SCHEMAS,
    Environment,
    EvalError,
    Model,
    ModelError,
    PredicateTable,
    Violation,
    check_existence_axiom,
    check_noncontradiction_axiom,
    check_normality_axiom,
    eval_all_environments,
    evaluate,
    inner_domain,
    model_from_json,
    model_to_json,
    validate_model,
)
from .search import (
    COUNTERMODEL,
    DEFAULT_BUDGET,
    HOLDS_UP_TO_BOUND,
    BudgetError,
    EntailmentQuery,
    ModelSpace,
    NotPropositionalError,
    TruthTable,
    Verdict,
    Witness,
    count_models,
    designated_set,
    entails,
    enumerate_models,
    tautology_check,
    truth_table,
    verify_witness,
)
