"""Function algebras over the naturals.

A library for the pairing-based encodings, derivation terms and their
metered evaluation, the clausal definition language, the compilers from
terms/formulas/clausal definitions to derivations, the two
recursion-elimination transformations, and the 0-/1-input complexity
harness.
"""

from .codec import (
    FinSet,
    ack_decode,
    ack_encode,
    ack_member,
    base_pair,
    base_unpair,
    head,
    is_tree,
    list_concat,
    list_decode,
    list_encode,
    list_len,
    pair,
    seq_concat,
    seq_decode,
    seq_encode,
    seq_len,
    seq_prefix,
    seq_prefix_proper,
    tail,
    tuple_encode,
    unpair,
)

from .derivation import (
    ADD,
    CLASSES,
    D,
    DA,
    DEA,
    DSA,
    E,
    I,
    LT,
    MUL,
    ORACLE,
    PRA,
    S,
    SA,
    SMASH,
    SSA,
    TA,
    AlgebraClass,
    Derivation,
    EnumerationError,
    Op,
    ParseError,
    PolyBound,
    UnboundedOperatorError,
    P,
    bpr,
    comp,
    d_parse,
    d_print,
    derivation_at,
    enumerate_derivations,
    index_of,
    mu,
    poly_bound,
    pr,
    snr,
    validate,
)
from .evaluator import (
    Budget,
    BudgetExceeded,
    Meter,
    eval_memo,
    eval_naive,
    evaluate,
    meter_line,
)
from .clausal import (
    CLSyntaxError,
    MeasureViolation,
    RestrictionError,
    RestrictionReport,
    check_recursive_restrictions,
    complete_to_strict,
    eval_clausal,
    parse_cl,
    print_cl,
)
from .compiler import (
    NotExplicitError,
    UnboundVariableError,
    VarCtx,
    compile_explicit,
    compile_formula,
    compile_term,
    eval_formula_direct,
    eval_term_direct,
    pack_args,
)
from .reduction import (
    BoundViolation,
    ReductionArtifacts,
    ReductionError,
    build_dispatcher,
    reduce_bounded_nested_to_snr,
    reduce_recursive_to_pr,
)
from .harness import (
    CharMode,
    PREDICATES,
    PredicateError,
    ScalingReport,
    certify_bound,
    char_run,
    scaling_study,
)

__all__ = [
    "ADD",
    "CLASSES",
    "CLSyntaxError",
    "CharMode",
    "D",
    "DA",
    "DEA",
    "DSA",
    "E",
    "I",
    "LT",
    "MUL",
    "ORACLE",
    "PRA",
    "PREDICATES",
    "S",
    "SA",
    "SMASH",
    "SSA",
    "TA",
    "AlgebraClass",
    "BoundViolation",
    "Budget",
    "BudgetExceeded",
    "Derivation",
    "EnumerationError",
    "MeasureViolation",
    "Meter",
    "NotExplicitError",
    "Op",
    "P",
    "ParseError",
    "PolyBound",
    "PredicateError",
    "ReductionArtifacts",
    "ReductionError",
    "RestrictionError",
    "RestrictionReport",
    "ScalingReport",
    "UnboundVariableError",
    "UnboundedOperatorError",
    "VarCtx",
    "bpr",
    "build_dispatcher",
    "certify_bound",
    "char_run",
    "check_recursive_restrictions",
    "comp",
    "compile_explicit",
    "compile_formula",
    "compile_term",
    "complete_to_strict",
    "d_parse",
    "d_print",
    "derivation_at",
    "enumerate_derivations",
    "eval_clausal",
    "eval_formula_direct",
    "eval_memo",
    "eval_naive",
    "eval_term_direct",
    "evaluate",
    "index_of",
    "meter_line",
    "mu",
    "pack_args",
    "parse_cl",
    "poly_bound",
    "pr",
    "print_cl",
    "reduce_bounded_nested_to_snr",
    "reduce_recursive_to_pr",
    "scaling_study",
    "snr",
    "validate",
    "FinSet",
    "ack_decode",
    "ack_encode",
    "ack_member",
    "base_pair",
    "base_unpair",
    "head",
    "is_tree",
    "list_concat",
    "list_decode",
    "list_encode",
    "list_len",
    "pair",
    "seq_concat",
    "seq_decode",
    "seq_encode",
    "seq_len",
    "seq_prefix",
    "seq_prefix_proper",
    "tail",
    "tuple_encode",
    "unpair",
]
