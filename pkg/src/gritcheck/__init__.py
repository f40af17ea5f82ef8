"""Checking GRIT unsatisfiability proofs and converting DRUP traces to GRIT."""

from .checker import (
    Reason,
    Rejection,
    UnknownAntecedent,
    Verdict,
    WorkingSet,
    apply_action,
    live_stats,
    propagate,
    propagate_prefix,
    refute,
)
from .clauses import (
    Clause,
    Formula,
    negate,
    normalize_clause,
    satisfies_clause,
    satisfies_formula,
    satisfies_literal,
)
from .convert import (
    ConversionError,
    ConversionStats,
    DeleteMissing,
    IncompleteProof,
    RupFailed,
    TrimOnInvalid,
    backward_trim,
    convert,
)
from .dimacs import parse_dimacs, serialize_dimacs, write_dimacs
from .grit import (
    Delete,
    DrupAdd,
    DrupDelete,
    Original,
    Rup,
    parse_drup,
    parse_grit,
    serialize_drup,
    serialize_grit,
    write_grit,
)
from .lexer import ParseError
from .rup import Assignment, RupEngine, check_rup, used_antecedents

__version__ = "0.1.0"
