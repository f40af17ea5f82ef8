"""Literals, clauses, formulas and their propositional semantics.

Literals follow the DIMACS convention: a nonzero int whose absolute value is
the variable and whose sign is the polarity.  Clauses are tuples of literals
in canonical order (by variable, positive before negative) with duplicates
removed, so two clauses are equal exactly when they are equal as sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

Literal = int
Clause = tuple[int, ...]
Valuation = Mapping[int, bool]

# ids and literals share the 64-bit signed range of the wire formats
MAX_INT = 2**63 - 1


def var(lit: Literal) -> int:
    return lit if lit > 0 else -lit


def negate(lit: Literal) -> Literal:
    return -lit


def make_literal(variable: int, positive: bool = True) -> Literal:
    if variable < 1:
        raise ValueError(f"variable must be >= 1, got {variable}")
    return variable if positive else -variable


def _lit_key(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


def normalize_clause(lits: Iterable[int]) -> Clause:
    """Deduplicate and sort literals; tautologies are kept as they are."""
    unique = set(lits)
    if 0 in unique:
        raise ValueError("0 is not a literal")
    return tuple(sorted(unique, key=_lit_key))


def is_tautology(clause: Iterable[int]) -> bool:
    seen = set(clause)
    return any(-lit in seen for lit in seen)


@dataclass(frozen=True)
class Formula:
    """A CNF formula: clauses in input order plus the DIMACS header counts.

    Membership (``clause in formula``) is by set equality of literals.
    """

    clauses: tuple[Clause, ...] = ()
    declared_vars: int = 0
    declared_clauses: int = 0
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", frozenset(self.clauses))

    @classmethod
    def from_clauses(cls, clauses: Iterable[Iterable[int]], num_vars: int | None = None) -> Formula:
        normalized = tuple(normalize_clause(c) for c in clauses)
        if num_vars is None:
            num_vars = max((var(l) for c in normalized for l in c), default=0)
        return cls(normalized, num_vars, len(normalized))

    def __contains__(self, clause) -> bool:
        if not isinstance(clause, tuple):
            clause = normalize_clause(clause)
        return clause in self._index

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def variables(self) -> set[int]:
        return {var(l) for c in self.clauses for l in c}

    def max_var(self) -> int:
        return max((var(l) for c in self.clauses for l in c), default=0)


def satisfies_literal(v: Valuation, lit: Literal) -> bool:
    value = v[var(lit)]
    return value if lit > 0 else not value


def satisfies_clause(v: Valuation, clause: Iterable[int]) -> bool:
    return any(satisfies_literal(v, lit) for lit in clause)


def satisfies_formula(v: Valuation, formula: Formula | Iterable[Iterable[int]]) -> bool:
    return all(satisfies_clause(v, c) for c in formula)
