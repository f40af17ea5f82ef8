"""Restricted reverse unit propagation checker for GRIT proofs.

The checker never searches: each learnt clause names the clauses to use and
the order to use them in, and every step is a set difference that must leave
one literal (a unit step) or none (the conflict).  Whatever the proof says,
a ``VERIFIED`` verdict is only reached through such steps, so it implies the
formula is unsatisfiable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .clauses import Clause, Formula
from .grit import Delete, Original, ProofAction, Rup
from .lexer import ParseError


class Reason(enum.Enum):
    UNKNOWN_ANTECEDENT = "UnknownAntecedent"
    NOT_UNIT_NOR_EMPTY = "NotUnitNorEmpty"
    ORIGINAL_NOT_IN_FORMULA = "OriginalNotInFormula"
    DUPLICATE_ID = "DuplicateId"
    DELETE_UNKNOWN_ID = "DeleteUnknownId"
    STREAM_EXHAUSTED = "StreamExhausted"
    PARSE_FAILURE = "ParseFailure"


@dataclass(frozen=True)
class Verdict:
    verified: bool
    reason: Reason | None = None
    detail: Any = None
    line: int | None = None

    def __bool__(self) -> bool:
        return self.verified

    def __str__(self) -> str:
        if self.verified:
            return "VERIFIED"
        text = f"REJECTED {self.reason.value}"
        if self.detail is not None:
            text += f"({_show(self.detail)})"
        if self.line is not None:
            text += f" at line {self.line}"
        return text


VERIFIED = Verdict(True)


def _show(detail: Any) -> str:
    if isinstance(detail, tuple):
        return " ".join(map(str, detail))
    return str(detail)


class Rejection(Exception):
    """Raised inside the checker; converted to a Verdict at the action boundary."""

    def __init__(self, reason: Reason, detail: Any = None):
        super().__init__(reason, detail)
        self.reason = reason
        self.detail = detail

    def verdict(self, line: int | None = None) -> Verdict:
        return Verdict(False, self.reason, self.detail, line)


class UnknownAntecedent(Rejection):
    def __init__(self, cid: int):
        super().__init__(Reason.UNKNOWN_ANTECEDENT, cid)


class WorkingSet:
    """Live clauses by id, with a high-water mark of the live count."""

    def __init__(self):
        self.live: dict[int, Clause] = {}
        self.peak = 0

    def __len__(self) -> int:
        return len(self.live)

    def __contains__(self, cid: int) -> bool:
        return cid in self.live

    def __getitem__(self, cid: int) -> Clause:
        return self.live[cid]

    def add(self, cid: int, clause: Clause) -> None:
        live = self.live
        if cid in live:
            raise Rejection(Reason.DUPLICATE_ID, cid)
        live[cid] = clause
        if len(live) > self.peak:
            self.peak = len(live)

    def remove(self, cid: int) -> None:
        try:
            del self.live[cid]
        except KeyError:
            raise Rejection(Reason.DELETE_UNKNOWN_ID, cid) from None


def live_stats(w: WorkingSet) -> tuple[int, int]:
    return len(w.live), w.peak


def propagate_prefix(w: WorkingSet, clause: Iterable[int], antecedents: Sequence[int]) -> int:
    """Run restricted unit propagation; return how many antecedents were consumed.

    Starting from ``clause`` as the set of falsified literals, each antecedent
    must contribute exactly one new literal (whose negation is added) or none,
    which ends the run successfully.  Returns 0 on failure.  Antecedents after
    the conflict are not looked up.
    """
    live = w.live
    falsified = set(clause)
    for n, cid in enumerate(antecedents, 1):
        try:
            other = live[cid]
        except KeyError:
            raise UnknownAntecedent(cid) from None
        unit = 0
        for lit in other:
            if lit not in falsified:
                if unit:
                    return 0
                unit = lit
        if not unit:
            return n
        falsified.add(-unit)
    return 0


def propagate(w: WorkingSet, clause: Iterable[int], antecedents: Sequence[int]) -> bool:
    return propagate_prefix(w, clause, antecedents) > 0


def _apply(w: WorkingSet, formula: Formula, action: ProofAction) -> bool:
    """Apply one action; True means the empty clause was derived."""
    if isinstance(action, Rup):
        if not propagate_prefix(w, action.clause, action.antecedents):
            raise Rejection(Reason.NOT_UNIT_NOR_EMPTY, action.id)
        if not action.clause:
            return True
        w.add(action.id, action.clause)
    elif isinstance(action, Delete):
        for cid in action.ids:
            w.remove(cid)
    elif isinstance(action, Original):
        if action.clause not in formula:
            raise Rejection(Reason.ORIGINAL_NOT_IN_FORMULA, action.clause)
        w.add(action.id, action.clause)
    else:
        raise TypeError(f"not a proof action: {action!r}")
    return False


def apply_action(w: WorkingSet, formula: Formula, action: ProofAction) -> Verdict | None:
    """Update ``w`` in place; return a Verdict once checking is decided."""
    try:
        return VERIFIED if _apply(w, formula, action) else None
    except Rejection as rej:
        return rej.verdict()


def refute(formula: Formula, proof: Iterable[ProofAction], working_set: WorkingSet | None = None) -> Verdict:
    """Check a proof against ``formula`` in a single forward pass.

    ``proof`` is consumed lazily and abandoned right after the empty clause
    is derived.  When it is a GritReader, rejections report file line
    numbers; otherwise they count actions.  Pass ``working_set`` to inspect
    live-clause statistics afterwards.
    """
    w = WorkingSet() if working_set is None else working_set
    position = getattr(proof, "lineno", None)
    count = 0
    actions = iter(proof)
    while True:
        try:
            action = next(actions)
        except StopIteration:
            break
        except ParseError as err:
            return Verdict(False, Reason.PARSE_FAILURE, err.message, err.line)
        count += 1
        try:
            if _apply(w, formula, action):
                return VERIFIED
        except Rejection as rej:
            return rej.verdict(proof.lineno if position is not None else count)
    return Verdict(False, Reason.STREAM_EXHAUSTED, None, proof.lineno if position is not None else count)
