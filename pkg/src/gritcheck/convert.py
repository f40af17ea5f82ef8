"""DRUP to GRIT conversion and backward trimming of GRIT proofs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .checker import Reason, Rejection, WorkingSet, propagate_prefix
from .clauses import Formula, is_tautology
from .grit import Delete, DrupAction, DrupAdd, DrupDelete, Original, ProofAction, Rup
from .lexer import ParseError
from .rup import RupEngine


class ConversionError(Exception):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


class RupFailed(ConversionError):
    pass


class DeleteMissing(ConversionError):
    pass


class IncompleteProof(ConversionError):
    """The trace ended without deriving the empty clause."""


class TrimOnInvalid(Exception):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"proof does not verify: {verdict}")


@dataclass
class ConversionStats:
    originals: int = 0
    lemmas: int = 0
    deletions: int = 0
    kept: int = 0
    dropped: int = 0
    skipped_tautologies: int = 0


def convert(
    formula: Formula,
    drup: Iterable[DrupAction],
    trim: bool = False,
    stats: ConversionStats | None = None,
) -> Iterator[ProofAction]:
    """Turn a DRUP trace for ``formula`` into a GRIT proof.

    Formula clauses get ids 1..n in file order and lemmas continue from n+1.
    Without ``trim`` this is a single streaming pass that introduces every
    formula clause up front and mirrors each ``d`` line as a deletion.  With
    ``trim`` the forward result is buffered and passed through
    :func:`backward_trim`.
    """
    stats = ConversionStats() if stats is None else stats
    forward = _forward(formula, drup, stats)
    if not trim:
        return forward
    return _trimmed(formula, forward, stats)


def _trimmed(formula, forward, stats) -> Iterator[ProofAction]:
    trimmed = backward_trim(formula, list(forward))
    introduced = sum(1 for a in trimmed if isinstance(a, (Original, Rup)))
    stats.kept = sum(1 for a in trimmed if isinstance(a, Rup))
    stats.dropped = stats.lemmas - stats.kept
    stats.originals = introduced - stats.kept
    stats.deletions = sum(len(a.ids) for a in trimmed if isinstance(a, Delete))
    yield from trimmed


def _forward(formula: Formula, drup: Iterable[DrupAction], stats: ConversionStats) -> Iterator[ProofAction]:
    engine = RupEngine()
    by_clause: dict[tuple, list[int]] = defaultdict(list)
    for cid, clause in enumerate(formula.clauses, 1):
        engine.add(cid, clause)
        by_clause[clause].append(cid)
        stats.originals += 1
        yield Original(cid, clause)

    skipped: dict[tuple, int] = defaultdict(int)
    next_id = len(formula.clauses) + 1
    count = 0
    for count, action in enumerate(drup, 1):
        line = getattr(drup, "lineno", count)
        clause = action.clause
        if isinstance(action, DrupAdd):
            if is_tautology(clause):
                # trivially valid but unusable by restricted propagation
                skipped[clause] += 1
                stats.skipped_tautologies += 1
                continue
            order = engine.check(clause)
            if order is None:
                raise RupFailed("lemma is not RUP", line)
            stats.lemmas += 1
            yield Rup(next_id, clause, tuple(order))
            if not clause:
                return
            engine.add(next_id, clause)
            by_clause[clause].append(next_id)
            next_id += 1
        elif isinstance(action, DrupDelete):
            if skipped.get(clause):
                skipped[clause] -= 1
                continue
            ids = by_clause.get(clause)
            if not ids:
                raise DeleteMissing("deleted clause is not live", line)
            cid = ids.pop()
            engine.remove(cid)
            stats.deletions += 1
            yield Delete((cid,))
        else:
            raise TypeError(f"not a DRUP action: {action!r}")
    raise IncompleteProof("trace ended without the empty clause", getattr(drup, "lineno", count))


def backward_trim(
    formula: Formula,
    proof: Iterable[ProofAction],
    relocate_originals: bool = True,
) -> list[ProofAction]:
    """Keep only the lines the final empty clause depends on.

    The proof is replayed forward (raising :class:`TrimOnInvalid` if it does
    not verify) while recording which earlier line defined each antecedent
    actually consumed.  Marking then runs backwards from the empty clause.
    In the output every clause is deleted right after its last use, unused
    trailing antecedents are dropped and, with ``relocate_originals``,
    formula clauses are introduced just before their first use.
    """
    lines: list[ProofAction] = []
    uses: dict[int, list[int]] = {}
    w = WorkingSet()
    definer: dict[int, int] = {}
    final = None
    try:
        for idx, action in enumerate(proof):
            lines.append(action)
            if isinstance(action, Rup):
                k = propagate_prefix(w, action.clause, action.antecedents)
                if not k:
                    raise Rejection(Reason.NOT_UNIT_NOR_EMPTY, action.id)
                uses[idx] = [definer[cid] for cid in action.antecedents[:k]]
                if not action.clause:
                    final = idx
                    break
                w.add(action.id, action.clause)
                definer[action.id] = idx
            elif isinstance(action, Original):
                if action.clause not in formula:
                    raise Rejection(Reason.ORIGINAL_NOT_IN_FORMULA, action.clause)
                w.add(action.id, action.clause)
                definer[action.id] = idx
            else:
                for cid in action.ids:
                    w.remove(cid)
                    del definer[cid]
    except Rejection as rej:
        raise TrimOnInvalid(rej.verdict(len(lines))) from None
    except ParseError as err:
        raise TrimOnInvalid(Rejection(Reason.PARSE_FAILURE, err.message).verdict(err.line)) from None
    if final is None:
        raise TrimOnInvalid(Rejection(Reason.STREAM_EXHAUSTED).verdict(len(lines)))

    needed = {final}
    stack = [final]
    while stack:
        for d in uses.get(stack.pop(), ()):
            if d not in needed:
                needed.add(d)
                stack.append(d)

    order = sorted(needed)
    expiring: dict[int, list[int]] = defaultdict(list)
    last_use = {}
    for idx in order:
        for d in uses.get(idx, ()):
            last_use[d] = idx
    for d, idx in last_use.items():
        expiring[idx].append(lines[d].id)

    out: list[ProofAction] = []
    introduced = set()
    for idx in order:
        action = lines[idx]
        if isinstance(action, Original) and relocate_originals:
            continue
        if relocate_originals:
            for d in uses.get(idx, ()):
                if d not in introduced and isinstance(lines[d], Original):
                    introduced.add(d)
                    out.append(lines[d])
        if isinstance(action, Rup):
            action = Rup(action.id, action.clause, action.antecedents[: len(uses[idx])])
        out.append(action)
        if expiring[idx] and idx != final:
            out.append(Delete(tuple(sorted(expiring[idx]))))
    return out
