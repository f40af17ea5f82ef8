"""Full unit propagation with two watched literals and reason recording.

Used to turn DRUP lemmas into GRIT lines: for a lemma C, assume the negation
of every literal in C, propagate to a conflict, then walk the implication
graph back from the conflicting clause to collect the reasons that mattered.
Listed in trail order and followed by the conflicting clause, those reasons
replay step by step under the restricted checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .clauses import Clause, normalize_clause, var


class _Entry:
    __slots__ = ("id", "lits", "alive")

    def __init__(self, cid: int, lits: list[int]):
        self.id = cid
        self.lits = lits
        self.alive = True


@dataclass
class Assignment:
    """Trail of true literals; ``reason`` maps a variable to the clause id
    that forced it, or None for the assumed negations of the lemma."""

    trail: list[int] = field(default_factory=list)
    reason: dict[int, int | None] = field(default_factory=dict)
    decision_marker: int = 0
    true: set[int] = field(default_factory=set)

    def value(self, lit: int) -> bool | None:
        if lit in self.true:
            return True
        if -lit in self.true:
            return False
        return None

    def assign(self, lit: int, reason: int | None) -> None:
        self.true.add(lit)
        self.trail.append(lit)
        self.reason[var(lit)] = reason


class RupEngine:
    """Clause database with persistent watches, for repeated RUP queries.

    Each :meth:`check` starts from an empty assignment, so watches never need
    repairing between calls.
    """

    def __init__(self, db: Mapping[int, Iterable[int]] | None = None):
        self.entries: dict[int, _Entry] = {}
        self.watches: dict[int, list[_Entry]] = {}
        self.units: dict[int, _Entry] = {}
        self.empties: dict[int, _Entry] = {}
        self.assignment = Assignment()
        self.conflict: int | None = None
        for cid, clause in (db or {}).items():
            self.add(cid, clause)

    def __contains__(self, cid: int) -> bool:
        return cid in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def clause(self, cid: int) -> Clause:
        return normalize_clause(self.entries[cid].lits)

    def add(self, cid: int, clause: Iterable[int]) -> None:
        if cid in self.entries:
            raise KeyError(f"clause id {cid} already present")
        entry = _Entry(cid, list(dict.fromkeys(clause)))
        self.entries[cid] = entry
        size = len(entry.lits)
        if size == 0:
            self.empties[cid] = entry
        elif size == 1:
            self.units[cid] = entry
        else:
            self.watches.setdefault(entry.lits[0], []).append(entry)
            self.watches.setdefault(entry.lits[1], []).append(entry)

    def remove(self, cid: int) -> None:
        entry = self.entries.pop(cid)
        entry.alive = False
        self.units.pop(cid, None)
        self.empties.pop(cid, None)

    def check(self, clause: Iterable[int]) -> list[int] | None:
        """Return ordered antecedent ids if ``clause`` is RUP, else None."""
        conflict = self._propagate(clause)
        self.conflict = conflict
        if conflict is None:
            return None
        return used_antecedents(conflict, self.assignment, self._lits)

    def _lits(self, cid: int) -> list[int]:
        return self.entries[cid].lits

    def _propagate(self, clause: Iterable[int]) -> int | None:
        a = Assignment()
        self.assignment = a
        true = a.true
        if self.empties:
            return next(iter(self.empties))
        for lit in clause:
            if lit in true:
                # tautology: both polarities assumed
                return None
            if -lit not in true:
                a.assign(-lit, None)
        a.decision_marker = len(a.trail)
        for entry in self.units.values():
            lit = entry.lits[0]
            if lit in true:
                continue
            if -lit in true:
                return entry.id
            a.assign(lit, entry.id)

        watches = self.watches
        trail = a.trail
        head = 0
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            ws = watches.get(false_lit)
            if not ws:
                continue
            i = j = 0
            n = len(ws)
            while i < n:
                entry = ws[i]
                i += 1
                if not entry.alive:
                    continue
                lits = entry.lits
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], false_lit
                first = lits[0]
                if first in true:
                    ws[j] = entry
                    j += 1
                    continue
                for k in range(2, len(lits)):
                    candidate = lits[k]
                    if -candidate not in true:
                        lits[1], lits[k] = candidate, false_lit
                        watches.setdefault(candidate, []).append(entry)
                        break
                else:
                    ws[j] = entry
                    j += 1
                    if -first in true:
                        del ws[j:i]
                        return entry.id
                    a.assign(first, entry.id)
            del ws[j:]
        return None


def used_antecedents(conflict: int, assignment: Assignment, clause_of) -> list[int]:
    """Reasons reachable backwards from ``conflict``, in trail order, then ``conflict``.

    ``clause_of`` maps a clause id to its literals (a mapping or a callable).
    """
    lookup = clause_of.__getitem__ if hasattr(clause_of, "__getitem__") else clause_of
    marked = {var(l) for l in lookup(conflict)}
    used = []
    reason = assignment.reason
    for lit in reversed(assignment.trail):
        v = var(lit)
        if v not in marked:
            continue
        cid = reason[v]
        if cid is None:
            continue
        used.append(cid)
        marked.update(var(l) for l in lookup(cid))
    used.reverse()
    used.append(conflict)
    return used


def check_rup(db: Mapping[int, Iterable[int]], clause: Iterable[int]) -> list[int] | None:
    """One-shot RUP query over a clause database keyed by id."""
    return RupEngine(db).check(clause)
