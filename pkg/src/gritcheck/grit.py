"""GRIT proof lines and DRUP traces: data types, streaming readers, writers.

A GRIT line has one of three shapes, always with exactly two zeroes::

    0 <id>* 0                       delete the listed clauses
    <id> <lit>* 0 0                 introduce a clause of the input formula
    <id> <lit>* 0 <id>+ 0           learnt clause with ordered antecedents
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator, Union

from .clauses import Clause, normalize_clause
from .lexer import LineReader, Source


@dataclass(frozen=True, slots=True)
class Delete:
    ids: tuple[int, ...] = ()


@dataclass(frozen=True, slots=True)
class Original:
    id: int
    clause: Clause


@dataclass(frozen=True, slots=True)
class Rup:
    id: int
    clause: Clause
    antecedents: tuple[int, ...]


ProofAction = Union[Delete, Original, Rup]


@dataclass(frozen=True, slots=True)
class DrupAdd:
    clause: Clause


@dataclass(frozen=True, slots=True)
class DrupDelete:
    clause: Clause


DrupAction = Union[DrupAdd, DrupDelete]


class GritReader(LineReader):
    """Lazily yields ProofActions from a GRIT byte stream.

    Blank lines are skipped.  Parse errors raise
    :class:`~gritcheck.lexer.ParseError` at the offending line, so actions
    before it have already been delivered.
    """

    def __iter__(self) -> Iterator[ProofAction]:
        for line in super().__iter__():
            values = self.integers(line)
            if values:
                yield self._action(line, values)

    def _positive_ids(self, line: bytes, values: list[int], start: int) -> tuple[int, ...]:
        for k in range(start, len(values)):
            if values[k] <= 0:
                what = "misplaced 0" if values[k] == 0 else "clause id must be positive"
                raise self.error(what, line, k)
        return tuple(values[start:])

    def _action(self, line: bytes, values: list[int]) -> ProofAction:
        head = values[0]
        last = len(values) - 1
        if head == 0:
            if last == 0 or values[last] != 0:
                raise self.error("deletion line must end with 0", line, last)
            return Delete(self._positive_ids(line, values[:last], 1))
        if head < 0:
            raise self.error("clause id must be positive", line, 0)
        try:
            zero = values.index(0, 1)
        except ValueError:
            raise self.error("expected two 0 terminators, found none", line, last) from None
        if zero == last:
            raise self.error("expected two 0 terminators, found one", line, last)
        if values[last] != 0:
            raise self.error("line must end with 0", line, last)
        clause = normalize_clause(values[1:zero])
        ids = self._positive_ids(line, values[:last], zero + 1)
        if ids:
            return Rup(head, clause, ids)
        return Original(head, clause)


class DrupReader(LineReader):
    """Lazily yields DrupActions; one clause per line, ``d`` marks deletion.

    Lines starting with ``c`` are treated as comments.
    """

    def __iter__(self) -> Iterator[DrupAction]:
        for line in super().__iter__():
            stripped = line.lstrip(b" \t")
            if not stripped:
                continue
            first = stripped[:1]
            if first == b"c":
                continue
            deleting = first == b"d"
            if deleting:
                if stripped[1:2] not in (b"", b" ", b"\t"):
                    raise self.error("invalid token", line, 0)
                values = self.integers(line, skip=1)
                shift = 1
            else:
                values = self.integers(line)
                shift = 0
            if not values or values[-1] != 0:
                raise self.error("clause must end with 0", line, len(values) + shift - 1)
            if 0 in values[:-1]:
                raise self.error("misplaced 0", line, values.index(0) + shift)
            clause = normalize_clause(values[:-1])
            yield DrupDelete(clause) if deleting else DrupAdd(clause)


def parse_grit(source: Source) -> GritReader:
    return GritReader(source)


def parse_drup(source: Source) -> DrupReader:
    return DrupReader(source)


def format_action(action: ProofAction) -> str:
    if isinstance(action, Delete):
        return " ".join(map(str, (0, *action.ids, 0)))
    if isinstance(action, Original):
        return " ".join(map(str, (action.id, *action.clause, 0, 0)))
    if isinstance(action, Rup):
        return " ".join(map(str, (action.id, *action.clause, 0, *action.antecedents, 0)))
    raise TypeError(f"not a proof action: {action!r}")


def format_drup(action: DrupAction) -> str:
    body = " ".join(map(str, (*action.clause, 0)))
    return "d " + body if isinstance(action, DrupDelete) else body


def write_grit(actions: Iterable[ProofAction], out: BinaryIO) -> int:
    """Write one action per line; returns the number of lines written."""
    n = 0
    for action in actions:
        out.write(format_action(action).encode("ascii") + b"\n")
        n += 1
    return n


def serialize_grit(actions: Iterable[ProofAction]) -> bytes:
    buf = io.BytesIO()
    write_grit(actions, buf)
    return buf.getvalue()


def write_drup(actions: Iterable[DrupAction], out: BinaryIO) -> None:
    for action in actions:
        out.write(format_drup(action).encode("ascii") + b"\n")


def serialize_drup(actions: Iterable[DrupAction]) -> bytes:
    buf = io.BytesIO()
    write_drup(actions, buf)
    return buf.getvalue()
