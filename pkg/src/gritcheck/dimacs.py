"""DIMACS CNF reading and writing."""

from __future__ import annotations

import io
import logging
from typing import BinaryIO

from .clauses import Formula, normalize_clause
from .lexer import LineReader, ParseError, Source

log = logging.getLogger(__name__)


def parse_dimacs(source: Source) -> Formula:
    """Read a DIMACS CNF stream line by line into a Formula.

    Comment lines start with ``c``.  Clauses may span lines and are
    terminated by ``0``.  A ``%`` line (SATLIB convention) ends the body.
    Header/body count mismatches and variables beyond the header only
    produce warnings.
    """
    reader = LineReader(source)
    header = None
    clauses = []
    pending: list[int] = []
    pending_line = 0
    for line in reader:
        stripped = line.lstrip(b" \t")
        if not stripped:
            continue
        first = stripped[:1]
        if first == b"c":
            continue
        if first == b"%":
            break
        if first == b"p":
            if header is not None:
                raise reader.error("duplicate header")
            header = _parse_header(reader, stripped)
            continue
        if header is None:
            raise reader.error("clause before 'p cnf' header")
        for value in reader.integers(line):
            if value == 0:
                clauses.append(normalize_clause(pending))
                pending = []
            else:
                if not pending:
                    pending_line = reader.lineno
                pending.append(value)
    if pending:
        raise ParseError("unterminated clause at end of input", pending_line)
    if header is None:
        raise ParseError("missing 'p cnf' header", reader.lineno or 1)

    declared_vars, declared_clauses = header
    formula = Formula(tuple(clauses), declared_vars, declared_clauses)
    if len(clauses) != declared_clauses:
        log.warning("header declares %d clauses, found %d", declared_clauses, len(clauses))
    top = formula.max_var()
    if top > declared_vars:
        log.warning("variable %d exceeds declared count %d", top, declared_vars)
    return formula


def _parse_header(reader: LineReader, line: bytes) -> tuple[int, int]:
    fields = line.split()
    if len(fields) != 4 or fields[0] != b"p" or fields[1] != b"cnf":
        raise reader.error("malformed header, expected 'p cnf <vars> <clauses>'", line, 0)
    counts = reader.integers(line, skip=2)
    if any(c < 0 for c in counts):
        raise reader.error("negative count in header", line, 2)
    return counts[0], counts[1]


def write_dimacs(formula: Formula, out: BinaryIO) -> None:
    nvars = max(formula.declared_vars, formula.max_var())
    out.write(b"p cnf %d %d\n" % (nvars, len(formula.clauses)))
    for clause in formula.clauses:
        out.write(" ".join(map(str, (*clause, 0))).encode("ascii") + b"\n")


def serialize_dimacs(formula: Formula) -> bytes:
    buf = io.BytesIO()
    write_dimacs(formula, buf)
    return buf.getvalue()
