"""Line-level tokenizer shared by the DIMACS, GRIT and DRUP readers."""

from __future__ import annotations

import io
import re
from typing import BinaryIO, Iterator, Union

from .clauses import MAX_INT

Source = Union[BinaryIO, bytes, str]

# tokens are separated by spaces or tabs only
_NUMBERS = re.compile(rb"[ \t]*(?:-?[0-9]+(?:[ \t]+-?[0-9]+)*)?[ \t]*")
_INTEGER = re.compile(rb"-?[0-9]+")
_TOKEN = re.compile(rb"[^ \t]+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        self.message = message
        self.line = line
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


def as_stream(source: Source) -> BinaryIO:
    if isinstance(source, str):
        return io.BytesIO(source.encode("ascii", errors="surrogateescape"))
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(bytes(source))
    return source


class LineReader:
    """Pulls one line at a time from a binary stream and tracks position.

    Only the current line is held.  ``lineno`` is 1-based and refers to the
    most recent line returned; ``offset`` is the byte offset of its start.
    """

    def __init__(self, source: Source):
        self.stream = as_stream(source)
        self.lineno = 0
        self.offset = 0
        self.bytes_read = 0

    def __iter__(self) -> Iterator[bytes]:
        readline = self.stream.readline
        while True:
            raw = readline()
            if not raw:
                return
            if isinstance(raw, str):
                raw = raw.encode("ascii", errors="surrogateescape")
            self.lineno += 1
            self.offset = self.bytes_read
            self.bytes_read += len(raw)
            if raw.endswith(b"\n"):
                raw = raw[:-1]
                if raw.endswith(b"\r"):
                    raw = raw[:-1]
            yield raw

    def error(self, message: str, line: bytes | None = None, token: int | None = None) -> ParseError:
        offset = self.offset
        if line is not None and token is not None:
            spans = [m.start() for m in _TOKEN.finditer(line)]
            if token < len(spans):
                offset += spans[token]
        return ParseError(message, self.lineno, offset)

    def integers(self, line: bytes, skip: int = 0) -> list[int]:
        """Parse a line of whitespace-separated decimal integers.

        ``skip`` leading tokens (already inspected by the caller) are dropped.
        """
        body = line
        if skip:
            parts = line.split(None, skip)
            body = parts[skip] if len(parts) > skip else b""
        if not body.isascii():
            raise self.error("non-ASCII byte", line, None)
        if _NUMBERS.fullmatch(body) is None:
            for k, match in enumerate(_TOKEN.finditer(line)):
                if k >= skip and _INTEGER.fullmatch(match.group()) is None:
                    raise self.error(f"invalid token {match.group().decode('ascii', 'replace')!r}", line, k)
            raise self.error("malformed line", line, None)
        values = [int(t) for t in body.split()]
        if values and (max(values) > MAX_INT or min(values) < -MAX_INT):
            k = next(i for i, v in enumerate(values) if abs(v) > MAX_INT)
            raise self.error("integer outside 64-bit range", line, k + skip)
        return values
