import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gritcheck import (
    Delete,
    DrupAdd,
    DrupDelete,
    Original,
    ParseError,
    Rup,
    parse_drup,
    parse_grit,
    serialize_drup,
    serialize_grit,
)

from conftest import SAMPLE_DRUP, SAMPLE_GRIT


def one(text):
    (action,) = list(parse_grit(text))
    return action


def test_sample_lines():
    assert one("6  1  0 1 3 0") == Rup(6, (1,), (1, 3))
    assert one("0  1  3 0") == Delete((1, 3))
    assert one("1  1  2 0 0") == Original(1, (1, 2))
    assert one("9  0  7 8 5 0") == Rup(9, (), (7, 8, 5))


def test_sample_action_counts(proof):
    assert len(proof) == 12
    assert sum(isinstance(a, Original) for a in proof) == 5
    assert sum(isinstance(a, Rup) for a in proof) == 4
    assert sum(isinstance(a, Delete) for a in proof) == 3


def test_antecedent_order_is_kept():
    assert one("7 2 0 6 2 0").antecedents == (6, 2)


def test_edge_shapes():
    assert one("0 0") == Delete(())
    assert one("4 0 0") == Original(4, ())
    assert one("\t3\t-1 2   0  0   ") == Original(3, (-1, 2))
    assert one("3 -1 2 0 0\r\n") == Original(3, (-1, 2))
    assert list(parse_grit("\n\n1 1 0 0")) == [Original(1, (1,))]


@pytest.mark.parametrize(
    "text, message",
    [
        ("6 1 0 1 3", "must end with 0"),
        ("6 1 0", "found one"),
        ("6 1", "found none"),
        ("6 1 0 1 0 3 0", "misplaced 0"),
        ("6 1 0 -1 0", "must be positive"),
        ("0 1 -3 0", "must be positive"),
        ("0 1 0 3 0", "misplaced 0"),
        ("0", "must end with 0"),
        ("0 1", "must end with 0"),
        ("-6 1 0 0", "must be positive"),
        ("6 a 0 0", "invalid token"),
        ("6 1.0 0 0", "invalid token"),
        ("6 1 0 0 c", "invalid token"),
        ("6 1 0 99999999999999999999 0", "64-bit"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        list(parse_grit(text))


def test_error_position():
    reader = parse_grit(b"1 1 0 0\n2 -1 x 0 0\n")
    with pytest.raises(ParseError) as err:
        list(reader)
    assert err.value.line == 2
    assert err.value.offset == 8 + 5


def test_non_ascii_rejected():
    with pytest.raises(ParseError, match="ASCII"):
        list(parse_grit("1 1 0 0 é\n".encode("utf-8")))


def test_serialize_examples(proof):
    assert serialize_grit([Rup(6, (1,), (1, 3))]) == b"6 1 0 1 3 0\n"
    assert serialize_grit([Delete(())]) == b"0 0\n"
    assert serialize_grit([Original(1, (1, 2))]) == b"1 1 2 0 0\n"
    normal = serialize_grit(proof)
    assert list(parse_grit(normal)) == proof
    assert serialize_grit(parse_grit(normal)) == normal


clause = st.lists(st.integers(1, 30).flatmap(lambda v: st.sampled_from([v, -v])), max_size=4)
ids = st.integers(1, 2**63 - 1)
actions = st.one_of(
    st.builds(lambda i: Delete(tuple(i)), st.lists(ids, max_size=4)),
    st.builds(lambda i, c: Original(i, tuple(sorted(set(c), key=lambda l: (abs(l), l < 0)))), ids, clause),
    st.builds(
        lambda i, c, a: Rup(i, tuple(sorted(set(c), key=lambda l: (abs(l), l < 0))), tuple(a)),
        ids,
        clause,
        st.lists(ids, min_size=1, max_size=4),
    ),
)


@given(st.lists(actions, max_size=10))
def test_roundtrip(proof):
    assert list(parse_grit(serialize_grit(proof))) == proof


@settings(max_examples=200)
@given(st.data())
def test_whitespace_fuzzing(data):
    proof = list(parse_grit(SAMPLE_GRIT))
    gap = st.text(alphabet=" \t", min_size=1, max_size=4)
    edge = st.text(alphabet=" \t", max_size=3)
    lines = []
    for line in serialize_grit(proof).decode().splitlines():
        tokens = line.split()
        seps = [data.draw(gap) for _ in tokens[1:]]
        body = tokens[0] + "".join(s + t for s, t in zip(seps, tokens[1:]))
        lines.append(data.draw(edge) + body + data.draw(edge))
    ending = data.draw(st.sampled_from(["\n", "\r\n"]))
    text = ending.join(lines) + data.draw(st.sampled_from(["", ending]))
    assert list(parse_grit(text)) == proof


class CountingStream:
    """Generates proof lines on demand and records how far the reader runs ahead."""

    def __init__(self, lines):
        self._lines = iter(lines)
        self.lines_read = 0
        self.bytes_read = 0

    def readline(self):
        line = next(self._lines, b"")
        if line:
            self.lines_read += 1
            self.bytes_read += len(line)
        return line


def _long_proof(n):
    yield b"1 1 2 0 0\n"
    for i in range(2, n + 1):
        yield b"%d 1 2 0 %d 0\n" % (i, i - 1) if i % 2 else b"0 %d 0\n" % (i - 1)


def test_streaming_holds_one_line_at_a_time():
    n = 1_000_000
    stream = CountingStream(_long_proof(n))
    reader = parse_grit(stream)
    consumed = 0
    lookahead = 0
    for _ in reader:
        consumed += 1
        lookahead = max(lookahead, stream.lines_read - consumed)
    assert consumed == n
    assert lookahead == 0
    assert reader.lineno == n


def test_drup_examples():
    assert list(parse_drup("d  1  2 0")) == [DrupDelete((1, 2))]
    assert list(parse_drup("1  0")) == [DrupAdd((1,))]
    assert list(parse_drup("0")) == [DrupAdd(())]
    trace = list(parse_drup(SAMPLE_DRUP))
    assert len(trace) == 9
    assert sum(isinstance(a, DrupDelete) for a in trace) == 5
    assert list(parse_drup(serialize_drup(trace))) == trace


def test_drup_comments_and_blank_lines():
    assert list(parse_drup("c solver output\n\n\td\t-1 0\n")) == [DrupDelete((-1,))]


@pytest.mark.parametrize("text", ["1 2", "1 0 2 0", "dd 1 0", "d1 0", "1 x 0", "a 1 0"])
def test_drup_errors(text):
    with pytest.raises(ParseError):
        list(parse_drup(text))
