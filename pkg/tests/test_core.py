import itertools
import json

import pytest
from hypothesis import given, strategies as st

from conftest import seq_strategy
from unipred.core import (
    BINARY,
    SINGLETON,
    ObjectSpace,
    Observation,
    Situation,
    Stream,
    StreamExhausted,
    comparable,
    is_prefix,
    seq,
    write_stream_file,
)

UNIVERSE = list(BINARY.sequences_up_to(3))


def naive_prefix(a, b):
    if len(a) > len(b):
        return False
    return all(a[i] == b[i] for i in range(len(a)))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((), seq((0, 1), (1, 0)), True),
        (seq((1, 1)), seq((1, 1)), True),
        (seq((0, 1)), seq((0, 0), (0, 1)), False),
    ],
)
def test_is_prefix_examples(a, b, expected):
    assert is_prefix(a, b) is expected


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((), seq((1, 0)), True),
        (seq((0, 0)), seq((0, 1)), False),
        (seq((0, 0)), seq((0, 0), (1, 1)), True),
    ],
)
def test_comparable_examples(a, b, expected):
    assert comparable(a, b) is expected


def test_prefix_order_is_partial_order():
    for a in UNIVERSE:
        assert is_prefix(a, a)
        for b in UNIVERSE:
            if is_prefix(a, b) and is_prefix(b, a):
                assert a == b
            for c in UNIVERSE:
                if is_prefix(a, b) and is_prefix(b, c):
                    assert is_prefix(a, c)


def test_comparable_matches_prefix_either_way():
    for a, b in itertools.product(UNIVERSE, repeat=2):
        assert comparable(a, b) == (naive_prefix(a, b) or naive_prefix(b, a))
        assert is_prefix(a, b) == naive_prefix(a, b)


def test_universe_size_and_global_index():
    # 1 + 4 + 16 + 64 sequences; global_index is the position in (length, lex) order
    assert len(UNIVERSE) == 85
    assert [BINARY.global_index(s) for s in UNIVERSE] == list(range(85))


@pytest.mark.parametrize("objects", [(), ("0", "0"), ("a",), ("",)])
def test_object_space_rejects(objects):
    with pytest.raises(ValueError):
        ObjectSpace(objects)


def test_constant_stream_prefix():
    assert Stream.constant(SINGLETON).prefix(3) == (Observation(0, 0),) * 3
    assert Stream.constant(BINARY).prefix(0) == ()


@given(st.integers(0, 2**63 - 1), st.integers(0, 40), st.integers(0, 40))
def test_seeded_stream_prefix_consistency(seed, a, b):
    long, short = max(a, b), min(a, b)
    first = Stream.iid(BINARY, seed)
    second = Stream.iid(BINARY, seed)
    assert first.prefix(long)[:short] == second.prefix(short)


def test_iid_is_deterministic_per_seed_and_varies_across_seeds():
    assert Stream.iid(BINARY, 7).prefix(64) == Stream.iid(BINARY, 7).prefix(64)
    assert Stream.iid(BINARY, 7).prefix(64) != Stream.iid(BINARY, 8).prefix(64)


def test_closed_form_streams():
    assert Stream.periodic(BINARY, [(0, 0), (1, 1)]).prefix(4) == seq((0, 0), (1, 1), (0, 0), (1, 1))
    assert Stream.shen(BINARY, 2).prefix(5) == seq((0, 0), (0, 0), (0, 1), (0, 0), (0, 0))
    labels = [o.y for o in Stream.adversarial_divisibility(BINARY, 3).prefix(12)]
    assert labels == [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_stream_read_cursor():
    s = Stream.periodic(BINARY, [(0, 1), (1, 0)])
    assert [s.read(), s.read(), s.read()] == list(seq((0, 1), (1, 0), (0, 1)))
    assert s.position == 4


def test_file_stream_round_trip(tmp_path):
    path = tmp_path / "stream.jsonl"
    data = Stream.iid(BINARY, 3).prefix(20)
    write_stream_file(path, BINARY, data)
    assert json.loads(path.read_text().splitlines()[0]).keys() == {"x", "y"}
    stream = Stream.from_file(BINARY, path)
    assert stream.prefix(20) == data
    with pytest.raises(StreamExhausted):
        stream.prefix(21)


def test_file_stream_rejects_unknown_object(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"x": "11", "y": 0}\n')
    with pytest.raises(ValueError, match="bad.jsonl:1"):
        Stream.from_file(BINARY, path).prefix(1)


@given(seq_strategy(BINARY), st.integers(0, 1), st.integers(0, 1))
def test_situation_extend(history, x, y):
    extended = Situation(history, x).extend(y)
    assert len(extended) == len(history) + 1
    assert extended[-1] == Observation(x, y)
    assert is_prefix(history, extended)
