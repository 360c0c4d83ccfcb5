import itertools

import pytest
from hypothesis import given, strategies as st

from tracekit import (Border, dynamic_border, forever_separated, is_freezing,
                      static_border, xi_border)

from conftest import BIN, oracle_freezing


def test_single_word_10_is_1freezing():
    ok, wit = is_freezing([("1", "0")], 1)
    assert ok and wit is None


def test_three_words_violate_at_offset_one():
    ok, wit = is_freezing([("0", "0"), ("0", "1"), ("1", "0")], 1)
    assert not ok
    # 00 overlaps itself one cell over; minimal witness at the least offset
    assert "".join(wit.word) == "000"
    assert wit.offset == 1
    assert wit.left[1:] == wit.right[:1]


def test_100_is_2freezing():
    ok, _ = is_freezing([("1", "0", "0")], 2)
    assert ok


def test_freezing_rejects_mixed_lengths_and_bad_p():
    with pytest.raises(ValueError):
        is_freezing([("0",), ("0", "1")], 1)
    with pytest.raises(ValueError):
        is_freezing([("0", "1")], 2)


def test_ab_power_family_gap():
    # {ab^(k+1) : a != b} over {0,1} is k-freezing but never (k+1)-freezing
    for k in (1, 2, 3):
        words = [("0",) + ("1",) * (k + 1), ("1",) + ("0",) * (k + 1)]
        ok, _ = is_freezing(words, k)
        assert ok
        ok, wit = is_freezing(words, k + 1)
        assert not ok
        if k == 1:
            assert "".join(wit.word) == "01100"


@given(st.sets(st.text(alphabet="01", min_size=4, max_size=4),
               min_size=1, max_size=6),
       st.integers(min_value=0, max_value=3))
def test_is_freezing_matches_brute_overlap_scan(words, p):
    words = [tuple(w) for w in words]
    ok, wit = is_freezing(words, p)
    assert ok == oracle_freezing(words, p)
    if not ok:
        # the witness word really is left-word overlapped by right-word
        assert wit.left[wit.offset:] == wit.right[:len(wit.right) - wit.offset]


def test_border_construction_checks():
    w = ("1", "0", "0")
    b = Border(BIN, [w], {w: w}, 2)
    assert b.required_freezing() == 2
    with pytest.raises(ValueError):
        Border(BIN, [], {}, 1)
    with pytest.raises(ValueError):
        Border(BIN, [w], {w: ("0", "0", "0")}, 2)  # delta leaves the set
    with pytest.raises(ValueError):
        # 010 self-overlaps at offset 2, so it cannot be 2-freezing
        Border(BIN, [("0", "1", "0")], {("0", "1", "0"): ("0", "1", "0")}, 1)


def test_static_border_frozen_values():
    b = static_border(BIN, "0", "1", 2)
    assert b.words == (("1", "0", "0"),)
    assert b.delta[("1", "0", "0")] == ("1", "0", "0")
    b1 = static_border(BIN, "0", "1", 1)
    assert b1.words == (("1", "0"),)
    with pytest.raises(ValueError):
        static_border(BIN, "0", "0", 2)


def test_dynamic_border_frozen_values():
    b = dynamic_border(BIN, ("0", "1"), 0)
    got = {"".join(w) for w in b.words}
    assert got == {"000000100100", "111111011011"}
    w0 = tuple("000000100100")
    w1 = tuple("111111011011")
    assert b.delta[w0] == w1 and b.delta[w1] == w0
    with pytest.raises(ValueError):
        dynamic_border(BIN, ("0", "0"), 0)  # not primitive/non-uniform
    with pytest.raises(ValueError):
        dynamic_border(BIN, ("0",), 0)


def test_dynamic_border_freezing_level():
    u = ("0", "1")
    for k in (0, 1, 2):
        b = dynamic_border(BIN, u, k)
        need = k + 3 * len(u)
        assert oracle_freezing(b.words, need)


def test_xi_border_identity_and_swap():
    bid = xi_border(BIN, {"0": "0", "1": "1"}, 1, pad=3)
    assert {"".join(w) for w in bid.words} == {"01111", "10000"}
    assert bid.delta[tuple("01111")] == tuple("01111")
    bswap = xi_border(BIN, {"0": "1", "1": "0"}, 1, pad=3)
    assert {"".join(w) for w in bswap.words} == {"01111", "10000"}
    assert bswap.delta[tuple("01111")] == tuple("10000")


def test_xi_border_rejects_unseparated_maps():
    with pytest.raises(ValueError):
        xi_border(BIN, {"0": "0", "1": "0"}, 1, pad=3)  # orbits merge


def test_xi_border_freezing_padding():
    # the emitted words are (k+2)-freezing for every small k
    for k in (1, 2, 3):
        b = xi_border(BIN, {"0": "0", "1": "1"}, k, pad=3)
        assert oracle_freezing(b.words, k + 2)


def test_forever_separated():
    assert forever_separated({"0": "1", "1": "0"}, "0", "1")
    assert forever_separated({"0": "0", "1": "1"}, "0", "1")
    assert not forever_separated({"0": "0", "1": "0"}, "0", "1")


def test_border_delta_ca_is_radius0():
    b = dynamic_border(BIN, ("0", "1"), 0)
    ca = b.delta_ca()
    assert ca.diameter == 1
    w0 = "".join(("0",) * 6 + ("1", "0", "0", "1", "0", "0"))
    packed = ".".join(w0)
    assert ca.local((packed,)) == ".".join("111111011011")
