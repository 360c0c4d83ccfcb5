import pytest
from hypothesis import given, strategies as st

from tracekit import (Alphabet, CapacityError, CellularAutomaton, ParseError,
                      Sft, SoficGraph, emit_border, emit_ca, emit_subshift,
                      emit_words, parse_ca, parse_subshift, parse_words,
                      static_border, xi_border)
from tracekit.formats import split_word, word_token

from conftest import BIN, TRI, random_table_ca, xor_ca


# -- cellular automata ---------------------------------------------------------


def test_ca_round_trip_xor():
    ca = xor_ca()
    back = parse_ca(emit_ca(ca))
    assert back.alphabet.letters == ca.alphabet.letters
    assert (back.anchor, back.diameter) == (ca.anchor, ca.diameter)
    for w in ca.alphabet.words(ca.diameter):
        assert back.local(w) == ca.local(w)


@given(st.integers(0, 2 ** 30), st.integers(-1, 2), st.integers(1, 3))
def test_ca_round_trip_random(seed, anchor, diameter):
    import random
    ca = random_table_ca(random.Random(seed), BIN, anchor, diameter)
    back = parse_ca(emit_ca(ca))
    for w in BIN.words(diameter):
        assert back.local(w) == ca.local(w)


def test_ca_round_trip_stacked_letters():
    # dotted track letters are single whitespace-free tokens, so they survive
    pair = Alphabet(["0.0", "0.1", "1.0", "1.1"])
    ca = CellularAutomaton(pair, 0, 1, lambda w: w[0], name="id")
    back = parse_ca(emit_ca(ca))
    assert back.alphabet.letters == pair.letters
    assert back.local(("1.0",)) == "1.0"


def test_parse_ca_ignores_comments_and_blanks():
    text = ("# a one-cell identity\n"
            "alphabet: 0 1   # binary\n"
            "\n"
            "anchor: 0\n"
            "diameter: 1\n"
            "rule: 0 -> 0\n"
            "rule: 1 -> 1\n")
    ca = parse_ca(text)
    assert ca.local(("1",)) == "1"


def _ca_text(**override):
    lines = {"alphabet": "alphabet: 0 1",
             "anchor": "anchor: 0",
             "diameter": "diameter: 1",
             "r0": "rule: 0 -> 0",
             "r1": "rule: 1 -> 1"}
    lines.update(override)
    return "\n".join(v for v in lines.values() if v) + "\n"


@pytest.mark.parametrize("text, lineno, bit", [
    ("alphabet 0 1\n", 1, "expected 'key: value'"),
    (_ca_text(anchor="speed: 0"), 2, "unknown key"),
    (_ca_text(anchor="anchor: fast"), 2, "must be an integer"),
    (_ca_text(alphabet="alphabet:"), 1, "empty alphabet"),
    (_ca_text(alphabet="alphabet: 0 0"), 1, "repeated letter"),
    ("rule: 0 -> 0\n" + _ca_text(r0="", r1=""), 1, "rule before alphabet"),
    (_ca_text(r0="rule: 0 0 -> 0"), 4, "expected 1"),
    (_ca_text(r0="rule: 2 -> 0"), 4, "not in alphabet"),
    (_ca_text(r1="rule: 0 -> 1"), 5, "duplicate rule"),
    (_ca_text(r0="rule: 0 > 0"), 4, "needs '->'"),
])
def test_parse_ca_line_errors(text, lineno, bit):
    with pytest.raises(ParseError) as exc:
        parse_ca(text)
    assert exc.value.lineno == lineno
    assert bit in str(exc.value)


@pytest.mark.parametrize("text, bit", [
    (_ca_text(diameter="", r0="", r1=""), "missing diameter"),
    (_ca_text(r1="anchor: 1"), "repeated anchor"),
    (_ca_text(r1=""), "rule table incomplete: 1 windows missing"),
    (_ca_text(diameter="diameter: 0", r0="", r1=""),
     "diameter must be positive"),
])
def test_parse_ca_file_errors(text, bit):
    with pytest.raises(ParseError) as exc:
        parse_ca(text)
    assert bit in str(exc.value)


# -- subshifts -------------------------------------------------------------


def test_sft_round_trip_golden():
    g = Sft.from_forbidden(BIN, [("1", "1")], sided="one")
    back = parse_subshift(emit_subshift(g))
    assert isinstance(back, Sft)
    assert back.order == g.order and back.sided == "one"
    assert set(back.language(5)) == set(g.language(5))


def test_sft_parse_rewraps_to_declared_order():
    text = "type: sft\nalphabet: 0 1\norder: 3\nforbidden: 11\n"
    s = parse_subshift(text)
    assert s.order == 3
    assert set(s.language(3)) == set(
        Sft.from_forbidden(BIN, [("1", "1")]).language(3))


def test_sft_round_trip_multichar_letters():
    pair = Alphabet(["0.0", "0.1"])
    s = Sft.from_forbidden(pair, [("0.1", "0.1")])
    back = parse_subshift(emit_subshift(s))
    assert set(back.language(2)) == set(s.language(2))
    assert ("0.1", "0.1") not in set(back.language(2))


def test_sofic_round_trip():
    g = SoficGraph(BIN, [("a", "0", "a"), ("a", "1", "b"), ("b", "0", "a")],
                   sided="one")
    back = parse_subshift(emit_subshift(g))
    assert isinstance(back, SoficGraph)
    assert back.sided == "one"
    for n in range(1, 5):
        assert set(back.language(n)) == set(g.language(n))


def test_emit_subshift_caps_huge_forbidden_lists():
    s = Sft(BIN, 21, allowed={("0",) * 21})
    with pytest.raises(CapacityError):
        emit_subshift(s)


@pytest.mark.parametrize("text, bit", [
    ("type: weird\nalphabet: 0 1\n", "type must be sft or sofic"),
    ("alphabet: 0 1\nforbidden: 11\n", "missing type"),
    ("type: sft\nalphabet: 0 1\n", "needs a forbidden line"),
    ("type: sft\nforbidden: 11\nalphabet: 0 1\n", "forbidden before alphabet"),
    ("type: sofic\nalphabet: 0 1\n", "needs a states line"),
    ("type: sofic\nalphabet: 0 1\nstates: a\nedge: a 0\n",
     "edge line needs 'p a q'"),
    ("type: sofic\nalphabet: 0 1\nstates: a\nedge: a 0 b\n",
     "undeclared state 'b'"),
    ("type: sofic\nalphabet: 0 1\nstates: a\nedge: a 2 a\n",
     "letter '2' not in alphabet"),
    ("type: sft\nalphabet: 0 1\nforbidden: 11\nsided: three\n",
     "sided must be one or two"),
    ("type: sft\nalphabet: 0 1\nforbidden: 11\ncolor: red\n",
     "unknown key 'color'"),
])
def test_parse_subshift_errors(text, bit):
    with pytest.raises(ParseError) as exc:
        parse_subshift(text)
    assert bit in str(exc.value)


# -- word lists and borders ------------------------------------------------


def test_words_round_trip():
    words = [("0", "1", "1"), ("1", "0", "0")]
    alphabet, back = parse_words(emit_words(BIN, words))
    assert alphabet.letters == BIN.letters
    assert sorted(back) == sorted(words)


def test_words_round_trip_comma_tokens():
    pair = Alphabet(["0.0", "1.1"])
    words = [("0.0", "1.1"), ("1.1", "1.1")]
    text = emit_words(pair, words)
    assert "word: 0.0,1.1" in text
    _, back = parse_words(text)
    assert sorted(back) == sorted(words)


@pytest.mark.parametrize("text, lineno, bit", [
    ("word: 01\nalphabet: 0 1\n", 1, "word before alphabet"),
    ("alphabet: 0 1\nword: 021\n", 2, "letter '2' not in alphabet"),
    ("# nothing\n", 0, "missing alphabet"),
])
def test_parse_words_errors(text, lineno, bit):
    with pytest.raises(ParseError) as exc:
        parse_words(text)
    assert exc.value.lineno == lineno
    assert bit in str(exc.value)


@given(st.lists(st.sampled_from(["0", "1", "2"]), min_size=1, max_size=6))
def test_word_token_inverse_plain(letters):
    w = tuple(letters)
    assert split_word(word_token(w), TRI, 1) == w


@given(st.lists(st.sampled_from(["0.0", "0.1", "1.0"]), min_size=1,
                max_size=5))
def test_word_token_inverse_stacked(letters):
    w = tuple(letters)
    pair = Alphabet(["0.0", "0.1", "1.0"])
    assert split_word(word_token(w), pair, 1) == w


def test_emit_border_lists_words_then_endomap():
    b = xi_border(BIN, {"0": "1", "1": "0"}, 1)
    text = emit_border(b)
    assert "word: 01111" in text and "word: 10000" in text
    assert "delta: 01111 -> 10000" in text
    assert "delta: 10000 -> 01111" in text


def test_emit_border_static_is_identity_endomap():
    b = static_border(BIN, "0", "1", 2)
    text = emit_border(b)
    assert "word: 100" in text
    assert "delta: 100 -> 100" in text
