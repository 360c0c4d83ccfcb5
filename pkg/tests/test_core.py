import itertools

import pytest
from hypothesis import given, strategies as st

from tracekit import (Alphabet, CapacityError, CellularAutomaton,
                      Configuration, PartialCA, PeriodicConfiguration,
                      Sft, pack_word)

from conftest import BIN, TRI, xor_ca


def test_alphabet_basics():
    a = Alphabet.flat("abc")
    assert len(a) == 3 and list(a) == ["a", "b", "c"]
    assert a.index("b") == 1
    assert "d" not in a
    with pytest.raises(ValueError):
        a.index("d")
    with pytest.raises(ValueError):
        Alphabet.flat("aa")
    with pytest.raises(ValueError):
        Alphabet([])


def test_stacked_alphabet_decodes():
    words = [("0", "1"), ("1", "0"), ("1", "1")]
    s = Alphabet.stacked(words, BIN)
    assert s.letters == ("0.1", "1.0", "1.1")
    assert s.tracks == 2
    assert s.decode["1.0"] == ("1", "0")
    assert s.project("0.1", 1) == "1"
    flat = s.flattened()
    assert flat.parts == (BIN, BIN)


def test_flattened_merges_nested_stacks():
    inner = Alphabet.stacked([("0", "0"), ("1", "1")], BIN)
    pairs = [(a, b) for a in inner.letters for b in BIN.letters]
    outer = Alphabet([pack_word(p) for p in pairs], parts=(inner, BIN),
                     decode={pack_word(p): p for p in pairs})
    flat = outer.flattened()
    assert flat.tracks == 3
    assert flat.decode["1.1.0"] == ("1", "1", "0")


def test_periodic_configuration_canonical():
    x = PeriodicConfiguration("0101", phase=3)
    assert x.period == ("0", "1")
    assert x.get(0) == x.get(2)
    assert x == PeriodicConfiguration("10", phase=0)
    assert x.window(0, 4) == ("1", "0", "1", "0")


@given(st.text(alphabet="01", min_size=1, max_size=6),
       st.integers(min_value=-8, max_value=8))
def test_periodic_configuration_get_is_periodic(word, phase):
    x = PeriodicConfiguration(word, phase)
    for i in range(-4, 4):
        assert x.get(i) == x.get(i + 7 * len(word))


def test_configuration_tails_and_step():
    x = Configuration(("0",), ("1", "1", "0"), ("0",), offset=-1)
    assert x.window(-3, 4) == ("0", "0", "1", "1", "0", "0", "0")
    y = x.step(xor_ca())
    # y(i) = x(i) xor x(i+1) with the 110 burst at cells -1..1
    assert y.window(-2, 3) == ("1", "0", "1", "0", "0")


def test_configuration_column_matches_iterated_step():
    ca = xor_ca()
    x = Configuration.periodic(("1", "0", "0"))
    col = x.column(ca, 0, 5)
    cur, out = x, []
    for _ in range(5):
        out.append(cur.get(0))
        cur = cur.step(ca)
    assert col == tuple(out)


def test_local_checks_window_length():
    ca = xor_ca()
    assert ca.local(("1", "0")) == "1"
    with pytest.raises(ValueError):
        ca.local(("1",))


def test_onesidedness_and_geometry():
    assert xor_ca().is_onesided()
    assert not CellularAutomaton(BIN, 1, 3, lambda w: w[0]).is_onesided()
    assert CellularAutomaton(BIN, 0, 1, lambda w: w[0]).is_onesided()


def test_pad_to_preserves_action():
    ca = CellularAutomaton.shift(BIN)
    padded = ca.pad_to(2, 4)
    assert (padded.anchor, padded.diameter) == (2, 4)
    x = PeriodicConfiguration("0110")
    assert ca.step_periodic(x) == padded.step_periodic(x)
    with pytest.raises(ValueError):
        ca.pad_to(0, 1)


def test_product_and_power():
    ca = xor_ca()
    sq = ca.power(2)
    x = PeriodicConfiguration("00101")
    assert sq.step_periodic(x) == ca.step_periodic(ca.step_periodic(x))
    pr = ca.product(CellularAutomaton.shift(BIN))
    y = pr.step_periodic(PeriodicConfiguration(("0.1", "1.0", "1.1")))
    a, b = zip(*(pr.alphabet.decode[c] for c in y.window(0, 3)))
    assert a == ca.step_periodic(PeriodicConfiguration("011")).window(0, 3)


def test_radius0_identity_constant():
    ident = CellularAutomaton.identity(TRI)
    assert ident.local(("2",)) == "2"
    c = CellularAutomaton.constant(BIN, "0")
    assert c.local(("1", "1")) == "0"
    r = CellularAutomaton.radius0(BIN, {"0": "1", "1": "0"})
    assert r.local(("0",)) == "1"


def test_table_and_cap():
    t = xor_ca().table()
    assert t[("1", "1")] == "0"
    assert len(t) == 4
    wide = CellularAutomaton(BIN, 0, 30, lambda w: w[0])
    with pytest.raises(CapacityError):
        wide.table()


def test_spreading_state():
    AND = CellularAutomaton(BIN, 0, 2,
                            lambda w: str(int(w[0]) & int(w[1])))
    assert AND.is_spreading_state("0")
    assert not AND.is_spreading_state("1")
    assert not CellularAutomaton.shift(BIN).is_spreading_state("0")


def test_partial_ca_raises_off_domain():
    golden = Sft.from_forbidden(BIN, [("1", "1")])
    table = {w: w[1] for w in golden.language(2)}
    pca = PartialCA(BIN, 0, 2, lambda w, t=table: t[tuple(w)], golden)
    assert pca.local(("0", "1")) == "1"
    with pytest.raises(KeyError):
        pca.local(("1", "1"))


@given(st.integers(min_value=1, max_value=4))
def test_power_matches_repeated_orbit(n):
    ca = xor_ca()
    x = PeriodicConfiguration("0010110")
    pn = ca.power(n)
    cur = x
    for _ in range(n):
        cur = ca.step_periodic(cur)
    assert pn.step_periodic(x) == cur
