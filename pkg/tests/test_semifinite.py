import itertools

import pytest

from tracekit import (CellularAutomaton, extend_onesided, sf_trace, trace)
from tracekit.semifinite import LEFT, RIGHT, SemifiniteAutomaton

from conftest import BIN, and_ca, xor_ca


def test_extension_needs_onesided_anchor0():
    two = CellularAutomaton(BIN, 1, 3, lambda w: w[1])
    with pytest.raises(ValueError):
        extend_onesided(two)


def test_markers_stay_put():
    sfa = extend_onesided(xor_ca())
    assert sfa.local((LEFT, "0")) == LEFT
    assert sfa.local((RIGHT, RIGHT)) == RIGHT


def test_right_edge_pads_with_last_letter():
    sfa = extend_onesided(and_ca())
    # window (1, R) behaves like (1, 1)
    assert sfa.local(("1", RIGHT)) == "1"
    assert sfa.local(("0", RIGHT)) == "0"


def test_extend_frozen_word_step():
    sfa = extend_onesided(and_ca())
    assert sfa.step_word(("1", "0", "1")) == ("0", "0", "1")
    # last cell pads with itself, so a trailing 1 survives under AND
    assert sfa.step_word(("1", "1", "1")) == ("1", "1", "1")


def test_step_preserves_length_and_letters():
    sfa = extend_onesided(xor_ca())
    for n in (1, 2, 4):
        for w in itertools.product("01", repeat=n):
            out = sfa.step_word(w)
            assert len(out) == n
            assert all(a in "01" for a in out)


def test_finite_word_columns_lie_in_trace():
    for ca in (xor_ca(), and_ca()):
        sfa = extend_onesided(ca)
        lang = trace(ca, 6)
        for n in (1, 2, 3, 4):
            for w in itertools.product("01", repeat=n):
                for cell in range(n):
                    assert sf_trace(sfa, w, 6, cell) in lang


def test_gtilde_needs_radius1_form():
    sfa = extend_onesided(and_ca())
    assert sfa.gtilde("1", "0") == "0"
    assert sfa.gtilde("1") == "1"  # right marker pads to (1,1)
    wide = extend_onesided(CellularAutomaton(BIN, 0, 3, lambda w: w[0]))
    with pytest.raises(ValueError):
        wide.gtilde("0", "0")


def test_interior_ca_restores_the_rule():
    ca = xor_ca()
    inner = extend_onesided(ca).interior_ca()
    for w in itertools.product("01", repeat=2):
        assert inner.local(w) == ca.local(w)


def test_letter_cells_cannot_become_markers():
    def bad_rule(window):
        return RIGHT
    sfa = SemifiniteAutomaton(BIN, 0, 2, bad_rule)
    with pytest.raises(ValueError):
        sfa.local(("0", "1"))
