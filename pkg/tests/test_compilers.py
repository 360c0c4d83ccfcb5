import random

import pytest

from tracekit import (Alphabet, CellularAutomaton, NotUltimatelyTraceable,
                      PartialCA, Sft, UnsupportedOutcome, fixtures,
                      nilpotent_partial_ca, partial_trace_compile,
                      periodic_orbit_column, polytrace, polytrace_to_trace,
                      run_witnesses, sft_polytracer, totalize,
                      ultimate_trace_compile)

from conftest import BIN


def golden():
    return Sft.from_forbidden(BIN, [("1", "1")])


def cover(graph, order):
    return Sft(graph.alphabet, order, allowed=set(graph.language(order)))


def test_sft_polytracer_golden_structure():
    pt = sft_polytracer(golden())
    assert pt.alphabet.letters == ("0.0", "0.1", "1.0")
    assert (pt.anchor, pt.diameter) == (0, 2)
    # compatible windows slide; the incompatible pair falls back legally
    assert pt.local(("0.1", "1.0")) == "1.0"
    assert pt.local(("1.0", "0.1")) == "0.1"


def test_polytracer_rejects_empty():
    with pytest.raises(ValueError):
        sft_polytracer(Sft(BIN, 2, [("0", "1")], sided="one"))


def test_totalize_adds_missing_blocks():
    pt = sft_polytracer(golden())
    total = totalize(pt)
    assert len(total.alphabet) == 4
    assert "1.1" in total.alphabet.letters
    # known blocks behave exactly as before
    for u in pt.alphabet.letters:
        for v in pt.alphabet.letters:
            assert total.local((u, v)) == pt.local((u, v))


def test_totalize_shifted_polytrace_unchanged():
    pt = sft_polytracer(golden())
    total = totalize(pt)
    for n in (2, 3, 4, 5):
        got = {w[1:] for w in polytrace(total, n).words}
        want = {w[1:] for w in polytrace(pt, n).words}
        assert got == want


def test_totalize_identity_on_total():
    full = Sft.full_shift(BIN)
    pt = sft_polytracer(full)
    assert totalize(pt) is pt


def test_nilpotent_partial_ca_frozen_shape():
    nilp = fixtures()["nilp"].subshift
    pca = nilpotent_partial_ca(nilp)
    words = pca.domain.block_words
    assert len(words) == 5
    assert {len(w) for w in words} == {18}
    assert "".join((("0",) * 9 + tuple("012") + tuple("210") + ("0",) * 3)) \
        in {"".join(w) for w in words}
    assert (pca.anchor, pca.diameter) == (17, 35)


def test_nilpotent_partial_ca_checks_index():
    nilp = fixtures()["nilp"].subshift
    with pytest.raises(ValueError):
        nilpotent_partial_ca(nilp, J=2)
    with pytest.raises(ValueError):
        nilpotent_partial_ca(golden())


def test_partial_compile_branch_a():
    nilp = fixtures()["nilp"].subshift
    art = partial_trace_compile(nilp, sft_polytracer(cover(nilp, 4)))
    assert art.branch == "a" and art.details == {"J": 3}
    assert isinstance(art.result, PartialCA)
    assert polytrace(art.result, 3).words == set(nilp.language(3))


def test_partial_compile_branch_b():
    g = golden()
    art = partial_trace_compile(g, sft_polytracer(g))
    assert art.branch == "b"
    assert art.details["u"] == ("0", "1")
    assert polytrace(art.result, 3).words == set(g.language(3))
    rep = run_witnesses(art, g.language(3))
    assert rep.outcome == "PASS"


def test_partial_compile_branch_c():
    two = Sft(BIN, 2, [("0", "0"), ("1", "1")])
    art = partial_trace_compile(two, sft_polytracer(two))
    assert art.branch == "c"
    assert art.details == {"zero": "0", "one": "1"}
    assert polytrace(art.result, 4).words == set(two.language(4))


def test_partial_compile_rejects_wrong_polytracer():
    with pytest.raises(ValueError):
        partial_trace_compile(golden(), sft_polytracer(Sft.full_shift(BIN)))


def test_polytrace_to_trace_requires_shape():
    pt = sft_polytracer(golden())
    swap = {"0": "1", "1": "0"}
    with pytest.raises(ValueError):
        polytrace_to_trace(pt, swap)  # not total on all 2-blocks
    with pytest.raises(ValueError):
        # nilpotent letter map cannot drive the default mode
        polytrace_to_trace(totalize(pt), {"0": "0", "1": "0"})


def test_polytrace_to_trace_full_shift_swap():
    full = Sft.full_shift(BIN)
    art = polytrace_to_trace(totalize(sft_polytracer(full)),
                             {"0": "1", "1": "0"})
    ca = art.result
    assert ca.alphabet.letters == ("0", "1")
    words = [tuple(f"{n:03b}") for n in range(8)]
    assert run_witnesses(art, words).outcome == "PASS"


def test_ultimate_branch1_nilpotent_target():
    nilp = fixtures()["nilp"].subshift
    art = ultimate_trace_compile(nilp)
    assert art.branch == 1 and art.offset_j == 3
    assert art.result.local(("1", "2")) == "0"
    cfg = art.witness_config(("1",))
    assert cfg.column(art.result, 0, 1) == ("1",)
    with pytest.raises(ValueError):
        art.witness_config(("1", "1"))


def test_ultimate_branch2_full_shift():
    full = Sft.full_shift(BIN)
    art = ultimate_trace_compile(full, polytracer=sft_polytracer(full))
    assert art.branch == 2 and art.offset_j == 1
    assert art.details["xi"] == {"0": "0", "1": "1"}


def test_ultimate_branch2_explicit_swap_on_golden():
    g = golden()
    art = ultimate_trace_compile(g, polytracer=sft_polytracer(g),
                                 xi={"0": "1", "1": "0"})
    assert art.branch == 2 and art.offset_j == 1
    ca = art.result
    assert ca.alphabet.letters == ("0", "1")
    # sampled periodic columns: row-1 suffixes stay inside golden mean
    rng = random.Random(11)
    for _ in range(30):
        w = tuple(rng.choice("01") for _ in range(rng.randint(1, 10)))
        suf = periodic_orbit_column(ca, w, 7)[1:]
        assert ("1", "1") not in [suf[i:i + 2] for i in range(len(suf) - 1)]
    assert run_witnesses(art, g.language(3)).outcome == "PASS"


def test_ultimate_branch3_golden_canonical():
    out = ultimate_trace_compile(golden())
    assert isinstance(out, UnsupportedOutcome)
    assert out.branch == 3
    assert out.xi == {"0": "0", "1": "0"}
    assert out.status == "unsupported"


def test_ultimate_untraceable_x110():
    out = ultimate_trace_compile(fixtures()["x110"].subshift)
    assert isinstance(out, NotUltimatelyTraceable)
    assert out.status == "not-ultimately-traceable"


def test_ultimate_rejects_escaping_xi():
    with pytest.raises(ValueError):
        ultimate_trace_compile(golden(), xi={"0": "1", "1": "1"})


def test_ultimate_branch2_needs_polytracer():
    with pytest.raises(ValueError):
        ultimate_trace_compile(Sft.full_shift(BIN))
