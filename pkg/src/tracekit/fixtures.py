"""Named example subshifts used across the test suite and the CLI.

Each fixture couples a subshift with its documented facts (which letter map
fits inside it, whether it is weakly nilpotent, how the ultimate compiler
routes it).  The facts are recorded here as data; the test suite re-derives
every decidable one and the compilers are expected to reproduce the routing.
"""

from __future__ import annotations

from .core import Alphabet
from .subshift import Sft, SoficGraph

A2 = Alphabet.flat("01")
A3 = Alphabet.flat("012")


class Fixture:
    """A named subshift plus its documented expected outcomes."""

    def __init__(self, name, subshift, facts, about):
        self.name = name
        self.subshift = subshift
        self.facts = dict(facts)
        self.about = about

    def __repr__(self):
        return "Fixture(%r)" % self.name


def _x110():
    """Orbit closure of ...001001001...; three states cycling 0,0,1."""
    g = SoficGraph(A2, [("c0", "0", "c1"), ("c1", "0", "c2"),
                        ("c2", "1", "c0")], sided="one")
    return Fixture(
        "x110", g,
        {"deterministic_map": None,
         "weakly_nilpotent": False,
         "ultimate_branch": "untraceable"},
        "period-3 orbit; admits no deterministic subshift, so no trace "
        "or ultimate trace exists for it")


def _nilp():
    """Points (prefix)0^inf for prefix in {empty, 1, 01, 001, 21}; dies in
    three steps under the shift."""
    g = SoficGraph(A3, [("s0", "0", "s0"), ("v1", "1", "s0"),
                        ("v01", "0", "v1"), ("v001", "0", "v01"),
                        ("v21", "2", "v1")], sided="one")
    return Fixture(
        "nilp", g,
        {"weakly_nilpotent": True,
         "nilpotency_index": 3,
         "ultimate_branch": 1,
         "partial_branch": "a"},
        "nilpotent example with index 3; compiles through the nilpotent "
        "partial-CA route")


def _ctrex():
    """{0^inf, (01)^inf, (10)^inf}: an SFT whose only fitting letter map is
    the swap, which is not nilpotent."""
    s = Sft(A2, 3, [tuple("000"), tuple("010"), tuple("101")])
    return Fixture(
        "ctrex", s,
        {"deterministic_map": {"0": "1", "1": "0"},
         "weakly_nilpotent": False,
         "ultimate_branch": 2},
        "polytraceable but not traceable; ultimately traceable via the "
        "swap orbit after totalization")


def _onetail():
    """(0*1 + 1*)0^inf: once a 1 is followed by a 0, no 1 ever recurs.

    Not an SFT (the forbidden words 10...01 have unbounded length), so it
    lives on a graph: zeros, then at most one isolated 1, into the zero
    tail; or a block of ones into the zero tail.
    """
    g = SoficGraph(A2, [("zs", "0", "zs"), ("zs", "1", "tail"),
                        ("ones", "1", "ones"), ("ones", "0", "tail"),
                        ("tail", "0", "tail")], sided="one")
    return Fixture(
        "onetail", g,
        {"deterministic_map": {"0": "0", "1": "1"},
         "weakly_nilpotent": False,
         "ultimate_branch": 2},
        "both uniform points present, so the identity map fits and the "
        "ultimate compiler takes the totalization route")


def _golden():
    s = Sft.from_forbidden(A2, [tuple("11")])
    return Fixture(
        "golden", s,
        {"deterministic_map": {"0": "0", "1": "0"},
         "weakly_nilpotent": False,
         "ultimate_branch": 3},
        "golden mean shift; the only letter maps that fit send 1 to 0, "
        "whose orbits are nilpotent while the shift is not, putting it on "
        "the unsupported union branch")


def _full():
    s = Sft.full_shift(A2)
    return Fixture(
        "full", s,
        {"deterministic_map": {"0": "0", "1": "1"},
         "weakly_nilpotent": False,
         "ultimate_branch": 2},
        "full binary shift")


def fixtures():
    """The named examples plus golden mean and full shift, keyed by name."""
    out = {}
    for build in (_x110, _nilp, _ctrex, _onetail, _golden, _full):
        fx = build()
        out[fx.name] = fx
    return out
