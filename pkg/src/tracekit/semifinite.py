"""Automata acting on finite and bi-infinite words via end markers.

A semifinite automaton is a CA over the alphabet extended with reserved
letters L and R; finite words live as L^inf u R^inf, markers stay put, and
letter cells never turn into markers.  The one-sided extension below pads a
window at the right marker with the last letter before it, which keeps every
finite-word column inside the trace of the underlying CA.
"""

from __future__ import annotations

from .core import CellularAutomaton

LEFT = "L"
RIGHT = "R"
MARKERS = (LEFT, RIGHT)


class SemifiniteAutomaton:
    """A CA-like rule over base letters plus the two end markers."""

    def __init__(self, base, anchor, diameter, rule, name=""):
        for m in MARKERS:
            if m in base.letters:
                raise ValueError("base alphabet uses the reserved letter %r" % m)
        self.base = base
        self.anchor = anchor
        self.diameter = diameter
        self.rule = rule
        self.name = name

    def __repr__(self):
        return "SemifiniteAutomaton(%d letters + markers, anchor=%d, diameter=%d)" % (
            len(self.base), self.anchor, self.diameter)

    def local(self, window):
        window = tuple(window)
        if len(window) != self.diameter:
            raise ValueError("window length %d != diameter %d"
                             % (len(window), self.diameter))
        out = self.rule(window) if callable(self.rule) else self.rule[window]
        if 0 <= self.anchor < self.diameter:
            center = window[self.anchor]
            if center in MARKERS:
                if out != center:
                    raise ValueError("marker cell moved")
            elif out in MARKERS:
                raise ValueError("rule output a marker for a letter cell")
        return out

    def step_word(self, word):
        """One step on the finite word L^inf word R^inf; length is preserved."""
        word = tuple(word)
        if not word:
            raise ValueError("empty word")
        n = len(word)
        m, d = self.anchor, self.diameter

        def at(j):
            if j < 0:
                return LEFT
            if j >= n:
                return RIGHT
            return word[j]

        return tuple(self.local(tuple(at(i - m + t) for t in range(d)))
                     for i in range(n))

    def column(self, word, depth, cell=0):
        """The trace column observed at ``cell`` over ``depth`` steps."""
        out = []
        cur = tuple(word)
        for _ in range(depth):
            out.append(cur[cell])
            cur = self.step_word(cur)
        return tuple(out)

    def gtilde(self, u0, u1=None):
        """The compiler-facing rule: image of u0 given right neighbor u1,
        or given the right end marker when u1 is omitted.  Needs the
        one-sided radius-1 shape (anchor 0, diameter 2)."""
        if (self.anchor, self.diameter) != (0, 2):
            raise ValueError("gtilde needs anchor 0, diameter 2")
        return self.local((u0, u1 if u1 is not None else RIGHT))

    def interior_ca(self):
        """The plain CA this automaton restricts to on marker-free windows."""
        rule = self.rule
        if not callable(rule):
            table = {w: a for w, a in rule.items()
                     if not any(c in MARKERS for c in w)}
            return CellularAutomaton(self.base, self.anchor, self.diameter,
                                     table, name=self.name or "interior")
        return CellularAutomaton(self.base, self.anchor, self.diameter,
                                 lambda w: rule(tuple(w)),
                                 name=self.name or "interior")


def extend_onesided(ca):
    """Extend a one-sided CA to finite words: windows cut off by the right
    marker are padded with the letter just before the marker.

    The padded window is a genuine window of a bi-infinite configuration, so
    every finite-word column stays inside the CA's trace language.
    """
    if not ca.is_onesided() or ca.anchor != 0:
        raise ValueError("extension needs a one-sided CA with anchor 0")
    d = ca.diameter

    def rule(window):
        c = window[0]
        if c in MARKERS:
            return c
        for k in range(1, d):
            if window[k] in MARKERS:
                return ca.local(window[:k] + (window[k - 1],) * (d - k))
        return ca.local(window)

    return SemifiniteAutomaton(ca.alphabet, 0, d, rule,
                               name=(ca.name + "-semifinite") if ca.name else "")


def sf_step(sfa, word):
    return sfa.step_word(word)


def sf_trace(sfa, word, depth, cell=0):
    return sfa.column(word, depth, cell)
