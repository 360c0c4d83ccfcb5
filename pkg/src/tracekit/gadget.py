"""Spreading-controlled products and bounded undecidability probes.

``controlled_product`` runs one product rule while a control layer is fully
live and falls back to another once a spreading dead state shows up in the
window.  ``four_layer_gadget`` instantiates it with two shift tracks, a
payload CA and a control rule, so the composite's polytrace either collapses
onto the payload's trace (control nilpotent) or covers the full shift
(control non-nilpotent).  The mortality and nilpotency questions that
separation encodes are undecidable, so the probes here are bounded searches
that either find a certificate or report how far they looked.
"""

from __future__ import annotations

import itertools

from .core import (Alphabet, CapacityError, CellularAutomaton,
                   PeriodicConfiguration, pack_word)
from .subshift import DeterministicOrbit
from .trace import trace


class ControlledProductSpec:
    """Two payload rules on disjoint alphabets plus a control pair.

    ``f1`` acts on A1, ``f2`` on A2; ``n`` drives the control layer in the
    fallback branch and ``n2`` (whose alphabet B2 is a subset of B carrying a
    spreading dead state) drives it while fully live.  ``phi`` maps every
    payload letter onto A1, identically on A1 itself; by default A2 letters
    collapse to the least A1 letter.  All rules are normalized to one
    geometry on construction.
    """

    def __init__(self, f1, f2, n, n2, phi=None, dead="0"):
        a1 = set(f1.alphabet.letters)
        a2 = set(f2.alphabet.letters)
        if a1 & a2:
            raise ValueError("payload alphabets overlap: %s"
                             % sorted(a1 & a2))
        if not set(n2.alphabet.letters) <= set(n.alphabet.letters):
            raise ValueError("control alphabet B2 must sit inside B")
        if dead not in n2.alphabet:
            raise ValueError("dead state %r not in the live control alphabet"
                             % (dead,))
        if not n2.is_spreading_state(dead):
            raise ValueError("state %r does not spread under the live "
                             "control rule" % (dead,))
        if phi is None:
            least = min(a1)
            phi = {a: (a if a in a1 else least) for a in a1 | a2}
        else:
            phi = dict(phi)
            if set(phi) != a1 | a2 or not set(phi.values()) <= a1 \
                    or any(phi[a] != a for a in a1):
                raise ValueError("phi must fix A1 and send A2 into A1")
        anchor = max(f1.anchor, f2.anchor, n.anchor, n2.anchor)
        reach = max(ca.diameter - ca.anchor for ca in (f1, f2, n, n2))
        diameter = anchor + reach
        self.f1 = f1.pad_to(anchor, diameter)
        self.f2 = f2.pad_to(anchor, diameter)
        self.n = n.pad_to(anchor, diameter)
        self.n2 = n2.pad_to(anchor, diameter)
        self.a1 = frozenset(a1)
        self.a2 = frozenset(a2)
        self.b2 = frozenset(n2.alphabet.letters)
        self.phi = phi
        self.dead = dead
        self.anchor = anchor
        self.diameter = diameter


def controlled_product(spec):
    """CA on (A1 u A2) x B: run (f2, n2) where the window is all-A2 with a
    fully live control, otherwise (f1 o phi, n)."""
    a_letters = tuple(spec.f1.alphabet.letters) + tuple(spec.f2.alphabet.letters)
    d1, d2 = spec.f1.alphabet, spec.f2.alphabet
    if d1.decode is not None and d2.decode is not None and d1.parts == d2.parts:
        merged = dict(d1.decode)
        merged.update(d2.decode)
        a_alph = Alphabet(a_letters, parts=d1.parts, decode=merged)
    else:
        a_alph = Alphabet(a_letters)
    b_alph = spec.n.alphabet
    pairs = [(a, b) for a in a_letters for b in b_alph.letters]
    alph = Alphabet([pack_word(p) for p in pairs], parts=(a_alph, b_alph),
                    decode={pack_word(p): p for p in pairs})
    dec = alph.decode
    a2, b2, dead, phi = spec.a2, spec.b2, spec.dead, spec.phi
    f1, f2, n, n2 = spec.f1, spec.f2, spec.n, spec.n2

    def rule(window):
        cols = [dec[x] for x in window]
        aw = tuple(c[0] for c in cols)
        bw = tuple(c[1] for c in cols)
        if all(a in a2 for a in aw) and \
                all(b in b2 and b != dead for b in bw):
            return pack_word((f2.local(aw), n2.local(bw)))
        return pack_word((f1.local(tuple(phi[a] for a in aw)), n.local(bw)))

    return CellularAutomaton(alph, spec.anchor, spec.diameter, rule,
                             name="controlled-product")


def _track_product(words, base, tracks, name):
    """CA on the stacked words applying one padded rule per track.

    Outputs are packed words over the base; they may leave the given letter
    set, which is fine for rules only ever consulted on their own windows.
    """
    alph = Alphabet.stacked(words, base)
    anchor = max(t.anchor for t in tracks)
    reach = max(t.diameter - t.anchor for t in tracks)
    padded = [t.pad_to(anchor, anchor + reach) for t in tracks]
    dec = alph.decode

    def rule(window):
        cols = [dec[x] for x in window]
        return pack_word(tuple(p.local(tuple(c[q] for c in cols))
                               for q, p in enumerate(padded)))

    return CellularAutomaton(alph, anchor, anchor + reach, rule, name=name)


def four_layer_gadget(g, n, n2, validate_depth=4):
    """Three payload tracks plus a control track over a two-letter base.

    While the control is live: two shift tracks and a copy of ``g``.  Once
    the control's dead state spreads: the shift tracks become two coupled
    copies of ``n`` (a letter map's orbit, or a constant), pinned equal by
    the projection, with ``g`` still on track three.  With ``n2`` nilpotent
    the whole polytrace ultimately falls into g's trace; with ``n2`` merely
    0-spreading but not nilpotent it covers everything.
    """
    base = g.alphabet
    if len(base) != 2:
        raise ValueError("the gadget is built over a two-letter base")
    if not g.is_onesided():
        raise ValueError("payload CA must be one-sided")
    if n.alphabet.letters != base.letters or n2.alphabet.letters != base.letters:
        raise ValueError("all layers must share the payload's base alphabet")
    if n.diameter == 1:
        xi = {a: n.local((a,)) for a in base}
        orb = DeterministicOrbit(base, xi)
        want = set(orb.language(validate_depth))
        have = trace(g, validate_depth).words
        missing = sorted(want - set(have))
        if missing:
            raise ValueError("orbit word %r of the letter map is not a trace "
                             "column of the payload at depth %d"
                             % ("".join(missing[0]), validate_depth))
    triples = sorted(itertools.product(base.letters, repeat=3))
    diag = [t for t in triples if t[0] == t[1]]
    offdiag = [t for t in triples if t[0] != t[1]]
    sigma = CellularAutomaton.shift(base)
    f1 = _track_product(diag, base, (n, n, g), "aligned-layers")
    f2 = _track_product(offdiag, base, (sigma, sigma, g), "free-layers")
    spec = ControlledProductSpec(f1, f2, n2, n2, dead="0")
    h = controlled_product(spec)
    h.name = "four-layer"
    return h


# -- bounded probes ------------------------------------------------------------


def is_spreading_set(ca, words):
    """Whether an occurrence of the word set at position 1 forces occurrences
    at positions 0 and 1 after one step; checked exactly over all windows."""
    words = {tuple(w) for w in words}
    if not words:
        raise ValueError("empty word set")
    k = len(next(iter(words)))
    if any(len(w) != k for w in words):
        raise ValueError("word set must share one length")
    m, d = ca.anchor, ca.diameter
    letters = ca.alphabet.letters
    lo = -m          # leftmost input cell feeding output cell 0
    hi = k - m + d   # one past the rightmost input feeding output cell k
    span = hi - lo
    free = span - k
    if len(words) * len(letters) ** free > (1 << 22):
        raise CapacityError("spreading-set check needs %d evaluations"
                            % (len(words) * len(letters) ** free))
    occ_lo = 1 - lo  # index of the occurrence inside the enumerated strip
    for u in words:
        positions = [i for i in range(span) if not occ_lo <= i < occ_lo + k]
        for fill in itertools.product(letters, repeat=len(positions)):
            strip = [None] * span
            for i, a in zip(positions, fill):
                strip[i] = a
            strip[occ_lo:occ_lo + k] = u
            out = tuple(ca.local(tuple(strip[c - m - lo:c - m - lo + d]))
                        for c in range(k + 1))
            if out[0:k] not in words or out[1:k + 1] not in words:
                return False
    return True


class ProbeResult:
    """Outcome of a bounded search: a verdict string plus evidence."""

    def __init__(self, verdict, certificate=None, tested=0, bound=None):
        self.verdict = verdict
        self.certificate = certificate
        self.tested = tested
        self.bound = bound

    def __repr__(self):
        extra = "" if self.certificate is None else \
            ", certificate=%r" % (self.certificate,)
        return "ProbeResult(%s, tested=%d%s)" % (self.verdict, self.tested, extra)


def mortality_bounded(ca, hitters, depth, max_period):
    """Search periodic configurations (all periods up to ``max_period``) for
    one whose orbit keeps cell 0 out of the given letter set forever.

    A temporal cycle with no hit certifies NOT-MORTAL.  When every tested
    configuration hits within ``depth`` steps the verdict is
    MORTAL-WITNESSED-ON-TESTED; a run out of depth without a cycle leaves
    INCONCLUSIVE.
    """
    hitters = set(hitters)
    if not hitters <= set(ca.alphabet.letters):
        raise ValueError("letter set outside the alphabet")
    tested = 0
    sure = True
    for p in range(1, max_period + 1):
        for word in itertools.product(ca.alphabet.letters, repeat=p):
            x = PeriodicConfiguration(word, 0)
            tested += 1
            seen = set()
            hit = False
            start = x
            for _ in range(depth + 1):
                if x.get(0) in hitters:
                    hit = True
                    break
                key = (x.period, x.phase)
                if key in seen:
                    return ProbeResult("NOT-MORTAL", certificate=start,
                                       tested=tested, bound=depth)
                seen.add(key)
                x = ca.step_periodic(x)
            if not hit:
                sure = False
    if sure:
        return ProbeResult("MORTAL-WITNESSED-ON-TESTED", tested=tested,
                           bound=depth)
    return ProbeResult("INCONCLUSIVE", tested=tested, bound=depth)


def nilpotency_bounded(ca, depth, zero=None, probe_period=4):
    """Decide nilpotency up to a bound.

    A nonzero configuration on a temporal cycle certifies NO outright; if
    every depth-(depth+1) trace column is zero on its last row, the rule is
    genuinely nilpotent with index at most ``depth`` (YES).  Engine capacity
    overruns surface as INCONCLUSIVE.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    letters = ca.alphabet.letters
    if zero is None:
        zero = "0" if "0" in ca.alphabet else letters[0]
    for p in range(1, probe_period + 1):
        for word in itertools.product(letters, repeat=p):
            x = PeriodicConfiguration(word, 0)
            seen = set()
            for _ in range(depth + 1):
                key = (x.period, x.phase)
                if key in seen:
                    if any(a != zero for a in x.period):
                        return ProbeResult("NO", certificate=x, bound=depth)
                    break
                seen.add(key)
                x = ca.step_periodic(x)
    try:
        lang = trace(ca, depth + 1)
    except CapacityError as exc:
        return ProbeResult("INCONCLUSIVE", certificate=str(exc), bound=depth)
    for col in lang.words:
        if col[depth] != zero:
            return ProbeResult("NO", certificate=col, bound=depth)
    return ProbeResult("YES", bound=depth)


def alignment_depth(h, letters, bound, **kw):
    """Least J within the bound after which every trace column of ``h`` stays
    inside the given letter set (first components for pair alphabets handled
    by the caller via the letter set), or None."""
    letters = set(letters)
    lang = trace(h, bound + 1, **kw)
    for j in range(bound + 1):
        if all(all(col[t] in letters for t in range(j, len(col)))
               for col in lang.words):
            return j
    return None
