"""Constructions that turn subshifts into CA whose traces realize them.

The pieces compose in layers:

* ``sft_polytracer`` builds the sliding-window CA on the k-windows of an SFT
  whose polytrace is the SFT's language, depth for depth.
* ``ungroup_ca`` converts a CA on block letters into a partial CA on the
  letter-level macrocell SFT; ``border_compose`` sandwiches a payload CA
  between border tracks first, so the observed cell can tell macrocells
  apart.  ``nilpotent_partial_ca`` is the special construction for nilpotent
  targets, where no border can exist.
* ``partial_trace_compile`` dispatches between those three.
* ``totalize``, ``full_trace_compile`` and ``polytrace_to_trace`` remove the
  domain restriction: the compiled CA is total, with a three-mode rule
  (execution / frontier / default) that runs the block dynamics where a
  separated-pair border certifies macrocell structure and applies the letter
  map everywhere else.
* ``ultimate_trace_compile`` is the top-level dispatcher for realizing a
  target up to finitely many initial rows.
"""

from __future__ import annotations

import itertools
from itertools import chain

from .core import (Alphabet, CapacityError, CellularAutomaton, Configuration,
                   PartialCA, PeriodicConfiguration, pack_word)
from .freeze import (Border, dynamic_border, is_freezing, static_border,
                     xi_border)
from .semifinite import SemifiniteAutomaton, extend_onesided
from .subshift import DeterministicOrbit, MacrocellSft
from .trace import polytrace


# -- outcomes -----------------------------------------------------------------


class CompiledArtifact:
    """A compiled CA or partial CA plus how it was obtained.

    ``witness`` maps a target word to a configuration whose cell-0 column
    reproduces it; ``offset_j`` is the number of initial rows after which the
    trace coincides with the target (0 when exact).
    """

    status = "ok"

    def __init__(self, result, provenance, witness=None, offset_j=0,
                 branch=None, details=None):
        self.result = result
        self.provenance = provenance
        self.witness = witness
        self.offset_j = offset_j
        self.branch = branch
        self.details = dict(details) if details else {}

    def __repr__(self):
        return "CompiledArtifact(%s; J=%d)" % (self.provenance, self.offset_j)

    def witness_config(self, word):
        if self.witness is None:
            raise ValueError("this artifact carries no witness recipe")
        return self.witness(tuple(word))


class UnsupportedOutcome:
    """A dispatcher branch whose construction lives in prior published work
    and is deliberately not reimplemented here."""

    status = "unsupported"

    def __init__(self, branch, dependency, xi=None):
        self.branch = branch
        self.dependency = dependency
        self.xi = xi

    def __repr__(self):
        return "UnsupportedOutcome(branch=%r, needs: %s)" % (
            self.branch, self.dependency)


class NotUltimatelyTraceable:
    """No deterministic letter map fits inside the target."""

    status = "not-ultimately-traceable"

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return "NotUltimatelyTraceable(%s)" % (self.reason,)


# -- grouping ------------------------------------------------------------------


def ungroup_alphabet(words, base):
    """Alphabet whose letters are the given base-letter blocks."""
    return Alphabet.stacked(words, base)


def group(x, alphabet):
    """Blow a configuration over a block alphabet up to base letters:
    cell i's block becomes the base cells [h*i, h*(i+1))."""
    dec = alphabet.decode
    if dec is None:
        raise ValueError("needs a block alphabet")
    h = len(next(iter(dec.values())))
    if isinstance(x, PeriodicConfiguration):
        period = tuple(chain.from_iterable(dec[a] for a in x.period))
        return PeriodicConfiguration(period, x.phase * h)
    if isinstance(x, Configuration):
        blow = lambda w: tuple(chain.from_iterable(dec[a] for a in w))
        return Configuration(blow(x.left), blow(x.mid), blow(x.right),
                             x.offset * h)
    raise TypeError("group needs a configuration")


# -- ungrouping ----------------------------------------------------------------


class UngroupSpec:
    """Block alphabet B of one length h plus a radius-1 CA on it."""

    def __init__(self, blocks, base, block_ca):
        self.blocks = tuple(tuple(w) for w in blocks)
        if not self.blocks:
            raise ValueError("empty block set")
        self.h = len(self.blocks[0])
        if any(len(w) != self.h for w in self.blocks):
            raise ValueError("blocks must share one length")
        self.base = base
        if set(block_ca.alphabet.letters) != {pack_word(w) for w in self.blocks}:
            raise ValueError("block CA alphabet does not match the block set")
        self.block_ca = block_ca.pad_to(1, 3) \
            if (block_ca.anchor, block_ca.diameter) != (1, 3) else block_ca


class UngroupRule:
    """Letter-level rule of an ungrouped block CA: find the unique
    block-aligned decomposition around the center and apply the block rule."""

    def __init__(self, blocks, h, block_local):
        self.blocks = frozenset(tuple(w) for w in blocks)
        self.h = h
        self.block_local = block_local
        self._memo = {}

    def __call__(self, window):
        h = self.h
        B = self.blocks
        for i in range(h):
            s = h - 1 - i
            u0 = window[s + h:s + 2 * h]
            if u0 in B:
                um = window[s:s + h]
                u1 = window[s + 2 * h:s + 3 * h]
                if um in B and u1 in B:
                    key = (um, u0, u1)
                    try:
                        out = self._memo[key]
                    except KeyError:
                        out = self.block_local(um, u0, u1)
                        self._memo[key] = out
                    return out[i]
        raise KeyError("window has no aligned block decomposition")


def ungroup_ca(spec):
    """Partial CA on the macrocell SFT of B implementing the block CA;
    its depth-k trace is the union of the block CA's track projections."""
    if isinstance(spec, CellularAutomaton):
        alph = spec.alphabet
        if alph.decode is None:
            raise ValueError("block CA needs a block alphabet")
        blocks = [alph.decode[a] for a in alph.letters]
        spec = UngroupSpec(blocks, alph.parts[0], spec)
    ok, wit = is_freezing(spec.blocks, spec.h // 2)
    if not ok:
        raise ValueError("blocks are not %d-freezing (overlap %s)"
                         % (spec.h // 2, "".join(wit.word)))
    dom = MacrocellSft(spec.blocks, spec.base, require_freezing=True)
    bca = spec.block_ca
    dec = bca.alphabet.decode

    def block_local(um, u0, u1):
        return dec[bca.local((pack_word(um), pack_word(u0), pack_word(u1)))]

    rule = UngroupRule(spec.blocks, spec.h, block_local)
    h = spec.h
    return PartialCA(spec.base, 2 * h - 1, 4 * h - 1, rule, dom,
                     name="ungrouped-" + (bca.name or "blocks"))


def border_compose(block_ca, border):
    """Ungroup the product of the border's successor dynamics with the block
    CA; the composite's trace adds only the border's own orbit columns."""
    alph = block_ca.alphabet
    if alph.decode is None:
        raise ValueError("block CA needs a block alphabet")
    base = alph.parts[0]
    k = alph.tracks
    if border.block_k != k:
        raise ValueError("border was built for block length %d, CA has %d"
                         % (border.block_k, k))
    if not set(chain.from_iterable(border.words)) <= set(base.letters):
        raise ValueError("border letters must come from the CA's base alphabet")
    blocks = [alph.decode[a] for a in alph.letters]
    l = border.length
    pair_words = [w + b for w in border.words for b in blocks]
    bca = block_ca.pad_to(1, 3) \
        if (block_ca.anchor, block_ca.diameter) != (1, 3) else block_ca
    dec = bca.alphabet.decode
    pair_alph = Alphabet.stacked(pair_words, base)
    delta = border.delta

    def pair_local(win):
        um, u0, u1 = (pair_alph.decode[a] for a in win)
        payload = dec[bca.local((pack_word(um[l:]), pack_word(u0[l:]),
                                 pack_word(u1[l:])))]
        return pack_word(delta[u0[:l]] + payload)

    pair_ca = CellularAutomaton(pair_alph, 1, 3, pair_local,
                                name="bordered-" + (block_ca.name or "blocks"))
    return ungroup_ca(UngroupSpec(pair_words, base, pair_ca))


# -- polytracers ---------------------------------------------------------------


def sft_polytracer(sft):
    """One-sided radius-1 CA on the k-windows of the SFT whose polytrace at
    every depth n is exactly the SFT's n-letter language.

    The rule slides the window one step and appends the neighbor's last
    letter when the two windows are compatible, or the least letter keeping
    the window allowed otherwise (one exists because the SFT is trimmed)."""
    k = sft.order
    B = sorted(sft.language(k))
    if not B:
        raise ValueError("empty subshift has no polytracer")
    Bset = set(B)
    alph = Alphabet.stacked(B, sft.alphabet)
    table = {}
    for u in B:
        for v in B:
            if k == 1 or u[1:] == v[:k - 1]:
                out = u[1:] + (v[k - 1],)
            else:
                out = None
                for a in sft.alphabet.letters:
                    if u[1:] + (a,) in Bset:
                        out = u[1:] + (a,)
                        break
                if out is None:
                    raise ValueError("window %r has no right extension; "
                                     "subshift not trimmed" % (pack_word(u),))
            table[(pack_word(u), pack_word(v))] = pack_word(out)
    return CellularAutomaton(alph, 0, 2, table, name="polytracer")


# -- the nilpotent construction ------------------------------------------------


class NilpotentRule:
    """Output the successor of the covering nonzero macrocell, zero elsewhere."""

    def __init__(self, cwords, delta, h, zero):
        self.cwords = frozenset(cwords)
        self.delta = dict(delta)
        self.h = h
        self.zero = zero

    def __call__(self, window):
        h = self.h
        for o in range(h):
            w = window[o:o + h]
            if w in self.cwords:
                return self.delta[w][h - 1 - o]
        return self.zero


def nilpotent_partial_ca(target, J=None):
    """Partial CA whose depth-n trace is the language of a nilpotent subshift.

    Macrocells 0^(3J) reverse(u) u 0^J for u in the depth-J language evolve
    by dropping u's first letter and re-centering; the nonzero macrocells are
    3J-freezing (re-checked), so the covering cell is unambiguous."""
    idx = target.nilpotency_index()
    if idx is None:
        raise ValueError("target is not a nilpotent subshift")
    if J is None:
        J = idx
    elif J != idx:
        raise ValueError("nilpotency index is %d, not %d" % (idx, J))
    if J < 1:
        raise ValueError("degenerate index; nothing to compile")
    base = target.alphabet
    z0 = target.is_weakly_nilpotent() and _zero_of(target)
    if not z0:
        raise ValueError("target has no unique quiescent letter")
    LJ = sorted(target.language(J))
    h = 6 * J
    word_of = {u: (z0,) * (3 * J) + tuple(reversed(u)) + u + (z0,) * J
               for u in LJ}
    B = [word_of[u] for u in LJ]
    zero_word = word_of[(z0,) * J]
    C = [w for w in B if w != zero_word]
    ok, wit = is_freezing(C, 3 * J)
    if not ok:
        raise ValueError("nonzero macrocells are not %d-freezing (overlap %s)"
                         % (3 * J, "".join(wit.word)))
    delta = {}
    for u in LJ:
        v = u[1:] + (z0,)
        if v not in word_of:
            raise ValueError("%r cannot follow the index-%d collapse; "
                             "inconsistent language" % (pack_word(v), J))
        delta[word_of[u]] = word_of[v]
    dom = MacrocellSft(B, base, require_freezing=False)
    # Aligned macrocells determine every reachable column: nonzero cells sit
    # inside their own (frozen, immobile) macrocell, and the zero macrocell
    # neither signals nor drifts.  The block-level engine may rely on that.
    dom.aligned_trace_complete = True
    rule = NilpotentRule(C, delta, h, z0)
    return PartialCA(base, h - 1, 2 * h - 1, rule, dom, name="nilpotent")


def _zero_of(target):
    g = target.as_graph()
    return g.zero_letter()


# -- totalization --------------------------------------------------------------


def totalize(block_ca):
    """Extend a CA on blocks B to all k-blocks by projecting unknown blocks
    to the least element of B before applying the rule.  From the second row
    on, the shifted polytrace is unchanged."""
    alph = block_ca.alphabet
    if alph.decode is None:
        raise ValueError("needs a block alphabet")
    base = alph.parts[0]
    k = alph.tracks
    blocks = sorted(alph.decode[a] for a in alph.letters)
    full = sorted(itertools.product(base.letters, repeat=k))
    if len(blocks) == len(full):
        return block_ca
    if (block_ca.anchor, block_ca.diameter) != (0, 2):
        raise ValueError("totalize expects the one-sided radius-1 normal form")
    Bset = set(blocks)
    least = blocks[0]
    psi = {w: (w if w in Bset else least) for w in full}
    full_alph = Alphabet.stacked(full, base)
    table = {}
    for u in full:
        for v in full:
            out = block_ca.local((pack_word(psi[u]), pack_word(psi[v])))
            table[(pack_word(u), pack_word(v))] = out
    return CellularAutomaton(full_alph, 0, 2, table,
                             name=(block_ca.name or "blocks") + "-total")


# -- the full-trace compiler ----------------------------------------------------


class ModeRule:
    """Three-mode local rule of the compiled total CA.

    execution: the center sits inside a block u0 followed by a block u1 and a
    fresh macrocell front (a Theta word) two blocks later; emit the block
    image g(u0, u1) at the center's offset.  frontier: the macrocell front
    starts one block after u0 and does not continue; emit the end-of-word
    image g(u0, end).  default: apply the letter map to the center.
    """

    def __init__(self, base, blocks, exec_map, frontier_map, xi, p):
        self.base = base
        self.blocks = tuple(tuple(w) for w in blocks)
        self.block_set = frozenset(self.blocks)
        self.exec_map = dict(exec_map)
        self.frontier_map = dict(frontier_map)
        self.xi = dict(xi)
        self.p = p
        self.m = 2 * p - 1
        self.diameter = 10 * p - 1
        self._theta = {}

    def is_theta(self, w):
        """w in A^(4p) starts an isolated macrocell: a block with no
        competing block start in the next 2p-1 cells."""
        try:
            return self._theta[w]
        except KeyError:
            tp = 2 * self.p
            ok = w[:tp] in self.block_set and \
                not any(w[i:i + tp] in self.block_set for i in range(1, tp))
            self._theta[w] = ok
            return ok

    def __call__(self, window):
        m = self.m
        tp = 2 * self.p
        B = self.block_set
        for i in range(m + 1):
            s = m - i
            u0 = window[s:s + tp]
            if u0 in B and window[s + tp:s + 2 * tp] in B and \
                    self.is_theta(window[s + 2 * tp:s + 4 * tp]):
                return self.exec_map[(u0, window[s + tp:s + 2 * tp])][i]
        for i in range(m + 1):
            s = m - i
            u0 = window[s:s + tp]
            if u0 in B and self.is_theta(window[s + tp:s + 3 * tp]) and \
                    not self.is_theta(window[s + 2 * tp:s + 4 * tp]):
                return self.frontier_map[u0][i]
        return self.xi[window[m]]

    def step_cycle(self, row):
        """One synchronous step on a period row, read circularly; same
        semantics as scanning __call__ across the period, but driven by the
        (sparse) block starts instead of per-cell window scans."""
        P = len(row)
        p = self.p
        tp = 2 * p
        m = self.m
        reps = 2 + (8 * p) // P
        r2 = tuple(row) * reps
        B = self.block_set
        bst = [r2[s:s + tp] in B for s in range(P)]

        def bflag(s):
            return bst[s % P]

        tst = [bst[s] and not any(bflag(s + i) for i in range(1, tp))
               for s in range(P)]

        def tflag(s):
            return tst[s % P]

        out = [self.xi[a] for a in row]
        taken = [False] * P
        starts = [s for s in range(P) if bst[s]]
        for s in starts:
            if bflag(s + tp) and tflag(s + 2 * tp):
                word = self.exec_map[(r2[s:s + tp], r2[s + tp:s + 2 * tp])]
                for i in range(m + 1):
                    c = (s + i) % P
                    out[c] = word[i]
                    taken[c] = True
        for s in starts:
            if tflag(s + tp) and not tflag(s + 2 * tp):
                word = self.frontier_map[r2[s:s + tp]]
                for i in range(m + 1):
                    c = (s + i) % P
                    if not taken[c]:
                        out[c] = word[i]
        return out


def full_trace_compile(gt, xi):
    """Compile a semifinite block automaton into a total CA whose trace is
    the automaton's polytrace united with the letter map's orbit closure.

    Mechanical hypothesis checks: the blocks are p-freezing (p = half the
    block length), the blockwise letter-map preimage of the block set stays
    inside it, and the automaton advances the first p tracks exactly by the
    letter map."""
    if not isinstance(gt, SemifiniteAutomaton):
        raise TypeError("expected a semifinite automaton on blocks")
    alph = gt.base
    if alph.decode is None:
        raise ValueError("the automaton must act on a block alphabet")
    blocks = [alph.decode[a] for a in alph.letters]
    base = alph.parts[0]
    h = len(blocks[0])
    if h % 2:
        raise ValueError("blocks must have even length 2p")
    p = h // 2
    xi = dict(xi)
    if set(xi) != set(base.letters) or not set(xi.values()) <= set(base.letters):
        raise ValueError("the letter map must be total on the base alphabet")
    ok, wit = is_freezing(blocks, p)
    if not ok:
        raise ValueError("hypothesis failed: blocks are not %d-freezing "
                         "(overlap %s)" % (p, "".join(wit.word)))
    Bset = set(blocks)
    if len(base) ** h > (1 << 22):
        raise CapacityError("preimage-closure check needs enumerating %d words"
                            % (len(base) ** h,))
    for w in itertools.product(base.letters, repeat=h):
        if tuple(xi[c] for c in w) in Bset and w not in Bset:
            raise ValueError(
                "hypothesis failed: %s maps letterwise into the block set "
                "without belonging to it, so the default mode could spawn "
                "spurious macrocells" % ("".join(w),))
    dec = alph.decode
    exec_map = {}
    frontier_map = {}
    for u in blocks:
        head = tuple(xi[c] for c in u[:p])
        out = dec[gt.gtilde(pack_word(u))]
        if out[:p] != head:
            raise ValueError("hypothesis failed: end-of-word image of %s does "
                             "not advance the first %d tracks by the letter map"
                             % ("".join(u), p))
        frontier_map[u] = out
        for v in blocks:
            out = dec[gt.gtilde(pack_word(u), pack_word(v))]
            if out[:p] != head:
                raise ValueError("hypothesis failed: image of (%s, %s) does "
                                 "not advance the first %d tracks by the "
                                 "letter map" % ("".join(u), "".join(v), p))
            exec_map[(u, v)] = out
    rule = ModeRule(base, blocks, exec_map, frontier_map, xi, p)
    ca = CellularAutomaton(base, 2 * p - 1, 10 * p - 1, rule,
                           name="full-trace")
    return CompiledArtifact(
        ca, "execution/frontier/default compiler, p=%d, %d blocks"
        % (p, len(blocks)),
        details={"p": p, "blocks": [pack_word(b) for b in blocks],
                 "xi": dict(xi)})


# -- pipelines -----------------------------------------------------------------


def _extend_in_blocks(z, payload_blocks, k, base):
    """Right-extend z by k-1 letters so every k-window lies in the payload
    block set (prefix-compatibility for short words)."""
    z = tuple(z)
    Bp = set(tuple(w) for w in payload_blocks)
    if k == 1:
        if any((c,) not in Bp for c in z):
            raise ValueError("word uses a letter outside the block set")
        return z
    prefixes = {w[:n] for w in Bp for n in range(1, k + 1)}
    target = len(z) + k - 1

    def admissible(word):
        for i in range(len(word)):
            piece = word[i:i + k]
            if len(piece) == k:
                if piece not in Bp:
                    return False
            elif len(word) < k and word not in prefixes and i == 0:
                return False
        if len(word) < k:
            return word in prefixes
        return True

    for i in range(max(0, len(z) - k + 1)):
        if len(z) >= k and z[i:i + k] not in Bp:
            raise ValueError("word window %r falls outside the block set"
                             % ("".join(z[i:i + k]),))

    def rec(cur):
        if len(cur) >= target:
            return cur
        tail = cur[max(0, len(cur) - k + 1):]
        for a in base.letters:
            cand = tail + (a,)
            okc = cand in Bp if len(cand) == k else cand in prefixes
            if okc:
                got = rec(cur + (a,))
                if got is not None:
                    return got
        return None

    if len(z) < k and z not in prefixes:
        raise ValueError("word %r is not a block prefix" % ("".join(z),))
    out = rec(z)
    if out is None:
        raise ValueError("word cannot be right-extended inside the block set")
    return out


def _sliding_witness(border, payload_blocks, k, base):
    """Witness recipe for border-composed sliding-window dynamics: encode the
    word as overlapping k-windows on the payload track behind a fixed border
    word, aligned so cell 0 observes the first payload track."""
    up0 = border.words[0]
    l = border.length

    def witness(z):
        z = tuple(z)
        if not z:
            raise ValueError("empty word")
        ext = _extend_in_blocks(z, payload_blocks, k, base)
        xs = [ext[i:i + k] for i in range(len(z))]
        seq = [up0 + x for x in xs]
        return Configuration(seq[0], tuple(chain.from_iterable(seq)), seq[-1],
                             offset=-l)

    return witness


def _search_witness(pca):
    """Witness recipe by exhaustive placement: one macrocell between quiescent
    macrocells, observed at each track."""
    dom = pca.domain
    W = dom.block_words
    h = dom.block_length
    quiet = [w for w in W if len(set(w)) == 1]
    pad = quiet[0] if quiet else W[0]

    def witness(z):
        z = tuple(z)
        for w in W:
            for i in range(h):
                cfg = Configuration(pad, w, pad, offset=-i)
                if cfg.column(pca, 0, len(z)) == z:
                    return cfg
        raise ValueError("no single-macrocell witness reproduces %r"
                         % ("".join(z),))

    return witness


def partial_trace_compile(target, polytracer, validate_depth=4,
                          period_bound=None):
    """Dispatch a polytraceable sofic target to a partial-trace construction.

    (a) weakly nilpotent targets route to the nilpotent macrocell CA;
    (b) a non-uniform periodic word of smallest period gives a dynamic
    border; (c) otherwise two uniform periodic words give a static border.
    """
    have = polytrace(polytracer, validate_depth).words
    want = target.language(validate_depth)
    if set(have) != set(want):
        diff = sorted(set(have) ^ set(want))[0]
        raise ValueError("polytracer does not reproduce the target at depth "
                         "%d (first difference %r)"
                         % (validate_depth, "".join(diff)))
    base = target.alphabet
    k = polytracer.alphabet.tracks
    payload = [polytracer.alphabet.decode[a]
               for a in polytracer.alphabet.letters]
    if target.is_weakly_nilpotent():
        J = target.nilpotency_index()
        if J is None:
            raise ValueError(
                "target admits a single periodic word yet never collapses: "
                "no true polytrace can do that; inputs are inconsistent")
        pca = nilpotent_partial_ca(target, J)
        return CompiledArtifact(pca, "nilpotent macrocells, J=%d" % J,
                                witness=_search_witness(pca), branch="a",
                                details={"J": J})
    g = target.as_graph()
    bound = period_bound if period_bound is not None else 4 * len(g.vertices) + 4
    u = None
    for pl in range(2, bound + 1):
        cands = sorted(w for w in target.periodic_points(pl)
                       if len(w) == pl and len(set(w)) > 1)
        if cands:
            u = cands[0]
            break
    if u is not None:
        border = dynamic_border(base, u, k)
        pca = border_compose(polytracer, border)
        return CompiledArtifact(
            pca, "dynamic border on u=%s, macrocell length %d"
            % ("".join(u), k + border.length),
            witness=_sliding_witness(border, payload, k, base), branch="b",
            details={"u": u})
    uniform = [a for a in base.letters if g.admits_periodic((a,))]
    if len(uniform) < 2:
        raise ValueError("target has neither a non-uniform periodic word nor "
                         "two uniform ones; only nilpotent targets do that")
    border = static_border(base, uniform[0], uniform[1], k)
    pca = border_compose(polytracer, border)
    return CompiledArtifact(
        pca, "static border %s%s^%d" % (uniform[1], uniform[0], k),
        witness=_sliding_witness(border, payload, k, base), branch="c",
        details={"zero": uniform[0], "one": uniform[1]})


def polytrace_to_trace(total_ca, xi, block_language=None, validate_depth=4):
    """Remove the alphabet restriction: sandwich the total block CA behind a
    separated-pair border for the letter map and run the full-trace compiler.
    The result's trace is the polytrace united with the map's orbit closure."""
    alph = total_ca.alphabet
    if alph.decode is None:
        raise ValueError("needs a block alphabet")
    base = alph.parts[0]
    k = alph.tracks
    if len(alph) != len(base) ** k:
        raise ValueError("the block CA must be total on all %d-blocks; "
                         "totalize it first" % (k,))
    if (total_ca.anchor, total_ca.diameter) != (0, 2):
        raise ValueError("needs the one-sided radius-1 normal form")
    xi = dict(xi)
    orbit = DeterministicOrbit(base, xi)
    if orbit.is_nilpotent():
        raise ValueError("the letter map is nilpotent; its orbit closure "
                         "cannot fill the default mode")
    want = set(orbit.language(validate_depth))
    have = polytrace(total_ca, validate_depth).words
    missing = sorted(want - set(have))
    if missing:
        raise ValueError("orbit word %r is missing from the polytrace at "
                         "depth %d" % ("".join(missing[0]), validate_depth))
    border = xi_border(base, xi, k, pad=3)
    l = border.length
    payload = sorted(itertools.product(base.letters, repeat=k))
    pair_words = [w + v for w in border.words for v in payload]
    pair_alph = Alphabet.stacked(pair_words, base)
    delta = border.delta
    dec = alph.decode
    table = {}
    for w0 in pair_words:
        for w1 in pair_words:
            out = delta[w0[:l]] + dec[total_ca.local(
                (pack_word(w0[l:]), pack_word(w1[l:])))]
            table[(pack_word(w0), pack_word(w1))] = pack_word(out)
    pair_ca = CellularAutomaton(pair_alph, 0, 2, table, name="bordered")
    sfa = extend_onesided(pair_ca)
    art = full_trace_compile(sfa, xi)
    art.provenance = ("separated-pair border (k=%d, l=%d) through the "
                      % (k, l)) + art.provenance
    blocks_for_witness = block_language if block_language is not None else payload
    art.witness = _sliding_witness(border, blocks_for_witness, k, base)
    art.details.update({"k": k, "border_words":
                        [pack_word(w) for w in border.words]})
    return art


def ultimate_trace_compile(target, polytracer=None, xi=None, validate_depth=6):
    """Realize the target up to finitely many initial rows.

    Branch 1: weakly nilpotent targets are matched by any nilpotent CA at
    offset J.  Otherwise a letter map is chosen by the canonical
    contains_deterministic search (identity first, then image tuples in
    lexicographic order) unless the caller supplies one.  Branch 2: the
    chosen map is non-nilpotent and drives the full-trace pipeline at
    offset 1.  Branch 3 (the chosen map is nilpotent while the target is
    not) requires a published construction this library does not implement
    and is reported, not built; passing a different ``xi`` explicitly is
    the escape hatch when a non-canonical map would compile."""
    base = target.alphabet
    if target.is_weakly_nilpotent():
        J = target.nilpotency_index()
        if J is None:
            raise ValueError("weakly nilpotent target with no collapse index; "
                             "not realizable by a nilpotent CA")
        g = target.as_graph()
        zero = g.zero_letter()
        ca = CellularAutomaton.constant(base, zero)

        def witness(z):
            z = tuple(z)
            if len(z) > 1 and any(c != zero for c in z[1:]):
                raise ValueError("constant CA columns die after one row")
            return Configuration.uniform(z[0])

        return CompiledArtifact(ca, "constant-%s CA against a nilpotent "
                                "target, offset J=%d" % (zero, J),
                                witness=witness, offset_j=J, branch=1,
                                details={"J": J})
    if xi is None:
        fitting = target.as_graph().deterministic_maps()
        if not fitting:
            return NotUltimatelyTraceable(
                "no letter map keeps its whole orbit closure inside the target")
        xi = fitting[0]
    else:
        xi = dict(xi)
        orbit = DeterministicOrbit(base, xi)
        bad = sorted(set(orbit.language(validate_depth))
                     - set(target.language(validate_depth)))
        if bad:
            raise ValueError("orbit word %r leaves the target"
                             % ("".join(bad[0]),))
    orbit = DeterministicOrbit(base, xi)
    if not orbit.is_nilpotent():
        if polytracer is None:
            raise ValueError("the non-nilpotent branch needs a polytracer")
        payload = sorted(polytracer.alphabet.decode[a]
                         for a in polytracer.alphabet.letters)
        total = totalize(polytracer)
        art = polytrace_to_trace(total, xi, block_language=payload,
                                 validate_depth=min(validate_depth, 4))
        art.offset_j = 1
        art.branch = 2
        art.details["xi"] = dict(xi)
        return art
    return UnsupportedOutcome(
        3, "the canonical deterministic subshift of the target is nilpotent "
        "while the target is not; this needs the published union-with-orbit "
        "tracing construction, which is out of scope here", xi=xi)
