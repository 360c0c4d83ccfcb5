"""Exact finite-depth trace languages of (partial) cellular automata.

Two engines compute the same thing and cross-check each other:

* ``trace_naive`` enumerates every word long enough to determine the observed
  cells over the requested depth and runs the dependence trapezoid; for full
  CA it is vectorized, for partial CA it walks the domain's graph language.
* ``trace_transducer`` builds a sofic presentation of the depth-k stacked
  subshift {(x, F(x), ..., F^{k-1}(x))} by iterated on-the-fly products with
  per-round trimming; for a partial CA whose domain is a macrocell SFT it
  first derives the block-level CA mechanically (checking that every aligned
  block image stays a block, which proves invariance for the instance) and
  traces that instead, which is what makes the compiled constructions with
  block length 16-18 verifiable.
"""

from __future__ import annotations

import itertools

import numpy as np

from .core import (Alphabet, CapacityError, CellularAutomaton, Configuration,
                   PartialCA, PeriodicConfiguration, pack_word)
from .subshift import MacrocellSft

NAIVE_CAP = 1 << 26
STATE_CAP = 2_000_000


class TraceLanguage:
    """The exact set of height-``depth`` (width-``width``) trace blocks.

    Width-1 blocks are stored as flat letter tuples (time runs downward);
    wider blocks as tuples of row tuples.
    """

    def __init__(self, alphabet, depth, width, words):
        self.alphabet = alphabet
        self.depth = depth
        self.width = width
        self.words = frozenset(words)

    def __contains__(self, w):
        return tuple(w) in self.words

    def __len__(self):
        return len(self.words)

    def __eq__(self, other):
        if isinstance(other, TraceLanguage):
            return (self.depth, self.width, self.words) == \
                (other.depth, other.width, other.words)
        return NotImplemented

    def __repr__(self):
        return "TraceLanguage(depth=%d, width=%d, %d words)" % (
            self.depth, self.width, len(self.words))

    def truncated(self, depth):
        if depth > self.depth:
            raise ValueError("cannot extend a trace language")
        if self.width != 1:
            return TraceLanguage(self.alphabet, depth, self.width,
                                 {w[:depth] for w in self.words})
        return TraceLanguage(self.alphabet, depth, 1,
                             {w[:depth] for w in self.words})

    def suffixes(self, j):
        """Drop the first j rows of every block (the sigma^j image in time)."""
        if j > self.depth:
            raise ValueError("cannot drop more rows than the depth")
        return TraceLanguage(self.alphabet, self.depth - j, self.width,
                             {w[j:] for w in self.words})

    def sorted_words(self):
        return sorted(self.words)


def _span(ca, k, w):
    """Length and left offset of the initial segment that determines the
    observed cells [0, w) over k rows."""
    m, d = ca.anchor, ca.diameter
    lo = -(k - 1) * max(m, 0)
    hi = (w - 1) + (k - 1) * max(d - 1 - m, 0)
    return lo, hi - lo + 1


def _trapezoid_columns(ca, word, lo, k, w):
    """Observed k x w block from one initial word covering cells [lo, lo+len)."""
    m, d = ca.anchor, ca.diameter
    row = tuple(word)
    row_lo = lo
    out = []
    for j in range(k):
        idx = 0 - row_lo
        out.append(row[idx:idx + w])
        if j == k - 1:
            break
        new_lo = row_lo + m
        row = tuple(ca.local(row[i:i + d]) for i in range(len(row) - d + 1))
        row_lo = new_lo
    if w == 1:
        return tuple(r[0] for r in out)
    return tuple(out)


def trace_naive(ca, k, w=1, cap=NAIVE_CAP):
    """Exact depth-k width-w trace language by cone enumeration."""
    if k < 1:
        raise ValueError("depth must be >= 1")
    lo, span = _span(ca, k, w)
    if isinstance(ca, PartialCA):
        words = ca.domain.language(span)
        evals = len(words) * max(0, (k - 1)) * span
        if evals > cap:
            raise CapacityError(
                "naive enumeration needs ~%d window evaluations (cap %d); "
                "use the transducer engine" % (evals, cap))
        blocks = {_trapezoid_columns(ca, word, lo, k, w) for word in words}
        return TraceLanguage(ca.alphabet, k, w, blocks)
    n_words = len(ca.alphabet) ** span
    evals = n_words * max(1, k - 1) * span
    if evals > cap:
        raise CapacityError(
            "naive enumeration needs ~%d window evaluations (cap %d); "
            "use the transducer engine" % (evals, cap))
    try:
        table = ca.table()
        return _naive_full_vectorized(ca, table, k, w, lo, span)
    except CapacityError:
        pass
    blocks = {_trapezoid_columns(ca, word, lo, k, w)
              for word in ca.alphabet.words(span)}
    return TraceLanguage(ca.alphabet, k, w, blocks)


def _naive_full_vectorized(ca, table, k, w, lo, span):
    letters = ca.alphabet.letters
    A = len(letters)
    m, d = ca.anchor, ca.diameter
    idx = {a: i for i, a in enumerate(letters)}
    tbl = np.empty(A ** d, dtype=np.int8)
    for win, out in table.items():
        code = 0
        for a in win:
            code = code * A + idx[a]
        tbl[code] = idx[out]
    n = A ** span
    rows = np.empty((n, span), dtype=np.int8)
    ar = np.arange(n, dtype=np.int64)
    for j in range(span):
        rows[:, j] = (ar // (A ** (span - 1 - j))) % A
    obs = []
    row_lo = lo
    cur = rows
    for j in range(k):
        pos = 0 - row_lo
        obs.append(cur[:, pos:pos + w])
        if j == k - 1:
            break
        L = cur.shape[1]
        enc = cur[:, 0:L - d + 1].astype(np.int64)
        for t in range(1, d):
            enc = enc * A + cur[:, t:L - d + 1 + t]
        cur = tbl[enc]
        row_lo = row_lo + m
    mat = np.concatenate(obs, axis=1)
    uniq = np.unique(mat, axis=0)
    blocks = set()
    for r in uniq:
        flat = [letters[int(i)] for i in r]
        if w == 1:
            blocks.add(tuple(flat))
        else:
            blocks.add(tuple(tuple(flat[j * w:(j + 1) * w]) for j in range(k)))
    return TraceLanguage(ca.alphabet, k, w, blocks)


# -- transducer engine -------------------------------------------------------


class _Codec:
    """Mixed-radix coding of letter stacks as ints (letter at time t is digit t)."""

    def __init__(self, n_letters):
        self.A = n_letters

    def push(self, stack, letter_idx, depth):
        return stack + letter_idx * self.A ** depth

    def top(self, stack, depth):
        return (stack // self.A ** (depth - 1)) % self.A

    def digits(self, stack, depth):
        out = []
        for _ in range(depth):
            out.append(stack % self.A)
            stack //= self.A
        return out


def _initial_presentation(ca):
    """Round-1 presentation: the domain itself with single-letter stacks."""
    letters = ca.alphabet.letters
    idx = {a: i for i, a in enumerate(letters)}
    if isinstance(ca, PartialCA):
        g = ca.domain.as_graph()
        edges = {}
        for p, a, q in g.edges:
            edges.setdefault(p, []).append((idx[a], q))
        return edges
    return {0: [(idx[a], 0) for a in letters]}


def _trim_presentation(edges):
    """Two-sided trim: keep states with both in- and out-edges, to fixpoint."""
    while True:
        has_out = set(edges)
        has_in = set()
        for outs in edges.values():
            for _, q in outs:
                has_in.add(q)
        keep = has_out & has_in
        pruned = {}
        dropped = False
        for p, outs in edges.items():
            if p not in keep:
                dropped = True
                continue
            kept = [(l, q) for (l, q) in outs if q in keep]
            if len(kept) != len(outs):
                dropped = True
            if kept:
                pruned[p] = kept
            else:
                dropped = True
        edges = pruned
        if not dropped:
            return edges


def _merge_states(edges):
    """Quotient by the coarsest forward bisimulation (partition refinement).

    Start from a single block and split blocks by their (label, target
    block) signatures until stable, then keep one representative per block.
    Bisimilar states generate the same label sequences, so the trace is
    unchanged; without this the per-round product states drag their whole
    history along and can blow up even when the trace itself is small.
    """
    if not edges:
        return edges
    block = dict.fromkeys(edges, 0)
    n_blocks = 1
    while True:
        sigs = {}
        new = {}
        for p, outs in edges.items():
            key = (block[p], frozenset((l, block[q]) for (l, q) in outs))
            b = sigs.setdefault(key, len(sigs))
            new[p] = b
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    rep = {}
    for p, b in block.items():
        rep.setdefault(b, p)
    out = {}
    for p, outs in edges.items():
        if rep[block[p]] is p:
            out[p] = list({(l, rep[block[q]]) for (l, q) in outs})
    return out


def _np_trim(E, colspace):
    """Matrix trim: drop windows that cannot sit on a biinfinite run.

    Rows of E are width-windows of column codes below ``colspace``; a row
    survives when its source state (all but the last column) has some
    incoming edge and its target state (all but the first) has some
    outgoing one, to fixpoint.
    """
    w1 = E.shape[1] - 1
    if w1 == 0:
        return E
    packable = colspace ** w1 < (1 << 62)
    while True:
        if packable:
            pid = E[:, 0].copy()
            sid = E[:, 1].copy()
            for t in range(1, w1):
                pid += E[:, t] * colspace ** t
                sid += E[:, t + 1] * colspace ** t
            keep = np.isin(sid, pid) & np.isin(pid, sid)
        else:
            both = np.concatenate([E[:, :-1], E[:, 1:]], axis=0)
            _, ids = np.unique(both, axis=0, return_inverse=True)
            pid, sid = ids[:len(E)], ids[len(E):]
            keep = np.isin(sid, pid) & np.isin(pid, sid)
        if keep.all():
            return E
        E = E[keep]
        if len(E) == 0:
            return E


def _walk_blocks(edges, k, w, letters, codec):
    """Width-w blocks from runs of w consecutive edge labels."""
    blocks = set()
    for p in edges:
        stackruns = [((), p)]
        for _ in range(w):
            nxt = []
            for run, q in stackruns:
                for stack, q2 in edges.get(q, ()):
                    nxt.append((run + (stack,), q2))
            stackruns = nxt
        for run, _ in stackruns:
            cols = [codec.digits(s, k) for s in run]
            blocks.add(tuple(tuple(letters[cols[c][j]] for c in range(w))
                             for j in range(k)))
    return blocks


def _transducer_full_np(ca, k, w, allowed, state_cap):
    """Vectorized level sweep for rules whose row zero is unconstrained.

    Keeps the exact set of width-windows of realizable depth-j columns as an
    integer matrix.  One step forces the anchored column's next letter (the
    rule applied to its last known row), lets every other position extend by
    any letter some realizable column extends with, and trims back to windows
    that sit on biinfinite runs.  Since a window's earlier rows were already
    checked when its prefix was accepted, each level verifies only the new
    row, and the per-level trim keeps the matrix exact.
    """
    letters = ca.alphabet.letters
    A = len(letters)
    codec = _Codec(A)
    m, d = ca.anchor, ca.diameter
    lo = min(0, -m)
    hi = max(0, d - 1 - m)
    width = hi - lo + 1
    own = -lo
    wlo = own - m

    tbl = np.full(A ** d, -1, dtype=np.int16)
    for code, win in enumerate(itertools.product(letters, repeat=d)):
        try:
            tbl[code] = ca.alphabet.index(ca.local(win))
        except KeyError:
            pass

    letmap = np.array(sorted(allowed), dtype=np.int64)
    na = len(letmap)
    n0 = na ** width
    ar = np.arange(n0, dtype=np.int64)
    E = np.empty((n0, width), dtype=np.int64)
    for t in range(width):
        E[:, t] = letmap[(ar // (na ** (width - 1 - t))) % na]
    free = [t for t in range(width) if t != own]
    for depth in range(1, k):
        apow = A ** depth
        enc = np.zeros(len(E), dtype=np.int64)
        for t in range(wlo, wlo + d):
            enc = enc * A + (E[:, t] // (apow // A)) % A
        img = tbl[enc].astype(np.int64)
        ok = img >= 0
        base = E if ok.all() else E[ok]
        if len(base) == 0:
            return TraceLanguage(ca.alphabet, k, w, set())
        own_ext = base[:, own] + img[ok] * apow
        if not free:
            E = np.unique(own_ext)[:, None]
        else:
            cols_new = np.unique(own_ext)
            pref = cols_new % apow
            dig = cols_new // apow
            upref, inv = np.unique(pref, return_inverse=True)
            bits = np.zeros(len(upref), dtype=np.int64)
            np.bitwise_or.at(bits, inv, np.int64(1) << dig)
            rowbits = []
            for t in free:
                ix = np.searchsorted(upref, base[:, t])
                ix = np.minimum(ix, len(upref) - 1)
                rowbits.append(np.where(upref[ix] == base[:, t], bits[ix], 0))
            pieces = []
            total = 0
            for combo in itertools.product(range(A), repeat=len(free)):
                sel = np.ones(len(base), dtype=bool)
                for b, a in zip(rowbits, combo):
                    sel &= (b & (1 << a)) != 0
                n_sel = int(sel.sum())
                if n_sel == 0:
                    continue
                total += n_sel
                if total > 4 * state_cap:
                    raise CapacityError("transducer state cap exceeded")
                out = np.empty((n_sel, width), dtype=np.int64)
                for j, t in enumerate(free):
                    out[:, t] = base[sel, t] + combo[j] * apow
                out[:, own] = own_ext[sel]
                pieces.append(out)
            if not pieces:
                return TraceLanguage(ca.alphabet, k, w, set())
            # A candidate window determines its depth-j prefix window and
            # its new letters, and the pieces range over distinct letter
            # combinations of distinct prefixes, so no deduplication needed.
            E = _np_trim(np.concatenate(pieces, axis=0), apow * A)
        if len(E) == 0:
            return TraceLanguage(ca.alphabet, k, w, set())
        if len(E) > state_cap:
            raise CapacityError("transducer state cap exceeded")
    if w == 1:
        blocks = {tuple(letters[i] for i in codec.digits(int(v), k))
                  for v in np.unique(E)}
        return TraceLanguage(ca.alphabet, k, w, blocks)
    edges = {}
    for r in E.tolist():
        edges.setdefault(tuple(r[:-1]), []).append((r[-1], tuple(r[1:])))
    return TraceLanguage(ca.alphabet, k, w,
                         _walk_blocks(edges, k, w, letters, codec))


def trace_transducer(ca, k, w=1, state_cap=STATE_CAP):
    """Exact depth-k trace via iterated presentation products."""
    if k < 1:
        raise ValueError("depth must be >= 1")
    if isinstance(ca, PartialCA) and isinstance(ca.domain, MacrocellSft) and w == 1:
        # Aligned block columns exhaust the trace when phases are forced
        # (freezing) or when the construction declares misaligned points
        # harmless; otherwise the letterwise engine stays authoritative.
        dom = ca.domain
        if dom.unique_phase or getattr(dom, "aligned_trace_complete", False):
            blocks = _macrocell_trace(ca, k, state_cap=state_cap)
            if blocks is not None:
                return TraceLanguage(ca.alphabet, k, w, blocks)
    return _transducer_letterwise(ca, k, w, state_cap)


def _transducer_letterwise(ca, k, w, state_cap):
    """Depth-k trace via de Bruijn presentations over realizable columns.

    A biinfinite sequence of depth-j columns comes from a space-time diagram
    exactly when row zero lies in the domain shift and, in every window of
    `width` consecutive columns, each known row of the anchored column is the
    rule image of the row above it.  Both conditions are local, so the valid
    sequences form an SFT over the realizable columns refined by the domain
    graph; its states are (width-1)-tuples of columns plus a domain vertex,
    never any deeper history.  Realizable columns at depth j+1 are the
    rule extensions of the windows of the trimmed depth-j presentation.
    Rows past the first are assumed to stay inside the domain; the compilers
    check that invariance mechanically before handing a partial rule here.
    """
    letters = ca.alphabet.letters
    A = len(letters)
    codec = _Codec(A)
    m, d = ca.anchor, ca.diameter
    lo = min(0, -m)
    hi = max(0, d - 1 - m)
    width = hi - lo + 1
    own = -lo
    wlo = own - m
    rule_cache = {}

    def f_idx(tops):
        try:
            return rule_cache[tops]
        except KeyError:
            out = ca.alphabet.index(ca.local(tuple(letters[t] for t in tops)))
            rule_cache[tops] = out
            return out

    dom = _merge_states(_trim_presentation(_initial_presentation(ca)))
    if k == 1:
        # No cross-column constraints at depth one: the domain graph is the
        # whole story, so skip the window machinery (it would build
        # (width-1)-tuples for nothing, which wide rules cannot afford).
        if w == 1:
            return TraceLanguage(ca.alphabet, k, w,
                                 {(letters[a],) for outs in dom.values()
                                  for a, _ in outs})
        blocks = set()
        for q in dom:
            runs = [((), q)]
            for _ in range(w):
                runs = [(run + (a,), q3)
                        for run, q2 in runs for a, q3 in dom.get(q2, ())]
            for run, _ in runs:
                blocks.add((tuple(letters[a] for a in run),))
        return TraceLanguage(ca.alphabet, k, w, blocks)

    if len(dom) == 1:
        allowed = sorted({a for outs in dom.values() for a, _ in outs})
        if A ** d <= (1 << 18) and len(allowed) ** width <= (1 << 20):
            return _transducer_full_np(ca, k, w, allowed, state_cap)

    def flat_graph(depth, cols):
        if len(dom) == 1 and len(cols) ** (width - 1) > state_cap:
            # Over the full shift the tuple count is exact, so refuse the
            # build before materializing anything.
            raise CapacityError("transducer state cap exceeded")
        first = {}
        for s in cols:
            first.setdefault(codec.top(s, 1), []).append(s)
        states = {((), q) for q in dom}
        for _ in range(width - 1):
            nxt = set()
            for buf, q in states:
                for a, q2 in dom.get(q, ()):
                    for s in first.get(a, ()):
                        nxt.add((buf + (s,), q2))
                        if len(nxt) > state_cap:
                            raise CapacityError("transducer state cap exceeded")
            states = nxt
        edges = {}
        for buf, q in states:
            outs = []
            for a, q2 in dom.get(q, ()):
                for s in first.get(a, ()):
                    win = buf + (s,)
                    tgt = win[own]
                    ok = True
                    for r in range(1, depth):
                        try:
                            img = f_idx(tuple(codec.top(x, r) for x in win[wlo:wlo + d]))
                        except KeyError:
                            ok = False
                            break
                        if codec.top(tgt, r + 1) != img:
                            ok = False
                            break
                    if ok:
                        outs.append((s, (win[1:], q2)))
            if outs:
                edges[(buf, q)] = outs
        return _trim_presentation(edges)

    cols = sorted({lbl for outs in dom.values() for lbl, _ in outs})
    edges = flat_graph(1, cols)
    for depth in range(1, k):
        ext = set()
        for (buf, q), outs in edges.items():
            for s, _ in outs:
                win = buf + (s,)
                try:
                    img = f_idx(tuple(codec.top(x, depth) for x in win[wlo:wlo + d]))
                except KeyError:
                    continue
                ext.add(codec.push(win[own], img, depth))
        edges = flat_graph(depth + 1, sorted(ext))
        if not edges:
            return TraceLanguage(ca.alphabet, k, w, set())
    if w == 1:
        blocks = set()
        for outs in edges.values():
            for stack, _ in outs:
                col = tuple(letters[i] for i in codec.digits(stack, k))
                blocks.add(col)
    else:
        blocks = _walk_blocks(edges, k, w, letters, codec)
    return TraceLanguage(ca.alphabet, k, w, blocks)


def derive_block_ca(pca):
    """Block-level CA of a partial CA on a macrocell SFT, or None.

    Enumerates every block context, applies the letter rule across the
    aligned middle block, and requires each image to be a block word.  When
    that succeeds it constitutes a mechanical proof (for this instance) that
    the domain is invariant and that the dynamics is the ungrouping of the
    returned block CA.
    """
    dom = pca.domain
    W = dom.block_words
    Wset = set(W)
    h = dom.block_length
    m, d = pca.anchor, pca.diameter
    lo_blk = -((m + h - 1) // h)             # floor(-m / h)
    hi_blk = (h - m + d - 2) // h + 1        # last block index + 1
    n_ctx = hi_blk - lo_blk
    base_shift = -lo_blk * h
    table = {}
    for ctx in itertools.product(W, repeat=n_ctx):
        strip = tuple(itertools.chain.from_iterable(ctx))
        try:
            image = tuple(pca.local(strip[p - m + base_shift:p - m + base_shift + d])
                          for p in range(h))
        except KeyError:
            return None
        if image not in Wset:
            return None
        table[tuple(pack_word(b) for b in ctx)] = pack_word(image)
    # The cover above is conservative; block rules built over freezing sets
    # rarely see past their direct neighbors.  Drop boundary blocks the image
    # never depends on, so downstream engines work at the true block radius.
    while n_ctx > 1:
        if lo_blk < 0:
            grouped = {}
            for key, img in table.items():
                if grouped.setdefault(key[1:], img) != img:
                    grouped = None
                    break
            if grouped is not None:
                table, lo_blk, n_ctx = grouped, lo_blk + 1, n_ctx - 1
                continue
        if hi_blk > 1:
            grouped = {}
            for key, img in table.items():
                if grouped.setdefault(key[:-1], img) != img:
                    grouped = None
                    break
            if grouped is not None:
                table, hi_blk, n_ctx = grouped, hi_blk - 1, n_ctx - 1
                continue
        break
    alph = Alphabet.stacked(W, pca.alphabet)
    return CellularAutomaton(alph, -lo_blk, n_ctx, table, name="blocks")


def _macrocell_trace(pca, k, state_cap):
    block_ca = derive_block_ca(pca)
    if block_ca is None:
        return None
    lang = _transducer_letterwise(block_ca, k, 1, state_cap)
    h = pca.domain.block_length
    dec = block_ca.alphabet.decode
    blocks = set()
    for col in lang.words:
        rows = [dec[b] for b in col]
        for r in range(h):
            blocks.add(tuple(row[r] for row in rows))
    return blocks


# -- front-end ----------------------------------------------------------------


def trace(ca, k, w=1, engine="auto", cap=NAIVE_CAP, state_cap=STATE_CAP):
    """Depth-k width-w trace language; ``engine`` is naive|transducer|auto."""
    if engine == "naive":
        return trace_naive(ca, k, w, cap=cap)
    if engine == "transducer":
        return trace_transducer(ca, k, w, state_cap=state_cap)
    if engine != "auto":
        raise ValueError("unknown engine %r" % (engine,))
    if isinstance(ca, PartialCA) and isinstance(ca.domain, MacrocellSft):
        return trace_transducer(ca, k, w, state_cap=state_cap)
    _, span = _span(ca, k, w)
    if not isinstance(ca, PartialCA) and len(ca.alphabet) ** span <= 1 << 18:
        return trace_naive(ca, k, w, cap=cap)
    try:
        return trace_transducer(ca, k, w, state_cap=state_cap)
    except CapacityError:
        return trace_naive(ca, k, w, cap=cap)


def polytrace(ca, k, engine="auto", **kw):
    """Union of the track projections of the trace (for stacked alphabets)."""
    alph = ca.alphabet.flattened()
    if alph.decode is None:
        return trace(ca, k, 1, engine=engine, **kw)
    lang = trace(ca, k, 1, engine=engine, **kw)
    base = alph.parts[0]
    words = set()
    for col in lang.words:
        rows = [alph.decode[a] for a in col]
        for q in range(alph.tracks):
            words.add(tuple(row[q] for row in rows))
    return TraceLanguage(base, k, 1, words)


def limit_trace_approx(ca, k, J, engine="auto", **kw):
    """Sound over-approximation of the limit trace: depth-(k+J) columns with
    the first J rows dropped."""
    return trace(ca, k + J, 1, engine=engine, **kw).suffixes(J)


def column_of_uniform(ca, a, depth):
    """The trace column of the uniform configuration of ``a``: the orbit of a
    under xi(b) = f(b^d)."""
    out = []
    cur = a
    for _ in range(depth):
        out.append(cur)
        cur = ca.local((cur,) * ca.diameter)
    return tuple(out)


def periodic_orbit_column(ca, word, depth, cell=0):
    """Column observed at ``cell`` when the initial configuration repeats
    ``word``; rows are stepped cyclically, so this is exact."""
    row = list(word)
    P = len(row)
    m, d = ca.anchor, ca.diameter
    rule = ca.rule
    fast = getattr(rule, "step_cycle", None)
    out = []
    for _ in range(depth):
        out.append(row[cell % P])
        if fast is not None:
            row = fast(row)
        else:
            row = [ca.local(tuple(row[(i - m + t) % P] for t in range(d)))
                   for i in range(P)]
    return tuple(out)


# -- space-time diagrams ------------------------------------------------------


class SpaceTimeDiagram:
    """Successive configurations over a cell viewport."""

    def __init__(self, ca, rows, viewport):
        self.ca = ca
        self.rows = rows
        self.viewport = viewport

    def text(self):
        lo, hi = self.viewport
        lines = []
        for row in self.rows:
            cells = row[0:hi - lo] if isinstance(row, tuple) else row
            if all(len(a) == 1 for a in cells):
                lines.append("".join(cells))
            else:
                lines.append(" ".join(cells))
        return "\n".join(lines)

    def pgm(self):
        lo, hi = self.viewport
        letters = self.ca.alphabet.letters
        idx = {a: i for i, a in enumerate(letters)}
        maxval = max(1, len(letters) - 1)
        lines = ["P2", "%d %d" % (hi - lo, len(self.rows)), str(maxval)]
        for row in self.rows:
            lines.append(" ".join(str(idx[a]) for a in row))
        return "\n".join(lines) + "\n"


def diagram(ca, x, steps, viewport):
    """Run ``steps`` steps from configuration ``x`` and collect the viewport."""
    lo, hi = viewport
    if hi <= lo:
        raise ValueError("empty viewport")
    rows = []
    cur = x
    for _ in range(steps + 1):
        rows.append(tuple(cur.get(i) for i in range(lo, hi)))
        if isinstance(cur, PeriodicConfiguration):
            cur = ca.step_periodic(cur)
        elif isinstance(cur, Configuration):
            cur = cur.step(ca)
        else:
            raise TypeError("diagram needs a configuration")
    return SpaceTimeDiagram(ca, rows, viewport)
