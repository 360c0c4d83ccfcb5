"""Subshift handles: SFTs, sofic graphs, deterministic orbits.

Every handle answers exact language queries through a trimmed labeled-graph
presentation.  The decidable predicates (weak nilpotency, nilpotency index,
deterministic-subshift containment, CDD, ultimate coincidence) all run on
that graph, so SFT and sofic inputs share one code path.
"""

from __future__ import annotations

import itertools

from .core import Alphabet, CapacityError

LANGUAGE_CAP = 1 << 22


class SoficGraph:
    """Labeled graph presentation of a sofic shift.

    ``sided`` is "one" (points are right-infinite label sequences of paths
    from ``starts``, all vertices when None) or "two" (bi-infinite paths).
    The graph is trimmed on construction: every surviving vertex lies on a
    legal infinite path, and for one-sided graphs is reachable from a start.
    """

    def __init__(self, alphabet, edges, sided="one", starts=None, trim=True):
        if sided not in ("one", "two"):
            raise ValueError("sided must be 'one' or 'two'")
        self.alphabet = alphabet
        self.sided = sided
        edges = tuple((p, a, q) for (p, a, q) in edges)
        for _, a, _ in edges:
            if a not in alphabet:
                raise ValueError("edge label %r not in alphabet" % (a,))
        vertices = set()
        for p, _, q in edges:
            vertices.add(p)
            vertices.add(q)
        if starts is not None:
            starts = frozenset(starts) & vertices
        if trim:
            vertices, edges, starts = self._trim(vertices, edges, starts)
        self.vertices = frozenset(vertices)
        self.edges = tuple(sorted(edges, key=lambda e: (str(e[0]), e[1], str(e[2]))))
        self.starts = starts
        self._out = {}
        for p, a, q in self.edges:
            self._out.setdefault(p, []).append((a, q))
        self._lang_cache = {}

    def _trim(self, vertices, edges, starts):
        vertices = set(vertices)
        while True:
            outs = {v for v, _, _ in edges if v in vertices}
            ins = {v for _, _, v in edges if v in vertices}
            if self.sided == "two":
                keep = {v for v in vertices if v in outs and v in ins}
            else:
                keep = {v for v in vertices if v in outs}
                if starts is not None:
                    reach = set(starts & keep)
                    frontier = list(reach)
                    adj = {}
                    for p, _, q in edges:
                        if p in keep and q in keep:
                            adj.setdefault(p, []).append(q)
                    while frontier:
                        v = frontier.pop()
                        for w in adj.get(v, ()):
                            if w not in reach:
                                reach.add(w)
                                frontier.append(w)
                    keep &= reach
            if keep == vertices:
                break
            vertices = keep
            edges = tuple(e for e in edges if e[0] in keep and e[2] in keep)
        if starts is not None:
            starts = frozenset(starts) & frozenset(vertices)
        return vertices, edges, starts

    def is_empty(self):
        return not self.vertices

    def _start_set(self):
        return self.starts if self.starts is not None else self.vertices

    # -- language --------------------------------------------------------

    def language(self, n):
        """Exactly the length-n factor words of the shift's points."""
        if n in self._lang_cache:
            return self._lang_cache[n]
        if self.is_empty():
            out = frozenset()
        elif n == 0:
            out = frozenset({()})
        else:
            # factors may start anywhere along a point, so seed every vertex
            words = {v: {()} for v in self.vertices}
            for _ in range(n):
                nxt = {}
                for p, a, q in self.edges:
                    if p in words:
                        bucket = nxt.setdefault(q, set())
                        for w in words[p]:
                            bucket.add(w + (a,))
                total = sum(len(s) for s in nxt.values())
                if total > LANGUAGE_CAP:
                    raise CapacityError("language extraction exceeded cap")
                words = nxt
            out = frozenset(itertools.chain.from_iterable(words.values()))
        self._lang_cache[n] = out
        return out

    def as_graph(self):
        return self

    # -- structural predicates --------------------------------------------

    def _scc_ids(self):
        """Tarjan strongly connected components, iterative."""
        adj = {v: [q for _, q in self._out.get(v, ())] for v in self.vertices}
        index = {}
        low = {}
        onstack = {}
        stack = []
        ids = {}
        counter = itertools.count()
        scc_count = itertools.count()
        for root in self.vertices:
            if root in index:
                continue
            work = [(root, iter(adj[root]))]
            index[root] = low[root] = next(counter)
            stack.append(root)
            onstack[root] = True
            while work:
                v, it = work[-1]
                advanced = False
                for w in it:
                    if w not in index:
                        index[w] = low[w] = next(counter)
                        stack.append(w)
                        onstack[w] = True
                        work.append((w, iter(adj[w])))
                        advanced = True
                        break
                    elif onstack.get(w):
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if low[v] == index[v]:
                    cid = next(scc_count)
                    while True:
                        w = stack.pop()
                        onstack[w] = False
                        ids[w] = cid
                        if w == v:
                            break
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
        return ids

    def cycle_letters(self):
        """Letters carried by edges that lie on some cycle."""
        ids = self._scc_ids()
        return {a for p, a, q in self.edges if ids[p] == ids[q]}

    def is_weakly_nilpotent(self):
        """True iff the shift admits a unique periodic infinite word.

        On a trim graph that is exactly: every cycle edge carries one common
        letter, which forces the unique periodic point to be uniform.
        """
        if self.is_empty():
            return False
        return len(self.cycle_letters()) == 1

    def zero_letter(self):
        """The letter of the unique uniform periodic point, if weakly nilpotent."""
        letters = self.cycle_letters()
        if len(letters) != 1:
            return None
        return next(iter(letters))

    def nilpotency_index(self):
        """Least J with sigma^J(shift) = {zero^inf}, or None.

        None when not weakly nilpotent or when some non-zero edge can occur
        arbitrarily late (it is reachable from a cycle).
        """
        if not self.is_weakly_nilpotent():
            return None
        zero = self.zero_letter()
        hot = [(p, a, q) for p, a, q in self.edges if a != zero]
        if not hot:
            return 0
        ids = self._scc_ids()
        cyclic = {p for p, a, q in self.edges if ids[p] == ids[q]}
        cyclic |= {q for p, a, q in self.edges if ids[p] == ids[q]}
        # vertices reachable from a cycle can carry letters arbitrarily late
        reach_cycle = set(cyclic)
        frontier = list(reach_cycle)
        while frontier:
            v = frontier.pop()
            for _, q in self._out.get(v, ()):
                if q not in reach_cycle:
                    reach_cycle.add(q)
                    frontier.append(q)
        if any(p in reach_cycle for p, _, _ in hot):
            return None
        # longest path (in edges) from a start to each non-cycle-reachable vertex
        zone = self.vertices - reach_cycle
        starts = self._start_set()
        indeg = {v: 0 for v in zone}
        for p, _, q in self.edges:
            if p in zone and q in zone:
                indeg[q] += 1
        order = [v for v in zone if indeg[v] == 0]
        topo = []
        indeg = dict(indeg)
        queue = list(order)
        while queue:
            v = queue.pop()
            topo.append(v)
            for _, q in self._out.get(v, ()):
                if q in zone:
                    indeg[q] -= 1
                    if indeg[q] == 0:
                        queue.append(q)
        longest = {v: (0 if v in starts else None) for v in zone}
        for v in topo:
            if longest[v] is None:
                continue
            for _, q in self._out.get(v, ()):
                if q in zone:
                    cand = longest[v] + 1
                    if longest[q] is None or longest[q] < cand:
                        longest[q] = cand
        best = -1
        for p, _, _ in hot:
            if longest.get(p) is not None:
                best = max(best, longest[p])
        if best < 0:
            return None
        return best + 1

    # -- periodic points and point membership ------------------------------

    def _letter_relation(self, a):
        rel = {}
        for p, b, q in self.edges:
            if b == a:
                rel.setdefault(p, set()).add(q)
        return rel

    def _word_relation(self, w):
        rel = {v: {v} for v in self.vertices}
        for a in w:
            step = self._letter_relation(a)
            rel = {v: set().union(*(step.get(u, set()) for u in rel[v]))
                   if rel[v] else set() for v in rel}
        return rel

    def admits_periodic(self, w):
        """Whether the periodic point with period word w belongs to the shift."""
        w = tuple(w)
        if not w:
            raise ValueError("period word must be nonempty")
        rel = self._word_relation(w)
        # vertices from which the w-labeled walk continues forever
        alive = {v for v in self.vertices if rel[v]}
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if not (rel[v] & alive):
                    alive.discard(v)
                    changed = True
        if not alive:
            return False
        if self.sided == "two":
            return True
        return bool(self._start_set() & alive)

    def periodic_points(self, p):
        """Primitive period words (lex-least rotation) of periodic points, length <= p."""
        out = set()
        letters = self.alphabet.letters
        for n in range(1, p + 1):
            for w in itertools.product(letters, repeat=n):
                if any(len(w) % q == 0 and w[:q] * (len(w) // q) == w
                       for q in range(1, n)):
                    continue  # imprimitive
                if min(w[r:] + w[:r] for r in range(n)) != w:
                    continue  # not the canonical rotation
                if self.admits_periodic(w):
                    out.add(w)
        return out

    def point_in(self, prefix, cycle):
        """Membership of the ultimately periodic point prefix . cycle^inf.

        Decided by a subset walk: once the reachable-state set repeats at the
        same cycle phase without dying, every finite prefix is in the
        language and compactness supplies the infinite path.
        """
        cycle = tuple(cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")
        states = set(self._start_set())
        for a in prefix:
            nxt = set()
            for v in states:
                for b, q in self._out.get(v, ()):
                    if b == a:
                        nxt.add(q)
            states = nxt
            if not states:
                return False
        seen = set()
        while True:
            key = frozenset(states)
            if key in seen:
                return True
            seen.add(key)
            for a in cycle:
                nxt = set()
                for v in states:
                    for b, q in self._out.get(v, ()):
                        if b == a:
                            nxt.add(q)
                states = nxt
                if not states:
                    return False

    # -- deterministic subshifts -------------------------------------------

    def orbit_of(self, xi, a):
        """The orbit word of ``a`` under letter map ``xi`` as (prefix, cycle)."""
        seen = {}
        seq = []
        cur = a
        while cur not in seen:
            seen[cur] = len(seq)
            seq.append(cur)
            cur = xi[cur]
        i = seen[cur]
        return tuple(seq[:i]), tuple(seq[i:])

    def _admits_map(self, xi):
        return all(self.point_in(*self.orbit_of(xi, a)) for a in xi)

    def deterministic_maps(self, include_partial=False):
        """All letter maps whose orbit closure sits inside the shift, in
        canonical order: identity first, then image tuples lexicographically;
        subalphabet maps (on proper subsets, by decreasing size) after the
        full-alphabet maps when requested."""
        letters = self.alphabet.letters
        found = []
        ident = {a: a for a in letters}
        candidates = [ident]
        for images in itertools.product(letters, repeat=len(letters)):
            xi = dict(zip(letters, images))
            if xi != ident:
                candidates.append(xi)
        for xi in candidates:
            if self._admits_map(xi):
                found.append(xi)
        if include_partial:
            for size in range(len(letters) - 1, 0, -1):
                for sub in itertools.combinations(letters, size):
                    for images in itertools.product(sub, repeat=size):
                        xi = dict(zip(sub, images))
                        if self._admits_map(xi):
                            found.append(xi)
        return found

    def contains_deterministic(self, include_partial=False):
        """First deterministic map (canonical order) whose orbits all fit, or None."""
        for xi in self.deterministic_maps(include_partial=include_partial):
            return xi
        return None

    def is_cdd(self):
        """Whether the shift has a deterministic subshift plus a cycle letter
        outside the map's image."""
        cyc = self.cycle_letters()
        for xi in self.deterministic_maps():
            image = set(xi.values())
            if cyc - image:
                return True
        return False

    # -- shifting -----------------------------------------------------------

    def shift_image(self, J):
        """The shift sigma^J of the language: start vertices advance J steps."""
        if self.sided == "two":
            return self
        starts = set(self._start_set())
        for _ in range(J):
            starts = {q for p, _, q in self.edges if p in starts}
        return SoficGraph(self.alphabet, self.edges, sided="one",
                          starts=frozenset(starts))

    def project(self, q=None):
        """Relabel edges by one stack track (or the union over all tracks)."""
        alph = self.alphabet
        if alph.decode is None:
            raise ValueError("projection needs a stacked alphabet")
        tracks = range(alph.tracks) if q is None else [q]
        base = alph.parts[tracks[0]]
        edges = []
        for t in tracks:
            if alph.parts[t].letters != base.letters:
                raise ValueError("projection tracks over different alphabets")
            edges.extend(((p, t), alph.project(a, t), (qq, t))
                         for p, a, qq in self.edges)
        return SoficGraph(base, edges, sided=self.sided,
                          starts=None if self.starts is None else
                          frozenset((s, t) for s in self.starts for t in tracks))


class Sft:
    """Subshift of finite type given by its allowed windows of one order.

    The allowed set is trimmed at construction so every window occurs in some
    legal point.  ``sided`` follows the same convention as SoficGraph.
    """

    def __init__(self, alphabet, order, allowed, sided="one"):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.alphabet = alphabet
        self.order = order
        self.sided = sided
        allowed = {tuple(w) for w in allowed}
        for w in allowed:
            if len(w) != order:
                raise ValueError("window %r has length != order %d" % (w, order))
            for a in w:
                if a not in alphabet:
                    raise ValueError("window letter %r not in alphabet" % (a,))
        self._graph_full = self._build_graph(allowed)
        self.allowed = frozenset(
            p + (a,) for p, a, q in self._graph_full.edges
            if len(p) == order - 1) if order > 1 else frozenset(
            (a,) for _, a, _ in self._graph_full.edges)

    def _build_graph(self, allowed):
        k = self.order
        edges = []
        starts = None
        if k == 1:
            for w in allowed:
                edges.append(((), w[0], ()))
        else:
            for w in allowed:
                edges.append((w[:-1], w[-1], w[1:]))
            if self.sided == "one":
                # A prefix ramp from the empty vertex, so words that can only
                # sit at the very start of a point still reach the language
                # and depth-from-start measurements count from cell 0.
                for w in allowed:
                    for n in range(k - 1):
                        edges.append((w[:n], w[n], w[:n + 1]))
                starts = [()]
        return SoficGraph(self.alphabet, set(edges), sided=self.sided,
                          starts=starts)

    @classmethod
    def from_forbidden(cls, alphabet, forbidden, sided="one"):
        """SFT forbidding the given words; mixed lengths are padded to the
        longest by free extension."""
        forbidden = [tuple(w) for w in forbidden]
        k = max((len(w) for w in forbidden), default=1)
        if any(len(w) == 0 for w in forbidden):
            raise ValueError("empty forbidden word")
        allowed = []
        for w in alphabet.words(k):
            if not any(w[i:i + len(f)] == f for f in forbidden
                       for i in range(k - len(f) + 1)):
                allowed.append(w)
        return cls(alphabet, k, allowed, sided=sided)

    @classmethod
    def full_shift(cls, alphabet, sided="one"):
        return cls(alphabet, 1, [(a,) for a in alphabet], sided=sided)

    def is_empty(self):
        return self._graph_full.is_empty()

    def language(self, n):
        return self._graph_full.language(n)

    def as_graph(self):
        return self._graph_full

    def window_allowed(self, w):
        """Whether a word of any length >= order-1 avoids all forbidden windows
        (i.e. is locally admissible; for trimmed use the language query)."""
        w = tuple(w)
        k = self.order
        if len(w) < k:
            return any(w == u[:len(w)] or w == u[k - len(w):] for u in self.allowed) \
                or any(w == u[i:i + len(w)] for u in self.allowed for i in range(k - len(w) + 1))
        return all(w[i:i + k] in self.allowed for i in range(len(w) - k + 1))

    # predicates delegate to the graph
    def periodic_points(self, p):
        return self._graph_full.periodic_points(p)

    def is_weakly_nilpotent(self):
        return self._graph_full.is_weakly_nilpotent()

    def nilpotency_index(self):
        return self._graph_full.nilpotency_index()

    def contains_deterministic(self, include_partial=False):
        return self._graph_full.contains_deterministic(include_partial)

    def is_cdd(self):
        return self._graph_full.is_cdd()

    def shift_image(self, J):
        return self._graph_full.shift_image(J)


class MacrocellSft(Sft):
    """The SFT of all phase shifts of aligned block concatenations of W.

    Points look like ... w(-1) w(0) w(1) ... with every w(i) in W, observed
    in any of the h phases.  Order is 2h.  When ``require_freezing`` the
    blocks must be floor(h/2)-freezing, which makes the phase decomposition
    unique (checked, with a counterexample in the error).
    """

    def __init__(self, block_words, base_alphabet, require_freezing=True):
        block_words = tuple(tuple(w) for w in block_words)
        if not block_words:
            raise ValueError("no block words")
        h = len(block_words[0])
        if any(len(w) != h for w in block_words):
            raise ValueError("block words must share one length")
        self.block_words = block_words
        self.block_length = h
        self.unique_phase = require_freezing
        if require_freezing:
            from .freeze import is_freezing
            ok, witness = is_freezing(block_words, h // 2)
            if not ok:
                raise ValueError("blocks are not %d-freezing (overlap %s)"
                                 % (h // 2, "".join(witness.word)))
        allowed = set()
        for strip in itertools.product(block_words, repeat=3):
            s = strip[0] + strip[1] + strip[2]
            for o in range(h):
                allowed.add(s[o:o + 2 * h])
        super().__init__(base_alphabet, 2 * h, allowed, sided="two")

    def phase_offsets_consistent(self):
        """Every allowed window sees its complete W-occurrences at congruent
        offsets; this is the disjoint-decomposition check."""
        W = set(self.block_words)
        h = self.block_length
        for w in self.allowed:
            offs = [o for o in range(h + 1) if w[o:o + h] in W]
            if offs and any((o - offs[0]) % h for o in offs):
                return False
        return True


class DeterministicOrbit:
    """Orbit closure of a letter map xi on a subalphabet: the points
    (xi^j(a))_j for each a, plus their shifts and limits."""

    def __init__(self, alphabet, xi):
        self.alphabet = alphabet
        self.xi = dict(xi)
        for a, b in self.xi.items():
            if a not in alphabet or b not in alphabet:
                raise ValueError("map letter outside alphabet")
            if b not in self.xi:
                raise ValueError("map image %r leaves the map domain" % (b,))
        if not self.xi:
            raise ValueError("empty letter map")
        edges = [(a, a, self.xi[a]) for a in self.xi]
        self._graph = SoficGraph(alphabet, edges, sided="one")

    def language(self, n):
        return self._graph.language(n)

    def as_graph(self):
        return self._graph

    def is_nilpotent(self, zero=None):
        """A deterministic orbit is nilpotent iff all orbits merge into a
        single fixed letter (then sigma^J collapses it to that uniform point)."""
        letters = sorted(self.xi)
        cur = set(letters)
        for _ in range(len(letters) + 1):
            cur = {self.xi[a] for a in cur}
        if len(cur) != 1:
            return False
        z = next(iter(cur))
        if self.xi[z] != z:
            return False
        return zero is None or z == zero


# -- handle-level comparisons ------------------------------------------------


def equal_up_to(s1, s2, n):
    """Language equality at every depth <= n."""
    for i in range(1, n + 1):
        if s1.language(i) != s2.language(i):
            return False
    return True


def ultimately_coincide(s1, s2, j_max, n):
    """Least J <= j_max with sigma^J-images equal up to depth n, or None."""
    g1, g2 = s1.as_graph(), s2.as_graph()
    for J in range(j_max + 1):
        if equal_up_to(g1.shift_image(J), g2.shift_image(J), n):
            return J
    return None
