"""Alphabets, configurations, local rules, and cellular-automaton combinators.

A cellular automaton is a tuple (alphabet, anchor m, diameter d, local rule f)
acting on bi-infinite configurations by F(x)_i = f(x[i-m : i-m+d]).  Words are
tuples of letters; letters are plain strings.  Stacked alphabets (letters that
decode to words over base alphabets) carry their decode map explicitly so that
track projections are exact.
"""

from __future__ import annotations

import itertools

# Dense rule tables larger than this are refused (powers, products, emission).
TABLE_CAP = 1 << 24

SEP = "."


class CapacityError(Exception):
    """An exact enumeration would exceed a configured size cap."""


def check_letter(a):
    if not isinstance(a, str) or not a:
        raise ValueError("letters must be nonempty strings, got %r" % (a,))
    if any(c.isspace() for c in a):
        raise ValueError("letters may not contain whitespace: %r" % (a,))


class Alphabet:
    """Ordered finite set of letters.

    If ``parts`` is given, every letter is a stack: ``decode[a]`` is the tuple
    of component letters, one per track, and ``parts[q]`` is the alphabet of
    track q.  Stacked letters display as their components joined with ``.``,
    but the decode map is authoritative, never string splitting.
    """

    def __init__(self, letters, parts=None, decode=None):
        letters = tuple(letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        for a in letters:
            check_letter(a)
        if len(set(letters)) != len(letters):
            raise ValueError("duplicate letters in alphabet")
        if (parts is None) != (decode is None):
            raise ValueError("parts and decode must be given together")
        self.letters = letters
        self._index = {a: i for i, a in enumerate(letters)}
        self.parts = None
        self.decode = None
        if parts is not None:
            parts = tuple(parts)
            decode = {a: tuple(w) for a, w in decode.items()}
            if set(decode) != set(letters):
                raise ValueError("decode must cover exactly the letters")
            for a, w in decode.items():
                if len(w) != len(parts):
                    raise ValueError("stack %r has %d tracks, expected %d"
                                     % (a, len(w), len(parts)))
                for q, c in enumerate(w):
                    if c not in parts[q]:
                        raise ValueError("track %d letter %r of %r not in its alphabet"
                                         % (q, c, a))
            self.parts = parts
            self.decode = decode

    @classmethod
    def flat(cls, letters):
        """Plain alphabet from an iterable of letters (or a string of chars)."""
        if isinstance(letters, str):
            letters = tuple(letters)
        return cls(letters)

    @classmethod
    def stacked(cls, words, base):
        """Alphabet whose letters are the given words over ``base`` (one track per position)."""
        words = [tuple(w) for w in words]
        if not words:
            raise ValueError("no stack words given")
        h = len(words[0])
        letters = [SEP.join(w) for w in words]
        return cls(letters, parts=(base,) * h,
                   decode={SEP.join(w): w for w in words})

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, a):
        return a in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters \
            and self.decode == other.decode

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "Alphabet(%r)" % (list(self.letters),)

    def index(self, a):
        try:
            return self._index[a]
        except KeyError:
            raise ValueError("letter %r not in alphabet" % (a,)) from None

    @property
    def tracks(self):
        return len(self.parts) if self.parts else 1

    def project(self, a, q):
        """Track-q component of a stacked letter."""
        if self.decode is None:
            raise ValueError("alphabet has no stack structure")
        return self.decode[a][q]

    def flattened(self):
        """Expand nested stacks so every track is over a common leaf alphabet.

        Raises if the leaves disagree; plain alphabets return themselves.
        """
        if self.decode is None:
            return self
        flat_parts = []
        flat_decode = {a: [] for a in self.letters}
        for q, part in enumerate(self.parts):
            fp = part.flattened()
            if fp.decode is None:
                flat_parts.append(fp)
                for a in self.letters:
                    flat_decode[a].append(self.decode[a][q])
            else:
                flat_parts.extend(fp.parts)
                for a in self.letters:
                    flat_decode[a].extend(fp.decode[self.decode[a][q]])
        leaves = {p.letters for p in flat_parts}
        if len(leaves) != 1:
            raise ValueError("stack tracks live over different base alphabets")
        return Alphabet(self.letters, parts=tuple(flat_parts), decode=flat_decode)

    def words(self, n):
        """All length-n words, in lexicographic (alphabet) order."""
        return itertools.product(self.letters, repeat=n)


def pack_word(w):
    """Display form of a stack word: components joined with the separator."""
    return SEP.join(w)


class PeriodicConfiguration:
    """Bi-infinite periodic configuration x_i = period[(i + phase) mod p].

    Canonical form: primitive period word, lexicographically least rotation,
    phase reduced into [0, p).
    """

    __slots__ = ("period", "phase")

    def __init__(self, period, phase=0):
        period = tuple(period)
        if not period:
            raise ValueError("period word must be nonempty")
        p = len(period)
        for q in range(1, p + 1):
            if p % q == 0 and period[:q] * (p // q) == period:
                phase = phase % q
                period = period[:q]
                p = q
                break
        best = min(range(p), key=lambda r: period[r:] + period[:r])
        self.period = period[best:] + period[:best]
        self.phase = (phase - best) % p

    def get(self, i):
        return self.period[(i + self.phase) % len(self.period)]

    def window(self, lo, hi):
        return tuple(self.get(i) for i in range(lo, hi))

    def __eq__(self, other):
        return (isinstance(other, PeriodicConfiguration)
                and self.period == other.period and self.phase == other.phase)

    def __hash__(self):
        return hash((self.period, self.phase))

    def __repr__(self):
        return "PeriodicConfiguration(%r, phase=%d)" % (pack_word(self.period), self.phase)


class Configuration:
    """Bi-infinite configuration with eventually periodic tails.

    ``mid`` covers cells [offset, offset + len(mid)); to its left the ``left``
    cycle repeats leftward (cell offset-1 holds left[-1]), to its right the
    ``right`` cycle repeats.  This is the general shape of witness
    configurations: a finite encoded middle between periodic seas.
    """

    __slots__ = ("left", "mid", "right", "offset")

    def __init__(self, left, mid, right, offset=0):
        self.left = tuple(left)
        self.mid = tuple(mid)
        self.right = tuple(right)
        self.offset = offset
        if not self.left or not self.right:
            raise ValueError("tail cycles must be nonempty")

    @classmethod
    def periodic(cls, word, offset=0):
        return cls(word, (), word, offset)

    @classmethod
    def uniform(cls, letter):
        return cls((letter,), (), (letter,))

    def get(self, i):
        j = i - self.offset
        if j < 0:
            return self.left[j % len(self.left)]
        if j < len(self.mid):
            return self.mid[j]
        return self.right[(j - len(self.mid)) % len(self.right)]

    def window(self, lo, hi):
        return tuple(self.get(i) for i in range(lo, hi))

    def shifted(self, s):
        """The configuration y with y_i = x_{i+s}."""
        return Configuration(self.left, self.mid, self.right, self.offset - s)

    def step(self, ca):
        """Image configuration under one application of ``ca``.

        The middle widens by the rule diameter on both sides; beyond the
        widened middle the image is genuinely periodic with the same tail
        periods, so the representation stays exact.
        """
        m, d = ca.anchor, ca.diameter
        lo = self.offset - d
        hi = self.offset + len(self.mid) + d
        img = lambda i: ca.local(self.window(i - m, i - m + d))
        mid = tuple(img(i) for i in range(lo, hi))
        left = tuple(img(i) for i in range(lo - len(self.left), lo))
        right = tuple(img(i) for i in range(hi, hi + len(self.right)))
        return Configuration(left, mid, right, lo)

    def column(self, ca, cell, depth):
        """The letters observed at ``cell`` over ``depth`` successive steps."""
        x = self
        out = []
        for _ in range(depth):
            out.append(x.get(cell))
            x = x.step(ca)
        return tuple(out)


class CellularAutomaton:
    """Local rule (anchor, diameter, f) with its global action.

    ``rule`` is either a dict from length-d windows (tuples of letters) to
    letters, or a callable with the same contract.  Callables keep big
    compiled rules representable without materializing |A|^d tables.
    """

    def __init__(self, alphabet, anchor, diameter, rule, name=""):
        if diameter < 1:
            raise ValueError("diameter must be >= 1")
        self.alphabet = alphabet
        self.anchor = anchor
        self.diameter = diameter
        self.rule = rule
        self.name = name

    def __repr__(self):
        return "CellularAutomaton(%s, m=%d, d=%d%s)" % (
            len(self.alphabet), self.anchor, self.diameter,
            ", %s" % self.name if self.name else "")

    def local(self, window):
        """Apply the local rule to one window."""
        window = tuple(window)
        if len(window) != self.diameter:
            raise ValueError("window length %d, rule diameter %d"
                             % (len(window), self.diameter))
        if callable(self.rule):
            return self.rule(window)
        try:
            return self.rule[window]
        except KeyError:
            raise KeyError("rule undefined on window %r" % (pack_word(window),)) from None

    @property
    def window_count(self):
        return len(self.alphabet) ** self.diameter

    def is_onesided(self):
        """True if cells depend only on themselves and right neighbours (anchor <= 0)."""
        return self.anchor <= 0

    def table(self, cap=TABLE_CAP):
        """Materialized dense rule table; refuses above the cap."""
        if isinstance(self.rule, dict):
            return self.rule
        if self.window_count > cap:
            raise CapacityError("rule table would need %d entries (cap %d)"
                                % (self.window_count, cap))
        return {w: self.rule(w) for w in self.alphabet.words(self.diameter)}

    def step_periodic(self, x):
        """One global step on a periodic configuration (canonical result)."""
        if not isinstance(x, PeriodicConfiguration):
            raise TypeError("expected a PeriodicConfiguration")
        for a in x.period:
            if a not in self.alphabet:
                raise ValueError("configuration letter %r not in the rule alphabet" % (a,))
        p = len(x.period)
        m, d = self.anchor, self.diameter
        word = tuple(self.local(x.window(i - m, i - m + d)) for i in range(p))
        return PeriodicConfiguration(word, 0)

    def orbit_column(self, x, depth, cell=0):
        """Letters at ``cell`` along the first ``depth`` steps from config ``x``."""
        if isinstance(x, PeriodicConfiguration):
            out = []
            for _ in range(depth):
                out.append(x.get(cell))
                x = self.step_periodic(x)
            return tuple(out)
        return x.column(self, cell, depth)

    def pad_to(self, anchor, diameter):
        """Same global map with a wider window; extra cells are ignored.

        Requires anchor >= self.anchor and diameter - anchor >= self.diameter
        - self.anchor, so the old window sits inside the new one.
        """
        if anchor == self.anchor and diameter == self.diameter:
            return self
        off = anchor - self.anchor
        if off < 0 or diameter - off < self.diameter:
            raise ValueError("cannot pad (m=%d,d=%d) to (m=%d,d=%d)"
                             % (self.anchor, self.diameter, anchor, diameter))
        inner, d0 = self, self.diameter
        if isinstance(self.rule, dict):
            rule = lambda w: inner.rule[w[off:off + d0]]
        else:
            rule = lambda w: inner.rule(w[off:off + d0])
        return CellularAutomaton(self.alphabet, anchor, diameter, rule,
                                 name=self.name)

    def product(self, other):
        """Componentwise product CA on the stacked pair alphabet.

        Geometries are aligned first by padding both rules to the common
        anchor and diameter.
        """
        m = max(self.anchor, other.anchor)
        d = m + max(self.diameter - self.anchor, other.diameter - other.anchor)
        f1, f2 = self.pad_to(m, d), other.pad_to(m, d)
        pairs = [(a, b) for a in self.alphabet for b in other.alphabet]
        alph = Alphabet([pack_word(p) for p in pairs],
                        parts=(self.alphabet, other.alphabet),
                        decode={pack_word(p): p for p in pairs})
        dec = alph.decode

        def rule(w):
            comps = [dec[a] for a in w]
            out = (f1.local(tuple(c[0] for c in comps)),
                   f2.local(tuple(c[1] for c in comps)))
            return pack_word(out)

        return CellularAutomaton(alph, m, d, rule)

    def power(self, n, cap=TABLE_CAP):
        """n-fold composition; diameter n(d-1)+1, anchor n*m.

        The rule is kept callable; it is materialized only if the window
        count fits the cap when a dense table is requested later.
        """
        if n < 1:
            raise ValueError("power needs n >= 1")
        if n == 1:
            return self
        prev = self.power(n - 1, cap=cap)
        d1, dp = self.diameter, prev.diameter

        def rule(w):
            shrunk = tuple(prev.local(w[i:i + dp]) for i in range(d1))
            return self.local(shrunk)

        return CellularAutomaton(self.alphabet, self.anchor + prev.anchor,
                                 d1 + dp - 1, rule)

    def is_spreading_state(self, s):
        """True if d > 1 and every window containing s maps to s."""
        if self.diameter <= 1:
            return False
        if self.window_count > TABLE_CAP:
            raise CapacityError("spreading check needs window enumeration")
        for w in self.alphabet.words(self.diameter):
            if s in w and self.local(w) != s:
                return False
        return True

    def restrict(self, domain, witness=None):
        """Partial CA: this rule restricted to an SFT domain."""
        return PartialCA(self.alphabet, self.anchor, self.diameter, self.rule,
                         domain, witness=witness, name=self.name)

    # canonical small rules ------------------------------------------------

    @classmethod
    def radius0(cls, alphabet, mapping, name=""):
        """Diameter-1 anchor-0 CA applying a letter map cellwise."""
        mapping = dict(mapping)
        for a in alphabet:
            if a not in mapping:
                raise ValueError("letter map misses %r" % (a,))
            if mapping[a] not in alphabet:
                raise ValueError("letter map leaves the alphabet at %r" % (a,))
        return cls(alphabet, 0, 1, {(a,): mapping[a] for a in alphabet}, name=name)

    @classmethod
    def identity(cls, alphabet):
        return cls.radius0(alphabet, {a: a for a in alphabet}, name="id")

    @classmethod
    def shift(cls, alphabet):
        """The one-sided shift: anchor 0, diameter 2, f(ab) = b."""
        rule = {(a, b): b for a in alphabet for b in alphabet}
        return cls(alphabet, 0, 2, rule, name="shift")

    @classmethod
    def constant(cls, alphabet, letter, diameter=2):
        """CA sending every window to one letter (diameter 2 by default so the
        constant state is spreading)."""
        if letter not in alphabet:
            raise ValueError("constant letter %r not in alphabet" % (letter,))
        return cls(alphabet, 0, diameter, lambda w: letter, name="const-%s" % letter)


class PartialCA(CellularAutomaton):
    """A CA together with the SFT domain it is restricted to.

    The rule only needs to be defined on windows that occur in the domain.
    ``witness`` is an optional recipe mapping a target trace word to an
    initial configuration whose observed column reproduces it.
    """

    def __init__(self, alphabet, anchor, diameter, rule, domain, witness=None, name=""):
        super().__init__(alphabet, anchor, diameter, rule, name=name)
        self.domain = domain
        self.witness = witness

    def __repr__(self):
        return "PartialCA(%s, m=%d, d=%d%s)" % (
            len(self.alphabet), self.anchor, self.diameter,
            ", %s" % self.name if self.name else "")
