"""Freezing word sets and border word sets.

A set W of length-h words is p-freezing when no suffix of one word (cut at
offset 1..p) is a prefix of another; two occurrences of W-words in the same
configuration then cannot overlap by h-p or more cells, so a decoded block
structure with gaps < h-p is rigid.  Border sets add a successor map on the
words (how the border advances in one time step) and are the raw material
for the trace compilers.
"""

from __future__ import annotations


class OverlapWitness:
    """Two words violating p-freezing: right aligned ``offset`` cells after left."""

    def __init__(self, left, right, offset):
        self.left = tuple(left)
        self.right = tuple(right)
        self.offset = offset
        self.word = self.left + self.right[len(self.right) - offset:]

    def __repr__(self):
        return "OverlapWitness(%r, %r, offset=%d)" % (
            "".join(self.left), "".join(self.right), self.offset)


def is_freezing(words, p):
    """Whether no word's length-(h-i) suffix prefixes another, for i in [1, p].

    Returns (True, None) or (False, witness).  p must satisfy 0 <= p < h.
    """
    words = [tuple(w) for w in words]
    if not words:
        return True, None
    lengths = {len(w) for w in words}
    if len(lengths) != 1:
        raise ValueError("freezing check needs words of one common length")
    h = lengths.pop()
    if p < 0 or p >= h:
        raise ValueError("overlap depth must satisfy 0 <= p < h (got %d, h=%d)"
                         % (p, h))
    # scan smallest offset first, then lexicographic, so the witness word
    # is minimal regardless of the caller's word order
    words = sorted(words)
    for i in range(1, p + 1):
        for left in words:
            suf = left[i:]
            for right in words:
                if right[:h - i] == suf:
                    return False, OverlapWitness(left, right, i)
    return True, None


class Border:
    """A word set with a successor map, freezing enough to compose with
    length-k payload blocks.

    ``words`` all share one length l, ``delta`` maps each word to the word
    the border becomes after one step, and the set must be
    floor((k+l)/2)-freezing, which is checked on construction.
    """

    def __init__(self, alphabet, words, delta, block_k):
        self.alphabet = alphabet
        self.words = tuple(tuple(w) for w in words)
        if not self.words:
            raise ValueError("empty border word set")
        if len(set(self.words)) != len(self.words):
            raise ValueError("duplicate border words")
        self.length = len(self.words[0])
        self.block_k = block_k
        self.delta = {tuple(w): tuple(v) for w, v in delta.items()}
        wset = set(self.words)
        if set(self.delta) != wset:
            raise ValueError("successor map must be defined exactly on the words")
        for v in self.delta.values():
            if v not in wset:
                raise ValueError("successor map must stay inside the word set")
        need = (block_k + self.length) // 2
        ok, witness = is_freezing(self.words, need)
        if not ok:
            raise ValueError(
                "border words are not %d-freezing; offending overlap %r"
                % (need, "".join(witness.word)))

    def __repr__(self):
        return "Border(%d words of length %d, k=%d)" % (
            len(self.words), self.length, self.block_k)

    def required_freezing(self):
        return (self.block_k + self.length) // 2

    def delta_ca(self):
        """Radius-0 CA on the border words (each word one stacked letter)."""
        from .core import Alphabet, CellularAutomaton, pack_word
        alph = Alphabet.stacked(self.words, self.alphabet)
        mapping = {pack_word(w): pack_word(v) for w, v in self.delta.items()}
        return CellularAutomaton.radius0(alph, mapping, name="border")


def static_border(alphabet, zero, one, k):
    """The single word one . zero^k with identity successor (k-freezing)."""
    if zero not in alphabet.letters or one not in alphabet.letters:
        raise ValueError("border letters must come from the alphabet")
    if zero == one:
        raise ValueError("static border needs two distinct letters")
    word = (one,) + (zero,) * k
    return Border(alphabet, [word], {word: word}, k)


def _primitive(word):
    n = len(word)
    for p in range(1, n):
        if n % p == 0 and word == word[p:] + word[:p]:
            return False
    return True


def dynamic_border(alphabet, u, k):
    """Rotating borders built from a primitive non-uniform word u.

    Word i is  u_i^(k+3|u|) . reverse(rot^i u) . rot^i u . u_i^|u|  and the
    successor map advances i by one, so the border carries a moving phase.
    The construction is (k+3|u|)-freezing: the long power of u_i at the front
    cannot restart inside another word's mixed middle.
    """
    u = tuple(u)
    p = len(u)
    if p < 2:
        raise ValueError("dynamic border needs |u| >= 2")
    if len(set(u)) == 1:
        raise ValueError("dynamic border needs a non-uniform word")
    if not _primitive(u):
        raise ValueError("dynamic border needs a primitive word")
    for a in u:
        if a not in alphabet.letters:
            raise ValueError("border letters must come from the alphabet")
    words = []
    for i in range(p):
        rot = u[i:] + u[:i]
        w = (u[i],) * (k + 3 * p) + tuple(reversed(rot)) + rot + (u[i],) * p
        words.append(w)
    delta = {words[i]: words[(i + 1) % p] for i in range(p)}
    return Border(alphabet, words, delta, k)


def forever_separated(xi, a, b):
    """Whether xi^j(a) != xi^j(b) for every j >= 0 (decided by cycle detection:
    the pair orbit repeats within |A|^2 steps)."""
    seen = set()
    pair = (a, b)
    while pair not in seen:
        if pair[0] == pair[1]:
            return False
        seen.add(pair)
        pair = (xi[pair[0]], xi[pair[1]])
    return True


def xi_border(alphabet, xi, k, pad=3):
    """Borders a . b^(k+pad) over pairs that a letter map xi keeps distinct
    forever, advanced letterwise by xi.

    With the default pad the set is (k+2)-freezing.  A nilpotent xi separates
    no pair at all and is rejected.
    """
    if pad < 1:
        raise ValueError("pad must be >= 1")
    xi = dict(xi)
    if set(xi) != set(alphabet.letters) or \
            not set(xi.values()) <= set(alphabet.letters):
        raise ValueError("xi must be a total letter map on the alphabet")
    words = []
    for a in alphabet.letters:
        for b in alphabet.letters:
            if a != b and forever_separated(xi, a, b):
                words.append((a,) + (b,) * (k + pad))
    if not words:
        raise ValueError(
            "the letter map collapses every pair (nilpotent): empty border")
    delta = {w: tuple(xi[c] for c in w) for w in words}
    return Border(alphabet, words, delta, k)
