"""Shared builders and independent brute-force oracles.

The oracles here recompute everything from first principles (explicit row
iteration, NFA reachability over raw edge lists, string overlap scans) so a
bug in the engines cannot hide behind itself.
"""

import itertools
import random

import pytest
from hypothesis import settings

from tracekit import Alphabet, CellularAutomaton

settings.register_profile("ci", deadline=None, derandomize=True,
                          max_examples=60)
settings.load_profile("ci")

BIN = Alphabet.flat("01")
TRI = Alphabet.flat("012")


# -- small named rules ----------------------------------------------------------


def xor_ca():
    return CellularAutomaton(BIN, 0, 2,
                             lambda w: str(int(w[0]) ^ int(w[1])), name="xor")


def and_ca():
    return CellularAutomaton(BIN, 0, 2,
                             lambda w: str(int(w[0]) & int(w[1])), name="and")


def min3_ca():
    return CellularAutomaton(TRI, 1, 3, lambda w: min(w), name="min3")


def random_table_ca(rng, alphabet, anchor, diameter, name="rnd"):
    letters = alphabet.letters
    table = {w: rng.choice(letters)
             for w in itertools.product(letters, repeat=diameter)}
    return CellularAutomaton(alphabet, anchor, diameter,
                             lambda w, t=table: t[tuple(w)], name=name)


@pytest.fixture
def rng():
    return random.Random(20260816)


# -- independent oracles --------------------------------------------------------


def oracle_trace(ca, k, w=1):
    """Depth-k width-w trace blocks by explicit row iteration.

    Enumerates every input strip wide enough to determine the observed
    cells for k rows, steps it row by row with plain list slicing, and
    reads the columns off.  Exponential, fine for the sizes tests use.
    """
    m, d = ca.anchor, ca.diameter
    left = max(m, 0)
    right = max(d - 1 - m, 0)
    lo = -(k - 1) * left
    hi = (w - 1) + (k - 1) * right
    blocks = set()
    for strip in itertools.product(ca.alphabet.letters, repeat=hi - lo + 1):
        row = list(strip)
        base = lo  # absolute cell of row[0]; steps move it by the anchor
        rows = []
        for t in range(k):
            rows.append(tuple(row[c - base] for c in range(w)))
            if t + 1 < k:
                row = [ca.local(tuple(row[i:i + d]))
                       for i in range(len(row) - d + 1)]
                base += m
        blocks.add(tuple(r[0] for r in rows) if w == 1 else tuple(rows))
    return blocks


def oracle_freezing(words, p):
    """p-freezing by scanning every shifted pair of words as strings."""
    words = [tuple(w) for w in words]
    h = len(words[0])
    for i in range(1, p + 1):
        for u in words:
            for v in words:
                if u[i:] == v[:h - i]:
                    return False
    return True


def nfa_accepts(graph, word):
    """Word membership by breadth-first NFA reachability on the edge list."""
    states = set(graph.vertices)
    for a in word:
        states = {q for (p, b, q) in graph.edges if p in states and b == a}
        if not states:
            return False
    return True


def brute_periodic_words(graph, maxlen):
    """Primitive words w with w^inf in the shift, found by label cycles.

    A period-n point exists iff the n-fold label word pumps: we check that
    w repeated |V|*|w|+1 times is still accepted, which forces an aligned
    cycle in the (vertex, phase) product.
    """
    out = set()
    nv = max(1, len(graph.vertices))
    for n in range(1, maxlen + 1):
        for w in itertools.product(graph.alphabet.letters, repeat=n):
            if nfa_accepts(graph, w * (nv * n + 1)):
                out.add(w)
    return out


def primitive_root(w):
    """Shortest word whose power is w, as its lex-least rotation."""
    n = len(w)
    for q in range(1, n + 1):
        if n % q == 0 and w[:q] * (n // q) == w:
            r = w[:q]
            return min(r[i:] + r[:i] for i in range(q))
    raise AssertionError


def brute_weakly_nilpotent(graph, maxlen=None):
    """Exactly one periodic point, the uniform one, by enumeration."""
    if maxlen is None:
        maxlen = max(1, len(graph.vertices))
    pts = brute_periodic_words(graph, maxlen)
    orbits = {primitive_root(w) for w in pts}
    return len(orbits) == 1 and len({a for w in orbits for a in w}) == 1


def brute_nilpotency_index(graph, horizon=None):
    """Least J with every length-(J+t) word all-zero past position J.

    Works over a horizon of |V| + J + 1 letters, which is enough: a nonzero
    letter at a deeper position pumps back into the window.  Returns None
    when the graph is not weakly nilpotent.
    """
    if not brute_weakly_nilpotent(graph):
        return None
    zero = next(iter(brute_periodic_words(graph, 1)))[0]
    nv = len(graph.vertices)
    horizon = horizon if horizon is not None else 2 * nv + 2
    deepest = 0
    for n in range(1, horizon + 1):
        for w in itertools.product(graph.alphabet.letters, repeat=n):
            if nfa_accepts(graph, w):
                nonzero = [i for i, a in enumerate(w) if a != zero]
                if nonzero:
                    deepest = max(deepest, nonzero[-1] + 1)
    return deepest


def orbit_words(xi, alphabet, depth):
    """All depth-long orbit columns of the letter map, one per start."""
    out = set()
    for a in alphabet.letters:
        col = []
        cur = a
        for _ in range(depth):
            col.append(cur)
            cur = xi[cur]
        out.add(tuple(col))
    return out
