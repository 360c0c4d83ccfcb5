"""Line-oriented text formats for rules, subshifts, and word lists.

Every parser reports errors with the offending line number, rejects keys it
does not know, and is the exact inverse of the matching emitter up to
whitespace.  Letters are space-separated tokens so product alphabets with
"." as the track separator survive the trip.  Words inside subshift and
word-list files are written as one token per word: plain juxtaposition when
every letter is a single character, letters joined by "," otherwise.
"""

from __future__ import annotations

import itertools

from .core import Alphabet, CapacityError, CellularAutomaton, check_letter
from .subshift import Sft, SoficGraph


class ParseError(Exception):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, lineno, message):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


def _logical_lines(text):
    """Yield (lineno, key, rest) for nonempty lines, stripping # comments."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(lineno, "expected 'key: value', got %r" % line)
        key, rest = line.split(":", 1)
        yield lineno, key.strip(), rest.strip()


def word_token(word):
    """One token for a letter tuple, matching split_word."""
    word = tuple(word)
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return ",".join(word)


def split_word(token, alphabet, lineno):
    """Inverse of word_token against a known alphabet.

    A one-letter word over a multi-character alphabet has no comma to mark
    it, so a whole-token alphabet match wins before splitting into chars.
    """
    if "," in token:
        letters = tuple(token.split(","))
    elif token in alphabet:
        letters = (token,)
    else:
        letters = tuple(token)
    for a in letters:
        if a not in alphabet:
            raise ParseError(lineno, "letter %r not in alphabet" % a)
    return letters


# -- cellular automata --------------------------------------------------------


def emit_ca(ca):
    """CA as text: alphabet, anchor, diameter, then one rule line per window."""
    lines = ["alphabet: %s" % " ".join(ca.alphabet.letters),
             "anchor: %d" % ca.anchor,
             "diameter: %d" % ca.diameter]
    for win in itertools.product(ca.alphabet.letters, repeat=ca.diameter):
        try:
            img = ca.local(win)
        except KeyError:
            continue
        lines.append("rule: %s -> %s" % (" ".join(win), img))
    return "\n".join(lines) + "\n"


def parse_ca(text):
    """Inverse of emit_ca; windows missing from the table make a partial rule.

    Returns a CellularAutomaton when the table is complete.  Partial tables
    are rejected here because a bare rule file carries no domain; compiled
    artifacts always serialize dense tables.
    """
    alphabet = None
    anchor = diameter = None
    table = {}
    seen = {"alphabet": 0, "anchor": 0, "diameter": 0}
    for lineno, key, rest in _logical_lines(text):
        if key == "alphabet":
            letters = tuple(rest.split())
            if not letters:
                raise ParseError(lineno, "empty alphabet")
            for a in letters:
                try:
                    check_letter(a)
                except ValueError as e:
                    raise ParseError(lineno, str(e))
            if len(set(letters)) != len(letters):
                raise ParseError(lineno, "repeated letter")
            alphabet = Alphabet(letters)
            seen["alphabet"] += 1
        elif key in ("anchor", "diameter"):
            try:
                val = int(rest)
            except ValueError:
                raise ParseError(lineno, "%s must be an integer" % key)
            if key == "anchor":
                anchor = val
            else:
                diameter = val
            seen[key] += 1
        elif key == "rule":
            if alphabet is None or diameter is None:
                raise ParseError(lineno, "rule before alphabet/diameter")
            if "->" not in rest:
                raise ParseError(lineno, "rule line needs '->'")
            left, right = rest.split("->", 1)
            win = tuple(left.split())
            img = right.strip()
            if len(win) != diameter:
                raise ParseError(lineno, "window %r has %d letters, expected %d"
                                 % (" ".join(win), len(win), diameter))
            for a in win + (img,):
                if a not in alphabet:
                    raise ParseError(lineno, "letter %r not in alphabet" % a)
            if win in table:
                raise ParseError(lineno, "duplicate rule for window")
            table[win] = img
        else:
            raise ParseError(lineno, "unknown key %r" % key)
    for key, count in seen.items():
        if count == 0:
            raise ParseError(0, "missing %s line" % key)
        if count > 1:
            raise ParseError(0, "repeated %s line" % key)
    if diameter < 1:
        raise ParseError(0, "diameter must be positive")
    missing = len(alphabet) ** diameter - len(table)
    if missing:
        raise ParseError(0, "rule table incomplete: %d windows missing" % missing)
    return CellularAutomaton(alphabet, anchor, diameter,
                             lambda w, t=table: t[tuple(w)])


# -- subshifts -----------------------------------------------------------------


def emit_subshift(s):
    """SFTs as forbidden-word files, sofic graphs as state/edge files."""
    if isinstance(s, Sft):
        if len(s.alphabet) ** s.order > (1 << 20):
            raise CapacityError("order-%d subshift too large to list "
                                "forbidden words" % s.order)
        lines = ["type: sft",
                 "alphabet: %s" % " ".join(s.alphabet.letters),
                 "order: %d" % s.order]
        forb = sorted(word_token(w) for w in s.alphabet.words(s.order)
                      if tuple(w) not in s.allowed)
        lines.append(("forbidden: %s" % " ".join(forb)).rstrip())
        if s.sided == "one":
            lines.append("sided: one")
        return "\n".join(lines) + "\n"
    if isinstance(s, SoficGraph):
        lines = ["type: sofic",
                 "alphabet: %s" % " ".join(s.alphabet.letters),
                 "states: %s" % " ".join(str(v) for v in sorted(s.vertices))]
        for p, a, q in sorted(s.edges):
            lines.append("edge: %s %s %s" % (p, a, q))
        if s.sided == "one":
            lines.append("sided: one")
        return "\n".join(lines) + "\n"
    raise TypeError("cannot serialize %r" % type(s).__name__)


def parse_subshift(text):
    """Inverse of emit_subshift."""
    kind = alphabet = None
    order = None
    forbidden = None
    states = None
    edges = []
    sided = "two"
    for lineno, key, rest in _logical_lines(text):
        if key == "type":
            if rest not in ("sft", "sofic"):
                raise ParseError(lineno, "type must be sft or sofic")
            kind = rest
        elif key == "alphabet":
            letters = tuple(rest.split())
            if not letters or len(set(letters)) != len(letters):
                raise ParseError(lineno, "bad alphabet")
            alphabet = Alphabet(letters)
        elif key == "order":
            try:
                order = int(rest)
            except ValueError:
                raise ParseError(lineno, "order must be an integer")
        elif key == "forbidden":
            if alphabet is None:
                raise ParseError(lineno, "forbidden before alphabet")
            forbidden = [split_word(t, alphabet, lineno) for t in rest.split()]
        elif key == "states":
            states = rest.split()
        elif key == "edge":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError(lineno, "edge line needs 'p a q'")
            edges.append((parts[0], parts[1], parts[2]))
        elif key == "sided":
            if rest not in ("one", "two"):
                raise ParseError(lineno, "sided must be one or two")
            sided = rest
        else:
            raise ParseError(lineno, "unknown key %r" % key)
    if kind is None or alphabet is None:
        raise ParseError(0, "missing type or alphabet line")
    if kind == "sft":
        if forbidden is None:
            raise ParseError(0, "sft file needs a forbidden line")
        s = Sft.from_forbidden(alphabet, forbidden, sided=sided)
        if order is not None and order > s.order:
            s = Sft(alphabet, order, allowed=set(s.language(order)), sided=sided)
        return s
    if states is None:
        raise ParseError(0, "sofic file needs a states line")
    known = set(states)
    for p, a, q in edges:
        if p not in known or q not in known:
            raise ParseError(0, "edge uses undeclared state %r" % (
                p if p not in known else q))
        if a not in alphabet:
            raise ParseError(0, "edge letter %r not in alphabet" % a)
    return SoficGraph(alphabet, edges, sided=sided)


# -- word lists and borders ----------------------------------------------------


def emit_words(alphabet, words):
    lines = ["alphabet: %s" % " ".join(alphabet.letters)]
    for w in sorted(words):
        lines.append("word: %s" % word_token(w))
    return "\n".join(lines) + "\n"


def parse_words(text):
    """Word-list files: an alphabet line then one word per line."""
    alphabet = None
    words = []
    for lineno, key, rest in _logical_lines(text):
        if key == "alphabet":
            letters = tuple(rest.split())
            if not letters or len(set(letters)) != len(letters):
                raise ParseError(lineno, "bad alphabet")
            alphabet = Alphabet(letters)
        elif key == "word":
            if alphabet is None:
                raise ParseError(lineno, "word before alphabet")
            words.append(split_word(rest.strip(), alphabet, lineno))
        else:
            raise ParseError(lineno, "unknown key %r" % key)
    if alphabet is None:
        raise ParseError(0, "missing alphabet line")
    return alphabet, words


def emit_border(border):
    """Border = word list plus the endomap, one delta line per word."""
    lines = [emit_words(border.alphabet, border.words).rstrip("\n")]
    for w in sorted(border.words):
        lines.append("delta: %s -> %s" % (word_token(w),
                                          word_token(border.delta[w])))
    return "\n".join(lines) + "\n"
