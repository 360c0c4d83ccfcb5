"""Checks that compare automata against target subshifts, as report objects.

Nothing here raises on a failed comparison: a failure is data with a
smallest certificate attached, capacity problems degrade to PARTIAL with the
depth actually reached, and the command line turns outcomes into exit codes.
Certificates are found in breadth-first order (shortest depth first, then
lexicographic), so a regression always points at a minimal example.
"""

from .core import CapacityError
from .compilers import CompiledArtifact
from .trace import polytrace, trace_naive, trace_transducer

PASS = "PASS"
FAIL = "FAIL"
PARTIAL = "PARTIAL"

_EXIT = {PASS: 0, FAIL: 1, PARTIAL: 2}


def _show_word(word):
    word = tuple(word)
    if all(len(str(a)) == 1 for a in word):
        return "".join(str(a) for a in word)
    return " ".join(str(a) for a in word)


class Report:
    """Outcome of one check.

    ``outcome`` is PASS, FAIL, or PARTIAL; FAIL carries a minimal
    ``certificate`` (a word, or a pair of words for engine disagreements)
    and PARTIAL records the depth the engines actually reached.
    """

    def __init__(self, name, outcome, detail="", certificate=None,
                 depth=None, achieved=None, mode=None, counts=None,
                 seed=None):
        self.name = name
        self.outcome = outcome
        self.detail = detail
        self.certificate = certificate
        self.depth = depth
        self.achieved = achieved
        self.mode = mode
        self.counts = dict(counts or {})
        self.seed = seed

    def __bool__(self):
        return self.outcome == PASS

    @property
    def exit_code(self):
        return _EXIT[self.outcome]

    def one_line(self):
        bits = ["%-7s" % self.outcome, self.name]
        if self.mode:
            bits.append("mode=%s" % self.mode)
        if self.depth is not None:
            bits.append("depth=%d" % self.depth)
        if self.achieved is not None and self.achieved != self.depth:
            bits.append("achieved=%d" % self.achieved)
        if self.certificate is not None:
            bits.append("certificate=%s" % _show_word(self.certificate))
        if self.detail:
            bits.append("(%s)" % self.detail)
        return " ".join(bits)

    def as_dict(self):
        return {
            "name": self.name,
            "outcome": self.outcome,
            "mode": self.mode,
            "depth": self.depth,
            "achieved": self.achieved,
            "certificate": (None if self.certificate is None
                            else _show_word(self.certificate)),
            "detail": self.detail,
            "counts": dict(self.counts),
            "seed": self.seed,
        }

    def __repr__(self):
        return "Report(%s)" % self.one_line()


def _underlying_ca(artifact):
    if isinstance(artifact, CompiledArtifact):
        return artifact.result
    return artifact


def _deepest_polytrace(ca, depth):
    """Polytrace words at the requested depth, or the deepest one feasible."""
    for k in range(depth, 0, -1):
        try:
            return k, polytrace(ca, k).words
        except CapacityError:
            continue
    return 0, set()


def check_trace(artifact, target, depth, mode="exact"):
    """Compare an automaton's (poly)trace against a target subshift.

    ``mode`` is "exact" (language equality at every depth up to ``depth``),
    "ultimate" or "ultimate:J" (equality after dropping J rows; J defaults
    to the artifact's recorded offset), or "inclusion" (every target word
    appears in the trace).
    """
    mode = str(mode)
    j = 0
    kind = mode
    if mode.startswith("ultimate"):
        kind = "ultimate"
        if ":" in mode:
            j = int(mode.split(":", 1)[1])
        elif isinstance(artifact, CompiledArtifact):
            j = artifact.offset_j
    elif mode not in ("exact", "inclusion"):
        raise ValueError("unknown mode %r" % (mode,))
    ca = _underlying_ca(artifact)
    name = "check_trace[%s]" % (ca.name or "ca")
    achieved_raw, words = _deepest_polytrace(ca, depth + j)
    achieved = max(0, achieved_raw - j)
    if j:
        words = {w[j:] for w in words if len(w) > j}
        # dropping j trace rows advances time, so the right-hand side is the
        # j-shifted target (for two-sided targets this is the target itself)
        target = target.as_graph().shift_image(j)
    for n in range(1, achieved + 1):
        have = {w[:n] for w in words}
        want = {tuple(w) for w in target.language(n)}
        missing = want - have
        extra = set() if kind == "inclusion" else have - want
        if missing or extra:
            cert = min(sorted(missing) + sorted(extra))
            side = ("in target, not in trace" if cert in missing
                    else "in trace, not in target")
            return Report(name, FAIL, detail=side, certificate=cert,
                          depth=depth, achieved=achieved,
                          mode=mode if kind != "ultimate" else
                          "ultimate:%d" % j)
    if achieved < depth:
        return Report(name, PARTIAL,
                      detail="engines capped before the requested depth",
                      depth=depth, achieved=achieved,
                      mode=mode if kind != "ultimate" else "ultimate:%d" % j,
                      counts={"trace_words": len(words)})
    return Report(name, PASS, depth=depth, achieved=achieved,
                  mode=mode if kind != "ultimate" else "ultimate:%d" % j,
                  counts={"trace_words": len(words)})


def run_witnesses(artifact, words):
    """Check that every word's witness configuration reproduces it.

    Words are visited shortest first, then lexicographically, so a failure
    certificate is minimal.
    """
    if not isinstance(artifact, CompiledArtifact) or artifact.witness is None:
        return Report("run_witnesses", PARTIAL,
                      detail="artifact carries no witness recipe")
    ca = artifact.result
    tested = 0
    for z in sorted((tuple(w) for w in words), key=lambda w: (len(w), w)):
        cfg = artifact.witness_config(z)
        got = cfg.column(ca, 0, len(z))
        tested += 1
        if got != z:
            return Report("run_witnesses", FAIL, certificate=z,
                          detail="witness column reads %s" % _show_word(got),
                          counts={"tested": tested})
    return Report("run_witnesses", PASS, counts={"tested": tested})


def cross_check(ca, depth):
    """Compare the naive and transducer engines on one automaton."""
    name = "cross_check[%s]" % (ca.name or "ca")
    try:
        naive = trace_naive(ca, depth)
    except CapacityError:
        return Report(name, PARTIAL, depth=depth,
                      detail="naive engine over capacity")
    try:
        trans = trace_transducer(ca, depth)
    except CapacityError:
        return Report(name, PARTIAL, depth=depth,
                      detail="transducer engine over capacity")
    diff = naive.words ^ trans.words
    if diff:
        cert = min(sorted(diff))
        side = "naive only" if cert in naive.words else "transducer only"
        return Report(name, FAIL, certificate=cert, depth=depth,
                      detail="engines disagree (%s)" % side,
                      counts={"naive": len(naive.words),
                              "transducer": len(trans.words)})
    return Report(name, PASS, depth=depth,
                  detail="%d=%d" % (len(naive.words), len(trans.words)),
                  counts={"naive": len(naive.words),
                          "transducer": len(trans.words)})


def merge_reports(reports):
    """Fold many reports into one exit code: FAIL beats PARTIAL beats PASS."""
    worst = PASS
    for r in reports:
        if r.outcome == FAIL:
            worst = FAIL
        elif r.outcome == PARTIAL and worst == PASS:
            worst = PARTIAL
    return _EXIT[worst]
