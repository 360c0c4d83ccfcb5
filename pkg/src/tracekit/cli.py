"""Command-line front end.

Subcommands: trace, diagram, verify, freeze-check, compile, gadget.  Exit
codes follow the verify conventions everywhere: 0 for a clean pass or a
finished computation, 1 for a definite failure (mismatch, untraceable,
non-freezing), 2 for partial or unsupported outcomes.  ``--json`` mirrors
the text output as one machine-readable object.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import CapacityError, PartialCA, PeriodicConfiguration
from .compilers import (CompiledArtifact, nilpotent_partial_ca,
                        partial_trace_compile, polytrace_to_trace,
                        sft_polytracer, totalize, ultimate_trace_compile)
from .formats import (ParseError, emit_border, emit_ca, parse_ca,
                      parse_subshift, parse_words, split_word, word_token)
from .freeze import dynamic_border, is_freezing, static_border, xi_border
from .gadget import four_layer_gadget
from .subshift import Sft
from .trace import diagram, polytrace, trace
from .verify import FAIL, PARTIAL, PASS, Report, check_trace, cross_check
from .fixtures import fixtures

EMIT_CAP = 1 << 20


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_subshift(path):
    """A subshift file, or a fixture name."""
    fx = fixtures()
    if path in fx:
        return fx[path].subshift
    return parse_subshift(_read(path))


def _parse_xi(spec, alphabet):
    if spec == "id":
        return {a: a for a in alphabet.letters}
    xi = {}
    for pair in spec.split(","):
        if ":" not in pair:
            raise ValueError("xi pairs look like a:b, got %r" % pair)
        a, b = (t.strip() for t in pair.split(":", 1))
        if a not in alphabet or b not in alphabet:
            raise ValueError("xi letter outside the alphabet: %r" % pair)
        xi[a] = b
    missing = [a for a in alphabet.letters if a not in xi]
    if missing:
        raise ValueError("xi misses letters: %s" % " ".join(missing))
    return xi


def _show_block(block, width):
    if width == 1:
        return " ".join(block)
    return " | ".join(" ".join(row) for row in block)


# -- subcommands ---------------------------------------------------------------


def _cmd_trace(args):
    ca = parse_ca(_read(args.ca))
    if args.engine == "both":
        rep = cross_check(ca, args.depth)
        print(rep.one_line())
        return rep.exit_code
    lang = trace(ca, args.depth, args.width, engine=args.engine)
    for block in sorted(lang.words):
        print(_show_block(block, lang.width))
    return 0


def _cmd_diagram(args):
    ca = parse_ca(_read(args.ca))
    word = split_word(args.config, ca.alphabet, 0)
    lo, hi = (int(t) for t in args.viewport.split("..", 1))
    dia = diagram(ca, PeriodicConfiguration(word), args.steps, (lo, hi))
    out = dia.pgm() if args.format == "pgm" else dia.text() + "\n"
    if args.out:
        _write(args.out, out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_verify(args):
    ca = parse_ca(_read(args.ca))
    target = _load_subshift(args.target)
    rep = check_trace(ca, target, args.depth, mode=args.mode)
    if args.json:
        print(json.dumps(rep.as_dict(), sort_keys=True))
    else:
        print(rep.one_line())
    return rep.exit_code


def _cmd_freeze_check(args):
    alphabet, words = parse_words(_read(args.words))
    ok, witness = is_freezing(words, args.p)
    outcome = PASS if ok else FAIL
    rep = Report("is_freezing", outcome,
                 detail="%d words, p=%d" % (len(words), args.p),
                 certificate=None if ok else witness.word)
    if args.json:
        print(json.dumps(rep.as_dict(), sort_keys=True))
    else:
        print(rep.one_line())
    return rep.exit_code


def _sidecar(kind, art, xi_spec=None):
    lines = ["kind: %s" % kind, "status: %s" % art.status]
    if art.status == "ok":
        if art.branch is not None:
            lines.append("branch: %s" % art.branch)
        lines.append("offset_j: %d" % art.offset_j)
        lines.append("table: %s" % ("partial (domain-restricted; the file "
                                    "lists defined windows only)"
                                    if isinstance(art.result, PartialCA)
                                    else "total"))
        lines.append("provenance: %s" % art.provenance)
        lines.append("witness: %s" % (
            "recipe attached (%s)" % art.provenance
            if art.witness is not None else "none"))
    elif art.status == "unsupported":
        lines.append("branch: %s" % art.branch)
        lines.append("needs: %s" % art.dependency)
    else:
        lines.append("reason: %s" % art.reason)
    if xi_spec:
        lines.append("xi: %s" % xi_spec)
    return "\n".join(lines) + "\n"


def _emit_artifact(art, out):
    ca = getattr(art, "result", None)
    if ca is None:
        return "no rule table (outcome %s)" % art.status
    if len(ca.alphabet) ** ca.diameter > EMIT_CAP:
        return ("rule table with %d^%d windows exceeds the emit cap; "
                "sidecar only" % (len(ca.alphabet), ca.diameter))
    _write(out, emit_ca(ca))
    return "wrote %s" % out


def _cover_sft(target, order):
    if isinstance(target, Sft):
        return target
    return Sft(target.alphabet, order, allowed=set(target.language(order)))


def _cmd_compile(args):
    kind = args.kind
    if kind == "border":
        return _compile_border(args)
    target = _load_subshift(args.target)
    xi_spec = args.xi
    xi = _parse_xi(xi_spec, target.alphabet) if xi_spec else None
    if kind == "sft-polytrace":
        if not isinstance(target, Sft):
            print("sft-polytrace needs an SFT input", file=sys.stderr)
            return 1
        pca = sft_polytracer(target)
        art = CompiledArtifact(pca, "stacked polytracer, %d tracks"
                               % pca.alphabet.tracks)
    elif kind == "nilpotent":
        art = CompiledArtifact(nilpotent_partial_ca(target),
                               "nilpotent macrocells, J=%d"
                               % target.nilpotency_index())
    elif kind == "partial":
        pt = sft_polytracer(_cover_sft(target, args.order))
        art = partial_trace_compile(target, pt, validate_depth=args.depth)
    elif kind == "full":
        if xi is None:
            print("compile full needs --xi", file=sys.stderr)
            return 1
        pt = sft_polytracer(_cover_sft(target, args.order))
        payload = sorted(pt.alphabet.decode[a] for a in pt.alphabet.letters)
        art = polytrace_to_trace(totalize(pt), xi, block_language=payload,
                                 validate_depth=min(args.depth, 4))
    elif kind == "ultimate":
        pt = None
        if not target.is_weakly_nilpotent():
            pt = sft_polytracer(_cover_sft(target, args.order))
        art = ultimate_trace_compile(target, polytracer=pt, xi=xi,
                                     validate_depth=args.depth)
    else:
        raise AssertionError(kind)
    note = _emit_artifact(art, args.out) if args.out else "no --out given"
    sidecar_path = (args.out or kind) + ".prov"
    _write(sidecar_path, _sidecar(kind, art, xi_spec))
    summary = {"kind": kind, "status": art.status,
               "branch": getattr(art, "branch", None),
               "offset_j": getattr(art, "offset_j", None),
               "note": note, "sidecar": sidecar_path}
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        print("%s: %s (branch %s) %s; sidecar %s"
              % (kind, art.status, summary["branch"], note, sidecar_path))
    return {"ok": 0, "unsupported": 2}.get(art.status, 1)


def _compile_border(args):
    alphabet, listed = (parse_words(_read(args.words)) if args.words
                        else (None, None))
    if args.border == "static":
        if alphabet is None or len(alphabet) < 2:
            print("static border needs --words with an alphabet line",
                  file=sys.stderr)
            return 1
        a, b = alphabet.letters[0], alphabet.letters[1]
        border = static_border(alphabet, a, b, args.k)
    elif args.border == "dynamic":
        if not listed:
            print("dynamic border needs --words with one word", file=sys.stderr)
            return 1
        border = dynamic_border(alphabet, listed[0], args.k)
    else:
        if alphabet is None or not args.xi:
            print("xi border needs --words (for the alphabet) and --xi",
                  file=sys.stderr)
            return 1
        border = xi_border(alphabet, _parse_xi(args.xi, alphabet), args.k,
                           pad=args.pad)
    text = emit_border(border)
    if args.out:
        _write(args.out, text)
        print("wrote %s (%d words of length %d)"
              % (args.out, len(border.words), border.length))
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gadget(args):
    g = parse_ca(_read(args.g))
    n = parse_ca(_read(args.n)) if args.n else g
    n2 = parse_ca(_read(args.n2))
    h = four_layer_gadget(g, n, n2)
    lang = polytrace(h, args.depth + args.skip)
    words = sorted({w[args.skip:] for w in lang.words})
    for w in words:
        print(" ".join(w))
    return 0


def main(argv=None):
    top = argparse.ArgumentParser(prog="tracekit", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="trace language of a CA file")
    p.add_argument("--ca", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--width", type=int, default=1)
    p.add_argument("--engine", choices=["naive", "transducer", "both"],
                   default="transducer")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("diagram", help="space-time diagram from a periodic "
                       "configuration")
    p.add_argument("--ca", required=True)
    p.add_argument("--config", required=True, help="word repeated biinfinitely")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--viewport", required=True, help="like -3..8")
    p.add_argument("--format", choices=["txt", "pgm"], default="txt")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("verify", help="compare a CA's trace against a target")
    p.add_argument("--ca", required=True)
    p.add_argument("--target", required=True,
                   help="subshift file or fixture name")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", default="exact",
                   help="exact | ultimate[:J] | inclusion")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("freeze-check", help="is a word set p-freezing")
    p.add_argument("--words", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_freeze_check)

    p = sub.add_parser("compile", help="run a compiler and emit CA + sidecar")
    p.add_argument("kind", choices=["sft-polytrace", "partial", "full",
                                    "ultimate", "border", "nilpotent"])
    p.add_argument("--in", dest="target", help="subshift file or fixture name")
    p.add_argument("--xi", help="letter map, id or a:b,c:d")
    p.add_argument("--out", help="CA or border file to write")
    p.add_argument("--order", type=int, default=4,
                   help="SFT cover order for sofic inputs")
    p.add_argument("--depth", type=int, default=4,
                   help="validation depth for the dispatchers")
    p.add_argument("--border", choices=["static", "dynamic", "xi"],
                   default="static", help="border family for kind=border")
    p.add_argument("--words", help="word-list file for kind=border")
    p.add_argument("--k", type=int, default=1, help="partner block length")
    p.add_argument("--pad", type=int, default=3, help="xi-border padding")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("gadget", help="four-layer controlled product polytrace")
    p.add_argument("--g", required=True, help="payload CA file")
    p.add_argument("--n", help="letter-map CA file (default: same as --g)")
    p.add_argument("--n2", required=True, help="control CA file")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--skip", type=int, default=0,
                   help="drop this many leading rows")
    p.set_defaults(func=_cmd_gadget)

    args = top.parse_args(argv)
    if args.command == "compile" and args.kind != "border" and not args.target:
        top.error("compile %s needs --in" % args.kind)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except CapacityError as e:
        print("capacity: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
