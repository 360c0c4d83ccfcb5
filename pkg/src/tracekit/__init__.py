"""Trace languages of cellular automata: engines, compilers, and checks.

The package follows the column view of a cellular automaton: run it and
read what a single cell (or a narrow strip) sees over time.  ``trace``
computes those column languages with interchangeable engines, ``subshift``
holds the symbolic-dynamics side (SFTs, sofic graphs, their predicates),
``freeze`` and ``compilers`` build automata whose traces realize a chosen
target, ``gadget`` couples automata so that trace questions encode
undecidable ones, and ``verify``/``cli`` wrap everything in reports with
exit codes.
"""

from .core import (Alphabet, CapacityError, CellularAutomaton, Configuration,
                   PartialCA, PeriodicConfiguration, pack_word)
from .subshift import (DeterministicOrbit, MacrocellSft, Sft, SoficGraph,
                       equal_up_to, ultimately_coincide)
from .trace import (SpaceTimeDiagram, TraceLanguage, column_of_uniform,
                    diagram, limit_trace_approx, periodic_orbit_column,
                    polytrace, trace, trace_naive, trace_transducer)
from .freeze import (Border, OverlapWitness, dynamic_border, forever_separated,
                     is_freezing, static_border, xi_border)
from .compilers import (CompiledArtifact, NotUltimatelyTraceable,
                        UnsupportedOutcome, border_compose, full_trace_compile,
                        nilpotent_partial_ca, partial_trace_compile,
                        polytrace_to_trace, sft_polytracer, totalize,
                        ultimate_trace_compile)
from .gadget import (ProbeResult, alignment_depth, controlled_product,
                     four_layer_gadget, is_spreading_set, mortality_bounded,
                     nilpotency_bounded)
from .semifinite import SemifiniteAutomaton, extend_onesided, sf_trace
from .verify import (FAIL, PARTIAL, PASS, Report, check_trace, cross_check,
                     merge_reports, run_witnesses)
from .formats import (ParseError, emit_border, emit_ca, emit_subshift,
                      emit_words, parse_ca, parse_subshift, parse_words)
from .fixtures import Fixture, fixtures

__all__ = [
    "Alphabet", "CapacityError", "CellularAutomaton", "Configuration",
    "PartialCA", "PeriodicConfiguration", "pack_word",
    "DeterministicOrbit", "MacrocellSft", "Sft", "SoficGraph",
    "equal_up_to", "ultimately_coincide",
    "SpaceTimeDiagram", "TraceLanguage", "column_of_uniform", "diagram",
    "limit_trace_approx", "periodic_orbit_column", "polytrace", "trace",
    "trace_naive", "trace_transducer",
    "Border", "OverlapWitness", "dynamic_border", "forever_separated",
    "is_freezing", "static_border", "xi_border",
    "CompiledArtifact", "NotUltimatelyTraceable", "UnsupportedOutcome",
    "border_compose", "full_trace_compile", "nilpotent_partial_ca",
    "partial_trace_compile", "polytrace_to_trace", "sft_polytracer",
    "totalize", "ultimate_trace_compile",
    "ProbeResult", "alignment_depth", "controlled_product",
    "four_layer_gadget", "is_spreading_set", "mortality_bounded",
    "nilpotency_bounded",
    "SemifiniteAutomaton", "extend_onesided", "sf_trace",
    "FAIL", "PARTIAL", "PASS", "Report", "check_trace", "cross_check",
    "merge_reports", "run_witnesses",
    "ParseError", "emit_border", "emit_ca", "emit_subshift", "emit_words",
    "parse_ca", "parse_subshift", "parse_words",
    "Fixture", "fixtures",
]

__version__ = "0.1.0"
