"""
Command-Line Entry Point

This module exposes the toolkit as subcommands over shift spec files:

1. classify: SFT / sofic / mixing verdicts with witnesses
2. entropy: certified generating-function entropy, Perron entropy, or both
3. words, spectrum, periodic: language statistics (optionally as CSV)
4. graph: follower automaton, optionally written as DOT
5. decompose: prefix · core · suffix factoring of a word
6. conjugacy check / synthesize / verify: comparing two ordered shifts

Reports are printed to standard output as JSON with sorted keys; logging
goes to standard error. Exit codes:

    0  success or affirmative verdict
    1  negative or refuted verdict
    2  unreadable input, parse or semantic error
    3  operation not supported for this shift
    4  undecidable under the declared bounds
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import config
from analysis import reports
from dynamics import conjugacy, entropy, presentation
from shifts import classify, language
from shifts.errors import (
    AlphabetSizeMismatch,
    EmptyGraph,
    EnumerationCapExceeded,
    InfinitudeUnknown,
    NotSFT,
    NotSofic,
    ShiftError,
    UnknownMembership,
    VariantMismatch,
)
from shifts.language import RunWord, ShiftSpec
from shifts.specfile import load_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_UNKNOWN = 4

UNSUPPORTED_ERRORS = (
    VariantMismatch,
    NotSFT,
    NotSofic,
    EmptyGraph,
    AlphabetSizeMismatch,
    EnumerationCapExceeded,
)
UNKNOWN_ERRORS = (UnknownMembership, InfinitudeUnknown)


def _emit(report: Dict[str, Any]) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _load(path: str) -> ShiftSpec:
    return load_spec(Path(path))


def cmd_classify(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    report = classify.classify_shift(shift)
    _emit(reports.classification_report(shift, report))
    return EXIT_UNKNOWN if report.has_unknown else EXIT_OK


def cmd_entropy(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    if args.truncate:
        shift = entropy.truncated_shift(shift, args.truncate)
        logger.info(f"Sets truncated to their first {args.truncate} members; entropy is a lower bound")

    genfun = perron = None
    if args.method in ('genfun', 'both'):
        genfun = entropy.solve_entropy(shift, args.tol)
    if args.method in ('perron', 'both'):
        graph = presentation.build_follower_automaton(shift)
        perron = presentation.spectral_entropy(graph, args.tol)
    _emit(reports.entropy_report(shift, genfun, perron, args.truncate))
    return EXIT_OK


def cmd_words(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    if args.count_only:
        _emit(reports.words_report(shift, args.n, None, language.count_words(shift, args.n)))
        return EXIT_OK
    words = language.enumerate_words(shift, args.n)
    if args.csv:
        reports.save_frame(reports.words_frame(words, shift.p), Path(args.csv))
    _emit(reports.words_report(shift, args.n, words, len(words)))
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    spectrum = language.length_spectrum(shift, args.L)
    if args.csv:
        reports.save_frame(reports.spectrum_frame(spectrum), Path(args.csv))
    _emit(reports.spectrum_report(shift, spectrum))
    return EXIT_OK


def cmd_periodic(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    counts = [language.periodic_points(shift, n) for n in range(1, args.n + 1)]
    if args.csv:
        reports.save_frame(reports.periodic_frame(counts), Path(args.csv))
    _emit(reports.periodic_report(shift, counts))
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    graph = presentation.build_follower_automaton(shift)
    dot_path = Path(args.dot) if args.dot else None
    if dot_path:
        dot_path.parent.mkdir(parents=True, exist_ok=True)
        dot_path.write_text(presentation.export_dot(graph), encoding="utf-8")
        logger.info(f"Saved DOT graph to {dot_path}")
    _emit(reports.graph_report(shift, graph, dot_path))
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    shift = _load(args.spec)
    word = RunWord.parse(args.word)
    parts = language.decompose(shift, word)
    _emit(reports.decomposition_report(shift, word, parts))
    return EXIT_OK


def cmd_conjugacy_check(args: argparse.Namespace) -> int:
    source, target = _load(args.source), _load(args.target)
    spectra = conjugacy.length_spectra_equal(source, target, args.L)
    periodic = conjugacy.periodic_counts_equal(source, target, args.N)
    offsets = conjugacy.sufficient_offsets(source, target) if source.p == target.p else None
    _emit(reports.conjugacy_check_report(source, target, spectra, periodic, offsets))

    if isinstance(offsets, conjugacy.OffsetVector):
        return EXIT_OK
    if not spectra.equal or not periodic.equal:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_conjugacy_synthesize(args: argparse.Namespace) -> int:
    source, target = _load(args.source), _load(args.target)
    offsets = conjugacy.sufficient_offsets(source, target)
    if isinstance(offsets, conjugacy.Refutation):
        logger.error(f"Cannot synthesize a block map: {offsets.reason}")
        return EXIT_NEGATIVE
    phi = conjugacy.synthesize_block_map(source, target, offsets)
    text = json.dumps(phi.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info(f"Saved block map to {out}")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_conjugacy_verify(args: argparse.Namespace) -> int:
    source, target = _load(args.source), _load(args.target)
    with open(args.map, encoding="utf-8") as f:
        phi = conjugacy.BlockMap.from_dict(json.load(f))
    evidence = conjugacy.verify_conjugacy_evidence(phi, source, target, args.n, args.N, args.L)
    _emit(reports.evidence_report(source, target, evidence))
    return EXIT_OK if evidence.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per analysis."""
    parser = argparse.ArgumentParser(description='Analyze S-limited shift spaces')
    parser.add_argument('-v', '--verbose', action='store_true', help='Log progress to stderr')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('classify', help='SFT, sofic and mixing verdicts')
    p.add_argument('spec', help='Shift spec file')
    p.set_defaults(handler=cmd_classify)

    p = commands.add_parser('entropy', help='Topological entropy (natural log)')
    p.add_argument('spec', help='Shift spec file')
    p.add_argument('--tol', type=float, default=config.DEFAULT_ENTROPY_TOL,
                   help=f'Absolute tolerance (default: {config.DEFAULT_ENTROPY_TOL})')
    p.add_argument('--method', choices=['genfun', 'perron', 'both'], default='genfun',
                   help='Generating-function root, Perron root of the automaton, or both')
    p.add_argument('--truncate', type=int, default=None,
                   help='Keep the first N members of every set (result is a lower bound)')
    p.set_defaults(handler=cmd_entropy)

    p = commands.add_parser('words', help='Words of length n in the language')
    p.add_argument('spec', help='Shift spec file')
    p.add_argument('-n', type=int, required=True, help='Word length')
    p.add_argument('--count-only', action='store_true', help='Report |B_n| without listing')
    p.add_argument('--csv', default=None, help='Also write the words to this CSV file')
    p.set_defaults(handler=cmd_words)

    p = commands.add_parser('spectrum', help='Core length spectrum c_1..c_L')
    p.add_argument('spec', help='Shift spec file')
    p.add_argument('-L', type=int, default=config.DEFAULT_SPECTRUM_LENGTH,
                   help=f'Truncation (default: {config.DEFAULT_SPECTRUM_LENGTH})')
    p.add_argument('--csv', default=None, help='Also write the spectrum to this CSV file')
    p.set_defaults(handler=cmd_spectrum)

    p = commands.add_parser('periodic', help='Periodic point counts for periods 1..n')
    p.add_argument('spec', help='Shift spec file')
    p.add_argument('-n', type=int, default=config.DEFAULT_PERIOD_BOUND,
                   help=f'Largest period (default: {config.DEFAULT_PERIOD_BOUND})')
    p.add_argument('--csv', default=None, help='Also write the counts to this CSV file')
    p.set_defaults(handler=cmd_periodic)

    p = commands.add_parser('graph', help='Follower-set automaton of a sofic shift')
    p.add_argument('spec', help='Shift spec file')
    p.add_argument('--dot', default=None, help='Write the automaton as Graphviz DOT to this file')
    p.set_defaults(handler=cmd_graph)

    p = commands.add_parser('decompose', help='Factor a word as prefix · core · suffix')
    p.add_argument('spec', help='Shift spec file')
    p.add_argument('--word', required=True, help='Word, flat ("1221") or runs ("1^1 2^2 1^1")')
    p.set_defaults(handler=cmd_decompose)

    conj = commands.add_parser('conjugacy', help='Compare two ordered shifts')
    actions = conj.add_subparsers(dest='action', required=True)

    p = actions.add_parser('check', help='Necessary invariants and the sufficient offset condition')
    p.add_argument('source', help='Domain spec file')
    p.add_argument('target', help='Target spec file')
    p.add_argument('-L', type=int, default=config.DEFAULT_SPECTRUM_LENGTH, help='Spectrum length')
    p.add_argument('-N', type=int, default=config.DEFAULT_PERIOD_BOUND, help='Largest period')
    p.set_defaults(handler=cmd_conjugacy_check)

    p = actions.add_parser('synthesize', help='Build the transition-point block map')
    p.add_argument('source', help='Domain spec file')
    p.add_argument('target', help='Target spec file')
    p.add_argument('--out', default=None, help='Write the block map JSON to this file')
    p.set_defaults(handler=cmd_conjugacy_synthesize)

    p = actions.add_parser('verify', help='Desk-scale conjugacy evidence for a block map')
    p.add_argument('source', help='Domain spec file')
    p.add_argument('target', help='Target spec file')
    p.add_argument('--map', required=True, help='Block map JSON file')
    p.add_argument('-n', type=int, default=config.DEFAULT_EVIDENCE_WORD_LENGTH, help='Word length')
    p.add_argument('-N', type=int, default=config.DEFAULT_PERIOD_BOUND, help='Largest period')
    p.add_argument('-L', type=int, default=config.DEFAULT_EVIDENCE_CORE_LENGTH, help='Core block length')
    p.set_defaults(handler=cmd_conjugacy_verify)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, dispatch, and map errors to exit codes.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.handler(args)
    except UNKNOWN_ERRORS as exc:
        logger.error(f"Undecidable under the declared bounds: {exc}")
        return EXIT_UNKNOWN
    except UNSUPPORTED_ERRORS as exc:
        logger.error(f"Unsupported for this shift: {exc}")
        return EXIT_UNSUPPORTED
    except (ShiftError, OSError, json.JSONDecodeError) as exc:
        logger.error(str(exc))
        return EXIT_INPUT


def main():
    """Main entry point for command-line execution."""
    sys.exit(run())


if __name__ == '__main__':
    main()
