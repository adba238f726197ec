"""
Command line entry point.

    python -m cli.main analyze --input f.txt --vars s,t,x,y [options]
    python -m cli.main golden [NAME|all]
"""

import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional

from cli.analysis import AnalysisConfig, run_analysis, with_overrides
from cli.golden import run_golden
from cli.render import render, render_error
from config import (ANALYSIS_CONFIG, EXIT_CODES, OUTPUT_FORMATS, PROFILE_ALIASES,
                    PROFILES)
from utils.errors import InvalidConfig, MilnorError
from utils.logger import get_logger


def _betti_pair(text: str):
    degree, sep, rank = text.partition('=')
    if not sep or not degree.strip().isdigit() or not rank.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected DEGREE=RANK, got {text!r}")
    return int(degree), int(rank)


class _ArgumentParser(argparse.ArgumentParser):
    """Argument errors raise InvalidConfig instead of exiting."""

    def error(self, message):
        raise InvalidConfig(f"{self.prog}: {message}", module='cli')


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='milnor-constraints',
                             description='Monodromy constraints from polar curves and Le cycles')
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', help='analyze one polynomial')
    analyze.add_argument('--config', help='JSON file with analysis settings; flags override it')
    analyze.add_argument('--input', help="file holding the polynomial, or '-' for stdin")
    analyze.add_argument('--vars', help='comma-separated variable order, e.g. s,t,x,y')
    analyze.add_argument('--z0', help='distinguished coordinate (default: first variable)')
    analyze.add_argument('--trace', type=int, dest='observed_trace', help='observed monodromy trace on H~^n')
    analyze.add_argument('--chi-link', type=int, dest='chi_link', help='Euler characteristic of the complex link')
    analyze.add_argument('--mu0-slice', type=int, dest='mu0_slice', help='rank of H~_(n-1) of the slice fiber')
    analyze.add_argument('--sigma-dim', type=int, dest='sigma_dim', help='dimension of the critical locus')
    analyze.add_argument('--slice-char', action='append', dest='slice_chars', metavar='FACTORSPEC',
                         help='further slice characteristic polynomial, repeatable')
    analyze.add_argument('--f0-char', dest='f0_char', metavar='FACTORSPEC',
                         help='characteristic polynomial of the slice f restricted to z0 = 0')
    analyze.add_argument('--betti', action='append', type=_betti_pair, metavar='DEGREE=RANK',
                         help='observed reduced Betti number, repeatable')
    analyze.add_argument('--hints', help='hint file for components and decompositions')
    analyze.add_argument('--profile', choices=PROFILES + tuple(PROFILE_ALIASES))
    analyze.add_argument('--format', choices=OUTPUT_FORMATS, dest='output_format')
    analyze.add_argument('--trunc-cap', type=int, dest='truncation_cap')

    golden = sub.add_parser('golden', help='run golden fixtures')
    golden.add_argument('name', nargs='?', default='all')
    golden.add_argument('--workers', type=int, default=None)
    return parser


def _read_polynomial(source: str) -> str:
    if source == '-':
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding='utf-8')
    except OSError as exc:
        raise InvalidConfig(f"cannot read input {source}: {exc}", module='cli') from exc


def config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    """
    Raises:
        InvalidConfig: missing polynomial or variables
    """
    overrides: Dict = {
        'z0': args.z0,
        'observed_trace': args.observed_trace,
        'chi_link': args.chi_link,
        'mu0_slice': args.mu0_slice,
        'sigma_dim': args.sigma_dim,
        'slice_chars': args.slice_chars,
        'f0_char': args.f0_char,
        'observed_betti': dict(args.betti) if args.betti else None,
        'hints': args.hints,
        'profile': args.profile,
        'output_format': args.output_format,
        'truncation_cap': args.truncation_cap,
    }
    if args.input:
        overrides['polynomial'] = _read_polynomial(args.input)
    if args.vars:
        overrides['variables'] = [v.strip() for v in args.vars.split(',') if v.strip()]

    if args.config:
        base = AnalysisConfig.from_file(args.config)
    else:
        if 'polynomial' not in overrides or 'variables' not in overrides:
            raise InvalidConfig("--input and --vars are required without --config", module='cli')
        base = AnalysisConfig(polynomial=overrides.pop('polynomial'), variables=overrides.pop('variables'))
    cfg = with_overrides(base, **overrides)
    cfg.validate()
    return cfg


def cmd_analyze(args: argparse.Namespace) -> int:
    output_format = args.output_format or ANALYSIS_CONFIG['output_format']
    try:
        cfg = config_from_args(args)
        output_format = cfg.output_format
        report = run_analysis(cfg)
    except MilnorError as exc:
        sys.stdout.write(render_error(exc, output_format))
        return EXIT_CODES[exc.category]
    sys.stdout.write(render(report, output_format))
    return EXIT_CODES['warnings'] if report.warnings else EXIT_CODES['clean']


def cmd_golden(args: argparse.Namespace) -> int:
    def progress(completed, total, name, passed):
        status = "✓" if passed else "✗"
        print(f"  [{completed}/{total}] {status} {name}")

    try:
        summary = run_golden(args.name, progress_callback=progress, max_workers=args.workers)
    except MilnorError as exc:
        sys.stdout.write(render_error(exc, 'text'))
        return EXIT_CODES[exc.category]

    for result in summary.results:
        if not result.passed:
            print(f"\n{result.name}:")
            for line in result.diff:
                print(f"  {line}")
    print(f"\nResult: {summary.passed} passed, {summary.failed} failed")
    return EXIT_CODES['clean'] if summary.ok else EXIT_CODES['analysis']


def main(argv: Optional[List[str]] = None) -> int:
    get_logger()
    try:
        args = build_parser().parse_args(argv)
    except MilnorError as exc:
        sys.stdout.write(render_error(exc, 'text'))
        return EXIT_CODES[exc.category]
    if args.command == 'analyze':
        return cmd_analyze(args)
    return cmd_golden(args)


if __name__ == '__main__':
    sys.exit(main())
