#!/usr/bin/env python
"""
Command-line front end: verify claim files, expand expressions, scan for
congruences and run the built-in congruence families.

Exit status is 0 when every claim passes, 1 when one fails and 2 on usage,
I/O or parse errors.
"""

import argparse
import json
import sys

from plugins.module_utils.claim_parser import ClaimParser, SeriesEvaluator
from plugins.module_utils.claim_runner import DEFAULT_IDENTITY_ORDER, FAMILIES, ClaimRunner
from plugins.module_utils.congruence import (
    DEFAULT_CONGRUENCE_ORDER,
    MIN_WITNESSES,
    CongruenceVerifier,
    SeriesCache,
)
from plugins.module_utils.qseries_errors import QSeriesError
from plugins.module_utils.series_core import AUTO, MULTIPLICATION_METHODS, reduce_mod

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def stderr_logger(enabled):
    if not enabled:
        return None

    def log(message):
        print(f"DEBUG: {message}", file=sys.stderr)
    return log


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def moduli_list(text):
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 2 for v in values):
        raise argparse.ArgumentTypeError("moduli must be integers >= 2")
    return values


def build_parser():
    parser = argparse.ArgumentParser(prog='qid', description="Verify q-series identities and partition congruences")
    parser.add_argument('--debug', action='store_true', help="log progress to stderr")
    parser.add_argument('--multiplication', choices=MULTIPLICATION_METHODS, default=AUTO)
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help="verify every claim in a claim file")
    verify.add_argument('file')
    verify.add_argument('--order', type=positive_int, help="order for every claim")
    verify.add_argument('--identity-order', type=positive_int, default=DEFAULT_IDENTITY_ORDER)
    verify.add_argument('--congruence-order', type=positive_int, default=DEFAULT_CONGRUENCE_ORDER)
    verify.add_argument('--min-witnesses', type=positive_int, default=MIN_WITNESSES)
    verify.add_argument('--workers', type=positive_int, default=1)
    verify.add_argument('--json', action='store_true', help="print the report as JSON")

    expand = commands.add_parser('expand', help="print the coefficients of an expression")
    expand.add_argument('expression')
    expand.add_argument('--order', type=positive_int, required=True)
    expand.add_argument('--mod', type=int, dest='modulus')

    scan = commands.add_parser('scan', help="search a catalog series for congruences")
    scan.add_argument('--series', required=True)
    scan.add_argument('--max-step', type=positive_int, required=True)
    scan.add_argument('--moduli', type=moduli_list, required=True)
    scan.add_argument('--order', type=positive_int, default=DEFAULT_CONGRUENCE_ORDER)
    scan.add_argument('--json', action='store_true')

    family = commands.add_parser('family', help="verify a built-in congruence family")
    family.add_argument('family', choices=FAMILIES)
    family.add_argument('--kmax', type=positive_int, required=True)
    family.add_argument('--order', type=positive_int, default=DEFAULT_CONGRUENCE_ORDER)
    family.add_argument('--min-witnesses', type=positive_int, default=MIN_WITNESSES)
    family.add_argument('--json', action='store_true')
    return parser


def print_report(report, as_json, out):
    if as_json:
        document = report.to_dict()
        out.write(json.dumps({
            'order': document['order'],
            'claims': [
                {key: claim[key] for key in ('label', 'kind', 'status', 'checked', 'witness')}
                for claim in document['claims']
            ],
            'passed': document['passed'],
        }, indent=2) + '\n')
        return
    for claim in report.claims:
        line = f"{claim.status.upper():5}  {claim.label}  (checked {claim.checked})"
        if claim.witness:
            w = claim.witness
            line += f"  first mismatch at {w.index}: {w.lhs} != {w.rhs}"
        if claim.message:
            line += f"  {claim.message}"
        out.write(line + '\n')
    out.write(report.summary() + '\n')


def cmd_verify(args, log, out):
    with open(args.file, encoding='utf-8') as handle:
        text = handle.read()
    claim_file = ClaimParser(debug_callback=log).parse(text)
    runner = ClaimRunner(identity_order=args.identity_order, congruence_order=args.congruence_order,
                         min_witnesses=args.min_witnesses, multiplication=args.multiplication,
                         workers=args.workers, debug_callback=log)
    report = runner.run(claim_file, args.order)
    print_report(report, args.json, out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_expand(args, log, out):
    if args.modulus is not None and args.modulus < 2:
        raise ValueError(f"--mod must be at least 2, got {args.modulus}")
    expr = ClaimParser(debug_callback=log).parse_expression(args.expression)
    series = SeriesEvaluator(multiplication=args.multiplication, debug_callback=log).evaluate(expr, args.order)
    if args.modulus is not None:
        series = reduce_mod(series, args.modulus)
    for exponent in range(min(0, series.valuation), series.order):
        out.write(f"{exponent}\t{series.coefficient(exponent)}\n")
    return EXIT_OK


def cmd_scan(args, log, out):
    verifier = CongruenceVerifier(SeriesCache(), debug_callback=log)
    hits = verifier.scan_congruences(args.series, args.max_step, args.moduli, args.order)
    if args.json:
        out.write(json.dumps({'order': args.order, 'series': args.series,
                              'hits': [hit.to_dict() for hit in hits]}, indent=2) + '\n')
    else:
        for hit in hits:
            out.write(f"{args.series}({hit.step}n+{hit.offset}) == 0 mod {hit.modulus}"
                      f"  [{hit.status}, {hit.checked} indices]\n")
        out.write(f"{len(hits)} congruences\n")
    return EXIT_OK


def cmd_family(args, log, out):
    runner = ClaimRunner(min_witnesses=args.min_witnesses, multiplication=args.multiplication,
                         debug_callback=log)
    report = runner.run_family(args.family, args.kmax, args.order)
    print_report(report, args.json, out)
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    'verify': cmd_verify,
    'expand': cmd_expand,
    'scan': cmd_scan,
    'family': cmd_family,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    log = stderr_logger(args.debug)
    try:
        return COMMANDS[args.command](args, log, out)
    except (QSeriesError, OSError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
