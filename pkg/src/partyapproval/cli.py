'''Command-line front end: compute, check, generate, examples.

Exit codes: 0 ok or axiom satisfied, 1 axiom violated (or a golden row
failed), 2 bad input or an exceeded cap.
'''

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import axioms
from .catalogue import RULE_NAMES, resolve_rule
from .golden import run_golden
from .instances import (
    BALLOT_MODELS, EXAMPLES, paper_example, parse_graph, random_election, reduce_is_to_maxphragmen,
    reduce_is_to_pav,
)
from .model import (
    CapacityError, ConvergenceError, DomainError, Election, ElectionError, format_committee,
    parse_committee, parse_election, pav_score, serialize_election,
)

AXIOMS = ('jr', 'pjr', 'ejr', 'core', 'pr', 'monotone')
AUDIT = ('jr', 'pjr', 'ejr')


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'


def _read(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    return Path(path).read_text()


def _load(args) -> Election:
    election = parse_election(_read(args.input))
    if getattr(args, 'k', None) is not None:
        if args.k < 1:
            raise ElectionError('--k must be at least 1')
        election = election.with_k(args.k)
    return election


def _seat_map(election, committee):
    return {name: s for name, s in zip(election.parties, committee.seats) if s}


def _jsonable(witness):
    if witness is None:
        return None
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in witness.items()}


def _verdict_text(election, verdict):
    if verdict.passed:
        return f'{verdict.axiom}: PASS'
    w = verdict.witness or {}
    if 'party' in w:
        return f'{verdict.axiom}: FAIL ({election.parties[w["party"]]}, ℓ={w["level"]})'
    return f'{verdict.axiom}: FAIL'


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _rule(args, name):
    return resolve_rule(name, cap=args.cap, threads=args.threads,
                        seed=getattr(args, 'seed', None), trials=getattr(args, 'trials', None))


# ---------------------------------------------------------------- commands

def cmd_compute(args) -> int:
    election = _load(args)
    committee = _rule(args, args.rule)(election)
    score = pav_score(election, committee)
    payload = {
        'rule': args.rule, 'k': election.k,
        'committee': format_committee(election, committee),
        'seats': _seat_map(election, committee),
        'pav': _frac(score),
    }
    lines = [format_committee(election, committee), f'pav: {_frac(score)}']
    if args.audit:
        verdicts = [axioms.CHECKS[a](election, committee) for a in AUDIT]
        payload['audit'] = {v.axiom: {'passed': v.passed, 'witness': _jsonable(v.witness)} for v in verdicts}
        lines.append('  '.join(_verdict_text(election, v) for v in verdicts))
    _emit(args, payload, lines)
    return 0


def cmd_check(args) -> int:
    election = _load(args)
    if args.axiom == 'monotone':
        if not args.rule:
            raise ElectionError('--axiom monotone needs --rule')
        verdict = axioms.check_committee_monotonic(_rule(args, args.rule), election, args.k_max or election.k)
        committee = None
    else:
        if args.committee and args.rule:
            raise ElectionError('give --committee or --rule, not both')
        if args.committee:
            committee = parse_committee(election, args.committee)
            if committee.size != election.k:
                raise ElectionError(f'committee has {committee.size} seats, election has k={election.k}')
        elif args.rule:
            committee = _rule(args, args.rule)(election)
        else:
            raise ElectionError('--committee or --rule is required')
        if args.axiom == 'core':
            verdict = axioms.check_core_bruteforce(election, committee, **({'cap': args.cap} if args.cap else {}))
        else:
            verdict = axioms.CHECKS[args.axiom](election, committee)
    witness = _jsonable(verdict.witness)
    payload = {'axiom': verdict.axiom, 'passed': verdict.passed, 'witness': witness}
    if committee is not None:
        payload['committee'] = format_committee(election, committee)
    lines = [_verdict_text(election, verdict)]
    if not verdict.passed:
        lines.append(json.dumps(witness, ensure_ascii=False, sort_keys=True))
    _emit(args, payload, lines)
    return 0 if verdict.passed else 1


def cmd_generate(args) -> int:
    modes = sum(bool(x) for x in (args.example, args.reduction, args.random))
    if modes != 1:
        raise ElectionError('choose exactly one of --example, --reduction, --random')
    threshold = None
    if args.example:
        election = paper_example(args.example, args.k).election
    elif args.reduction:
        if not args.graph or args.t is None:
            raise ElectionError('--reduction needs --graph and --t')
        graph = parse_graph(_read(args.graph))
        if args.reduction == 'is-pav':
            election, threshold = reduce_is_to_pav(graph, args.t)
        else:
            election, threshold = reduce_is_to_maxphragmen(graph, args.t, require_cubic=not args.any_regular)
    else:
        if args.k is None:
            raise ElectionError('--random needs --k')
        election = random_election(args.seed, args.n, args.parties, args.k, args.model, args.density, args.blocks)
    text = serialize_election(election)
    if args.json:
        payload = {'ballots': text}
        if threshold is not None:
            payload['threshold'] = _frac(threshold)
        print(json.dumps(payload, sort_keys=True))
    else:
        if threshold is not None:
            label = 'pav score at least' if args.reduction == 'is-pav' else 'max load at most'
            print(f'# threshold: {label} {_frac(threshold)}')
        sys.stdout.write(text)
    return 0


def cmd_examples(args) -> int:
    if not args.all and not args.ids:
        for id_ in EXAMPLES:
            print(id_)
        return 0
    unknown = [i for i in args.ids if i not in EXAMPLES]
    if unknown:
        raise ElectionError(f'unknown example {unknown[0]!r}')
    rows = run_golden(None if args.all else args.ids)
    if args.json:
        print(json.dumps([
            {'example': r.example, 'check': r.check, 'passed': r.passed, 'detail': r.detail} for r in rows
        ], ensure_ascii=False))
    else:
        width = max(len(f'{r.example} {r.check}') for r in rows)
        for r in rows:
            print(f'{"PASS" if r.passed else "FAIL"}  {f"{r.example} {r.check}":<{width}}  {r.detail}')
        print(f'{sum(r.passed for r in rows)}/{len(rows)} passed')
    return 0 if all(r.passed for r in rows) else 1


# ---------------------------------------------------------------- parser

def _common(suppress: bool) -> argparse.ArgumentParser:
    # Global flags work before or after the subcommand.
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument('--json', action='store_true', default=default(False), help='machine-readable output')
    p.add_argument('--threads', type=int, default=default(1), help='worker processes for exhaustive rules')
    p.add_argument('--cap', type=int, default=default(None), help='enumeration cap for exhaustive searches')
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='partyapproval', parents=[_common(False)],
                                     description='Party-approval committee elections.')
    sub = parser.add_subparsers(dest='command', required=True)
    common = _common(True)

    p = sub.add_parser('compute', parents=[common], help='run a rule on a ballot file')
    p.add_argument('--rule', required=True, choices=RULE_NAMES, metavar='RULE',
                   help='one of: ' + ', '.join(RULE_NAMES))
    p.add_argument('--input', required=True, help="ballot file, or '-' for stdin")
    p.add_argument('--k', type=int, help='override the committee size')
    p.add_argument('--audit', action='store_true', help='also run the jr/pjr/ejr checkers')
    p.add_argument('--seed', type=int, help='sample random priority with this seed')
    p.add_argument('--trials', type=int, help='number of sampled orders for random priority')
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser('check', parents=[common], help='check an axiom')
    p.add_argument('--axiom', required=True, choices=AXIOMS)
    p.add_argument('--input', required=True, help="ballot file, or '-' for stdin")
    p.add_argument('--committee', help='seat list such as "p0=8,p2=4,p4=4"')
    p.add_argument('--rule', choices=RULE_NAMES, metavar='RULE', help='check the committee this rule returns')
    p.add_argument('--k', type=int, help='override the committee size')
    p.add_argument('--k-max', type=int, help='largest k for the monotonicity check (default: file k)')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('generate', parents=[common], help='write an election in ballot format')
    p.add_argument('--example', choices=tuple(EXAMPLES))
    p.add_argument('--reduction', choices=('is-pav', 'is-maxphragmen'))
    p.add_argument('--random', action='store_true')
    p.add_argument('--graph', help='edge-list file for --reduction')
    p.add_argument('--t', type=int, help='independent set size for --reduction')
    p.add_argument('--any-regular', action='store_true', help='accept any regular graph for is-maxphragmen')
    p.add_argument('--k', type=int)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--n', type=int, default=10, help='voters for --random')
    p.add_argument('--parties', type=int, default=4, help='parties for --random')
    p.add_argument('--model', choices=BALLOT_MODELS, default='uniform')
    p.add_argument('--density', type=float, default=0.4)
    p.add_argument('--blocks', type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('examples', parents=[common], help='run the worked-example golden table')
    p.add_argument('--all', action='store_true')
    p.add_argument('ids', nargs='*', metavar='ID', help='example ids (default: list them)')
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error('--threads must be at least 1')
    try:
        return args.func(args)
    except CapacityError as e:
        hint = f'; try {e.fallback}' if e.fallback and e.fallback not in str(e) else ''
        print(f'error: {e}{hint}', file=sys.stderr)
    except (ElectionError, DomainError, ConvergenceError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
    return 2


if __name__ == '__main__':
    sys.exit(main())
