'''Check every worked example against its bundled expectations.'''

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import axioms, portioning, rules
from .catalogue import resolve_rule
from .instances import EXAMPLES, paper_example
from .model import Committee

PORTIONING_KEYS = {
    'conditional_utilitarian': portioning.conditional_utilitarian,
    'random_priority': portioning.random_priority,
    'majoritarian': portioning.majoritarian,
}


@dataclass(frozen=True)
class GoldenRow:
    example: str
    check: str
    passed: bool
    detail: str
    seconds: float


def _sig(x, digits):
    return float(f'{float(x):.{digits}g}')


def _check(example, key, value):
    '''(passed, detail) for one expectation.'''
    e = example.election
    if key in PORTIONING_KEYS:
        got = PORTIONING_KEYS[key](e).shares
        return got == tuple(value), _fmt(got)
    if key == 'nash':
        target, tol = value
        got = portioning.nash(e).shares
        return all(abs(a - b) <= tol for a, b in zip(got, target)), ', '.join(f'{x:.4f}' for x in got)
    if key in rules.RULES or '+' in key:
        got = resolve_rule(key)(e).seats
        return got == tuple(value), str(got)
    if key.endswith('_fails'):
        rule = key[:-len('_fails')]
        committee = resolve_rule(rule)(e)
        verdict = axioms.CHECKS[value](e, committee)
        ok = not verdict.passed and axioms.validate_witness(e, committee, verdict)
        return ok, f'{value} {"FAIL" if not verdict.passed else "PASS"} on {committee.seats}'
    if key == 'ejr_violation':
        verdict = axioms.check_ejr(e, Committee(value['committee']))
        w = verdict.witness or {}
        ok = not verdict.passed and (w.get('party'), w.get('level')) == (value['party'], value['level'])
        return ok, f'party={w.get("party")} level={w.get("level")}'
    if key == 'core_violation':
        committee = Committee(value['committee'])
        verdict = axioms.check_core_bruteforce(e, committee)
        w = verdict.witness or {}
        size = sum(w.get('coalition', {}).values())
        dev = tuple(w.get('deviation', ()))
        ok = (not verdict.passed and axioms.validate_witness(e, committee, verdict)
              and size == value['coalition_size'] and sum(dev) == value['deviation_size'])
        return ok, f'|S|={size} T={dev}'
    if key == 'core_stable':
        results = {}
        for name in value:
            committee = resolve_rule(name)(e)
            results[name] = axioms.check_core_bruteforce(e, committee).passed
        return all(results.values()), ' '.join(f'{k}={"stable" if v else "blocked"}' for k, v in results.items())
    if key == 'mav_no_seat_for':
        got = rules.mav_exact(e)
        return got[value] == 0, str(got.seats)
    if key == 'n':
        return e.n == value, str(e.n)
    if key == 'seqpav_first_gains':
        got = tuple(gains[w] for w, gains in rules.seq_pav_rounds(e)[:len(value)])
        return got == tuple(value), ', '.join(map(str, got))
    if key.startswith('seqphragmen_') or key.startswith('phragmen-stv_'):
        return _check_rounds(e, key, value)
    raise KeyError(f'no golden check for {key!r}')


def _check_rounds(e, key, value):
    if key.startswith('seqphragmen_'):
        rounds, digits, field = rules.seq_phragmen_rounds(e), 5, key[len('seqphragmen_'):]
        close = lambda got, want: _sig(got, digits) == want
    else:
        rounds, field = rules.phragmen_stv_rounds(e), key[len('phragmen-stv_'):]
        close = lambda got, want: round(float(got), 2) == want
    if field == 'winners':
        got = tuple(e.parties[w] for w, _ in rounds)
        return got == tuple(value), ' '.join(got)
    if field == 'fifth_bid':
        w, bids = rounds[4]
        return bids[w] == value, str(bids[w])
    if field in ('winning_bids', 'winning_scores'):
        got = [vals[w] for w, vals in rounds]
        return all(close(g, x) for g, x in zip(got, value)) and len(got) == len(value), \
            ', '.join(f'{float(g):.5g}' for g in got)
    if field == 'table':
        bad = []
        for name, row in value.items():
            p = e.party_index(name)
            for i, want in enumerate(row):
                if not close(rounds[i][1][p], want):
                    bad.append(f'{name}@{i + 1}')
        return not bad, 'all cells match' if not bad else 'mismatch ' + ' '.join(bad)
    raise KeyError(f'no golden check for {key!r}')


def _fmt(shares):
    return ', '.join(str(x) if isinstance(x, Fraction) else f'{x:.4f}' for x in shares)


def run_golden(ids=None) -> list[GoldenRow]:
    rows = []
    for id_ in ids or EXAMPLES:
        example = paper_example(id_)
        for key, value in example.expected.items():
            t0 = time.perf_counter()
            try:
                passed, detail = _check(example, key, value)
            except Exception as exc:  # a crash is a failed row, not an aborted table
                passed, detail = False, f'{type(exc).__name__}: {exc}'
            rows.append(GoldenRow(id_, key, passed, detail, time.perf_counter() - t0))
    return rows
