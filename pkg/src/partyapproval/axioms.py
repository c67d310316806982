'''Representation axioms with witnesses.

Coalitions are reported as ``{ballot class index: voter count}``. Every
threshold ``|S| >= l * n / k`` is evaluated as ``|S| * k >= l * n``.

Polynomial checkers: :func:`check_jr`, :func:`check_ejr`,
:func:`check_pjr_mincut`, :func:`check_pr`. Exhaustive ones, meant for
small instances: :func:`check_pjr_bruteforce`, :func:`check_ejr_bruteforce`,
:func:`check_core_bruteforce`.
'''

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from .flow import FlowNetwork
from .model import CapacityError, Committee, DomainError, Election, quota, utilities
from .rules import DEFAULT_CAP


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: dict | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.passed


def _coalition_size(coalition: dict) -> int:
    return sum(coalition.values())


def check_jr(election: Election, committee: Committee) -> AxiomVerdict:
    '''Fails iff some party has at least ``n/k`` approvers with zero utility.'''
    n, k = election.n, election.k
    u = utilities(election, committee)
    for p in range(election.m):
        coalition = {c: b.count for c, b in enumerate(election.ballots) if p in b.approved and u[c] == 0}
        if coalition and _coalition_size(coalition) * k >= n:
            return AxiomVerdict('jr', False, {'party': p, 'level': 1, 'coalition': coalition})
    return AxiomVerdict('jr', True)


def check_ejr(election: Election, committee: Committee) -> AxiomVerdict:
    '''For every party ``p`` and level ``l``, count ``p``'s approvers with utility below ``l``.

    A violation exists iff such a count reaches ``l * n / k``.
    '''
    n, k = election.n, election.k
    u = utilities(election, committee)
    for p in range(election.m):
        sup = election.supporters(p)
        for level in range(1, k + 1):
            coalition = {c: election.ballots[c].count for c in sup if u[c] < level}
            if _coalition_size(coalition) * k >= level * n:
                return AxiomVerdict('ejr', False, {'party': p, 'level': level, 'coalition': coalition})
    return AxiomVerdict('ejr', True)


def _represented(election: Election, committee: Committee, classes) -> int:
    parties = set()
    for c in classes:
        parties |= election.ballots[c].approved
    return sum(committee[p] for p in parties)


def check_pjr_mincut(election: Election, committee: Committee) -> AxiomVerdict:
    '''PJR via minimizing ``n*s(S) - k*|S|`` over ``S`` within each party's supporters.

    ``s(S)`` counts seats of parties approved by someone in ``S``. The
    minimization is a project-selection min-cut: source -> class with
    capacity ``k * count``, class -> approved party unbounded, party -> sink
    with capacity ``n * W(p)``. The minimum equals ``cut - k * |N_p|`` and a
    violation exists iff it is at most ``-n``.
    '''
    n, k, m = election.n, election.k, election.m
    for p in range(election.m):
        sup = election.supporters(p)
        nb = len(sup)
        net = FlowNetwork(nb + m + 2)
        s, t = nb + m, nb + m + 1
        for j, c in enumerate(sup):
            b = election.ballots[c]
            net.add_arc(s, j, k * b.count)
            for q in sorted(b.approved):
                net.add_arc(j, nb + q)
        for q in range(m):
            if committee[q]:
                net.add_arc(nb + q, t, n * committee[q])
        cut = net.max_flow(s, t)
        total = k * sum(election.ballots[c].count for c in sup)
        if cut - total <= -n:
            side = net.source_side(s)
            coalition = {c: election.ballots[c].count for j, c in enumerate(sup) if j in side}
            size = _coalition_size(coalition)
            return AxiomVerdict('pjr', False, {
                'party': p, 'level': quota(size, n, k), 'coalition': coalition,
                'represented': _represented(election, committee, coalition),
            })
    return AxiomVerdict('pjr', True)


check_pjr = check_pjr_mincut


def _voter_subsets(election: Election, classes, max_voters: int):
    '''All nonempty voter subsets of the given classes, as per-class counts over expanded voters.'''
    voters = [c for c in classes for _ in range(election.ballots[c].count)]
    if len(voters) > max_voters:
        raise CapacityError(f'{len(voters)} voters exceed the brute-force limit {max_voters}', cap=max_voters)
    for mask in range(1, 1 << len(voters)):
        coalition: dict[int, int] = {}
        for bit, c in enumerate(voters):
            if mask >> bit & 1:
                coalition[c] = coalition.get(c, 0) + 1
        yield coalition


def check_pjr_bruteforce(election: Election, committee: Committee, max_voters: int = 14) -> AxiomVerdict:
    '''Direct scan: some ``S`` sharing a party with ``s(S) < q(S)``.'''
    n, k = election.n, election.k
    for p in range(election.m):
        for coalition in _voter_subsets(election, election.supporters(p), max_voters):
            size = _coalition_size(coalition)
            rep = _represented(election, committee, coalition)
            if rep < quota(size, n, k):
                return AxiomVerdict('pjr', False, {
                    'party': p, 'level': quota(size, n, k), 'coalition': coalition, 'represented': rep,
                })
    return AxiomVerdict('pjr', True)


def check_ejr_bruteforce(election: Election, committee: Committee, max_voters: int = 14) -> AxiomVerdict:
    '''Scan every voter subset with a common approved party and all utilities below ``q(S)``.'''
    n, k = election.n, election.k
    u = utilities(election, committee)
    everyone = range(len(election.ballots))
    for coalition in _voter_subsets(election, everyone, max_voters):
        common = frozenset.intersection(*(election.ballots[c].approved for c in coalition))
        if not common:
            continue
        q = quota(_coalition_size(coalition), n, k)
        if all(u[c] < q for c in coalition):
            return AxiomVerdict('ejr', False, {'party': min(common), 'level': q, 'coalition': coalition})
    return AxiomVerdict('ejr', True)


def check_core_bruteforce(election: Election, committee: Committee, cap: int = DEFAULT_CAP) -> AxiomVerdict:
    '''Enumerate deviations ``T`` by size, then lexicographically.

    For a fixed ``T`` the best coalition is everyone who strictly gains, so
    ``T`` of size ``l`` blocks iff ``l <= q(gainers)``. Only parties that
    someone approves are used in ``T``.
    '''
    n, k = election.n, election.k
    approved = sorted(set().union(*(b.approved for b in election.ballots)))
    total = sum(comb(len(approved) + size - 1, size) for size in range(1, k + 1))
    if total > cap:
        raise CapacityError(f'{total} deviations exceed the enumeration cap {cap}', cap=cap)
    u = utilities(election, committee)
    for size in range(1, k + 1):
        for combo in combinations_with_replacement(approved, size):
            dev = Committee.from_parties(election.m, combo)
            coalition = {
                c: b.count for c, (b, uw) in enumerate(zip(election.ballots, u))
                if sum(dev[p] for p in b.approved) > uw
            }
            if coalition and size <= quota(_coalition_size(coalition), n, k):
                return AxiomVerdict('core', False, {'coalition': coalition, 'deviation': dev.seats})
    return AxiomVerdict('core', True)


check_core = check_core_bruteforce


def check_pr(election: Election, committee: Committee) -> AxiomVerdict:
    '''Perfect representation: each seat gets exactly ``n/k`` voters who approve it.'''
    n, k = election.n, election.k
    if n % k:
        raise DomainError(f'perfect representation needs k | n (n={n}, k={k})')
    share = n // k
    m, nb = election.m, len(election.ballots)
    net = FlowNetwork(m + nb + 2)
    s, t = m + nb, m + nb + 1
    for c, b in enumerate(election.ballots):
        net.add_arc(s, c, b.count)
        for p in sorted(b.approved):
            if committee[p]:
                net.add_arc(c, nb + p)
    for p in range(m):
        if committee[p]:
            net.add_arc(nb + p, t, share * committee[p])
    flow = net.max_flow(s, t)
    if flow == n:
        return AxiomVerdict('pr', True)
    return AxiomVerdict('pr', False, {'assigned': flow, 'voters': n})


def check_committee_monotonic(rule, election: Election, k_max: int) -> AxiomVerdict:
    '''Run ``rule`` for ``k = 1..k_max``; fail at the first seat lost when ``k`` grows.'''
    previous = None
    for k in range(1, k_max + 1):
        current = rule(election.with_k(k))
        if previous is not None and not previous.issubset(current):
            return AxiomVerdict('monotone', False, {
                'k': k - 1, 'smaller': previous.seats, 'larger': current.seats,
            })
        previous = current
    return AxiomVerdict('monotone', True)


def validate_witness(election: Election, committee: Committee, verdict: AxiomVerdict) -> bool:
    '''Re-derive a failing verdict's violation from the axiom's definition.'''
    w = verdict.witness
    n, k = election.n, election.k
    if verdict.passed or w is None:
        return False
    if verdict.axiom == 'monotone':
        return not Committee(w['smaller']).issubset(Committee(w['larger']))
    if verdict.axiom == 'pr':
        return w['assigned'] < w['voters']
    coalition = {int(c): x for c, x in w['coalition'].items()}
    if any(x < 1 or x > election.ballots[c].count for c, x in coalition.items()):
        return False
    size = _coalition_size(coalition)
    u = utilities(election, committee)
    if verdict.axiom == 'core':
        dev = Committee(w['deviation'])
        gains = all(sum(dev[p] for p in election.ballots[c].approved) > u[c] for c in coalition)
        return size > 0 and gains and dev.size <= quota(size, n, k)
    p = w['party']
    if not all(p in election.ballots[c].approved for c in coalition):
        return False
    if verdict.axiom == 'jr':
        return size * k >= n and all(u[c] == 0 for c in coalition)
    if verdict.axiom == 'ejr':
        level = w['level']
        return level >= 1 and size * k >= level * n and all(u[c] < level for c in coalition)
    if verdict.axiom == 'pjr':
        return _represented(election, committee, coalition) < quota(size, n, k)
    raise ValueError(f'unknown axiom {verdict.axiom!r}')


CHECKS = {
    'jr': check_jr,
    'pjr': check_pjr_mincut,
    'ejr': check_ejr,
    'core': check_core_bruteforce,
    'pr': check_pr,
}

__all__ = [
    'AxiomVerdict', 'check_jr', 'check_ejr', 'check_ejr_bruteforce', 'check_pjr', 'check_pjr_mincut',
    'check_pjr_bruteforce', 'check_core', 'check_core_bruteforce', 'check_pr', 'check_committee_monotonic',
    'validate_witness', 'CHECKS',
]
