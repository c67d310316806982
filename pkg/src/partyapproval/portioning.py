'''Portioning methods: approval ballots over parties to vote shares.

Conditional utilitarian, random priority and majoritarian portioning are
computed in exact rational arithmetic. Nash portioning maximizes a concave
log-welfare and is solved numerically.
'''

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .model import CapacityError, ConvergenceError, Election, Portioning


def conditional_utilitarian(election: Election) -> Portioning:
    '''Every voter backs her most-approved approved party (ties: lowest index).'''
    counts = election.approval_counts()
    mass = [0] * election.m
    for b in election.ballots:
        best = max(sorted(b.approved), key=lambda p: counts[p])
        mass[best] += b.count
    n = election.n
    return Portioning(tuple(Fraction(x, n) for x in mass))


def majoritarian(election: Election) -> Portioning:
    '''Repeatedly hand the largest remaining approval bloc to its party.

    In each round the active party with the most active approvers ``N_j`` gets
    share ``|N_j| / n``; that party and those voters become inactive.
    '''
    return Portioning(tuple(Fraction(size, election.n) for size in _majoritarian_blocs(election)))


def majoritarian_rounds(election: Election) -> list[tuple[int, int]]:
    '''``(party, bloc size)`` per round, in selection order.'''
    active_party = [True] * election.m
    active_voter = [True] * len(election.ballots)
    rounds = []
    while any(active_voter):
        support = [0] * election.m
        for c, b in enumerate(election.ballots):
            if active_voter[c]:
                for p in b.approved:
                    support[p] += b.count
        best = max((p for p in range(election.m) if active_party[p]), key=lambda p: (support[p], -p))
        rounds.append((best, support[best]))
        active_party[best] = False
        for c, b in enumerate(election.ballots):
            if best in b.approved:
                active_voter[c] = False
    return rounds


def _majoritarian_blocs(election: Election) -> list[int]:
    sizes = [0] * election.m
    for p, size in majoritarian_rounds(election):
        sizes[p] = size
    return sizes


def random_priority(election: Election, mode: str = 'exact', seed: int | None = None,
                    trials: int = 10000, max_voters: int = 10) -> Portioning:
    '''Average of the lexicographic-dictator portionings over voter orders.

    For a voter order the feasible party set starts as all parties and is
    intersected with each voter's ballot whenever the intersection is
    nonempty; the unit of mass is then spread uniformly over what remains.

    ``mode='exact'`` averages over all ``n!`` orders in rational arithmetic and
    refuses elections with more than ``max_voters`` voters. ``mode='sampled'``
    averages ``trials`` random orders drawn from ``random.Random(seed)``.
    '''
    if mode == 'exact':
        if election.n > max_voters:
            raise CapacityError(
                f'exact random priority enumerates n! orders; n={election.n} exceeds {max_voters}',
                cap=max_voters, fallback='sampled',
            )
        return Portioning(_rp_exact(election))
    if mode == 'sampled':
        return Portioning(_rp_sampled(election, seed, trials), exact=False)
    raise ValueError(f'unknown mode {mode!r}')


def _rp_exact(election: Election) -> tuple[Fraction, ...]:
    # The average over orders equals the expectation when the next voter is
    # drawn uniformly from those remaining, so memoize on (remaining, feasible).
    ballots = [b.approved for b in election.ballots]
    m = election.m

    @lru_cache(maxsize=None)
    def final_sets(remaining: tuple[int, ...], feasible: frozenset[int]):
        left = sum(remaining)
        if left == 0:
            return ((feasible, Fraction(1)),)
        acc: dict[frozenset[int], Fraction] = {}
        for c, count in enumerate(remaining):
            if not count:
                continue
            narrowed = feasible & ballots[c]
            nxt = narrowed if narrowed else feasible
            rest = remaining[:c] + (count - 1,) + remaining[c + 1:]
            for final, prob in final_sets(rest, nxt):
                acc[final] = acc.get(final, 0) + prob * Fraction(count, left)
        return tuple(acc.items())

    shares = [Fraction(0)] * m
    start = tuple(b.count for b in election.ballots)
    for final, prob in final_sets(start, frozenset(range(m))):
        for p in final:
            shares[p] += prob / len(final)
    return tuple(shares)


def rp_permutation_portioning(election: Election, order) -> list[Fraction]:
    '''Portioning for one explicit order of expanded voter approval sets.'''
    feasible = frozenset(range(election.m))
    for approved in order:
        narrowed = feasible & approved
        if narrowed:
            feasible = narrowed
    return [Fraction(1, len(feasible)) if p in feasible else Fraction(0) for p in range(election.m)]


def _rp_sampled(election: Election, seed, trials: int) -> tuple[float, ...]:
    rng = random.Random(seed)
    voters = election.expanded()
    tally: Counter = Counter()
    for _ in range(trials):
        rng.shuffle(voters)
        feasible = frozenset(range(election.m))
        for approved in voters:
            narrowed = feasible & approved
            if narrowed:
                feasible = narrowed
        for p in feasible:
            tally[p] += 1.0 / len(feasible)
    shares = [tally[p] / trials for p in range(election.m)]
    total = sum(shares)
    return tuple(s / total for s in shares)


def random_priority_bruteforce(election: Election) -> tuple[Fraction, ...]:
    '''Literal average over all ``n!`` voter permutations (slow; for checking).'''
    from itertools import permutations
    voters = election.expanded()
    shares = [Fraction(0)] * election.m
    for order in permutations(voters):
        for p, s in enumerate(rp_permutation_portioning(election, order)):
            shares[p] += s
    total = factorial(len(voters))
    return tuple(s / total for s in shares)


# ------------------------------------------------------------------- Nash

def nash_welfare(election: Election, shares) -> float:
    '''Log Nash welfare ``sum_i log(sum_{p in A_i} r(p))``; ``-inf`` if someone gets nothing.'''
    total = 0.0
    for b in election.ballots:
        u = sum(shares[p] for p in b.approved)
        if u <= 0:
            return float('-inf')
        total += b.count * np.log(u)
    return float(total)


def project_simplex(v: np.ndarray) -> np.ndarray:
    '''Euclidean projection onto the probability simplex.'''
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    rho = np.count_nonzero(u - css / idx > 0)
    theta = css[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def nash_kkt_residual(election: Election, shares) -> float:
    '''Scaled KKT violation for maximizing log Nash welfare on the simplex.

    At the optimum every party's gradient is at most ``n`` and equals ``n``
    on the support (the multiplier is always ``n`` since ``r . grad = n``).
    '''
    r = np.asarray(shares, dtype=float)
    A, w = _incidence(election)
    grad = A.T @ (w / (A @ r))
    n = w.sum()
    return float(max(np.max(grad - n, initial=0.0), np.max(r * np.abs(grad - n))) / n)


def _incidence(election: Election):
    A = np.zeros((len(election.ballots), election.m))
    for c, b in enumerate(election.ballots):
        A[c, list(b.approved)] = 1.0
    w = np.array([b.count for b in election.ballots], dtype=float)
    return A, w


def nash(election: Election, tolerance: float = 1e-9, max_iter: int = 200000) -> Portioning:
    '''Portioning maximizing the Nash welfare, by projected gradient ascent.

    Step sizes come from Armijo backtracking. Once the support has settled,
    a Newton step on the support usually finishes the job in a few
    iterations. Iteration stops when :func:`nash_kkt_residual` drops to
    ``tolerance``; otherwise :class:`ConvergenceError` is raised.
    '''
    if tolerance <= 0:
        raise ValueError('tolerance must be positive')
    A_full, w = _incidence(election)
    used = np.flatnonzero(A_full.sum(axis=0) > 0)
    A = A_full[:, used]
    n = w.sum()

    def value(r):
        u = A @ r
        if np.any(u <= 0):
            return -np.inf
        return float(w @ np.log(u))

    def gradient(r):
        return A.T @ (w / (A @ r))

    def residual(r):
        g = gradient(r)
        return float(max(np.max(g - n, initial=0.0), np.max(r * np.abs(g - n))) / n)

    r = np.full(len(used), 1.0 / len(used))
    step = 1.0 / n
    res = residual(r)
    for _ in range(max_iter):
        if res <= tolerance:
            break
        r_newton = _newton_polish(A, w, r)
        if r_newton is not None and residual(r_newton) < res:
            r = r_newton
            res = residual(r)
            continue
        f, g = value(r), gradient(r)
        step *= 2.0
        while True:
            cand = project_simplex(r + step * g)
            if value(cand) >= f + 1e-4 * g @ (cand - r):
                break
            step *= 0.5
            if step < 1e-300:
                raise ConvergenceError('line search failed', res)
        r = cand
        res = residual(r)
    else:
        raise ConvergenceError(f'Nash solver did not converge, residual {res:.3g}', res)
    full = np.zeros(election.m)
    full[used] = r
    full /= full.sum()
    return Portioning(tuple(float(x) for x in full), exact=False)


def _newton_polish(A, w, r):
    '''One Newton step for the equality-constrained problem on the current support.'''
    support = np.flatnonzero(r > 1e-12)
    if len(support) == 0:
        return None
    As = A[:, support]
    u = As @ r[support]
    g = As.T @ (w / u)
    H = -(As.T * (w / u ** 2)) @ As
    s = len(support)
    kkt = np.zeros((s + 1, s + 1))
    kkt[:s, :s] = H
    kkt[:s, s] = 1.0
    kkt[s, :s] = 1.0
    rhs = np.concatenate([-g, [0.0]])
    try:
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    except np.linalg.LinAlgError:
        return None
    d = sol[:s]
    out = r.copy()
    t = 1.0
    for _ in range(60):
        cand = r[support] + t * d
        if np.all(cand >= 0) and np.all(As @ cand > 0):
            out[support] = cand
            return out / out.sum()
        t *= 0.5
    return None
