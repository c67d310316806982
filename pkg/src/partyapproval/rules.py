'''Candidate-approval rules applied to party-approval elections.

Each rule is computed directly on seat vectors. That matches running the
rule on the clone embedding, because all clones of a party are
interchangeable and candidate order is party-major. Ties go to the lowest
party index. Among committees, the winner is the one whose sorted
party-index sequence is lexicographically smallest (this favours low-index
parties). Exhaustive rules enumerate multisets in that order and keep the
first optimum.

Scores are exact rationals throughout, except where a rule is defined by a
real-valued optimum that is rational anyway (MaxPhragmén loads), which is
also computed exactly.
'''

from __future__ import annotations

from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations_with_replacement
from math import ceil, comb

from .flow import FlowNetwork
from .model import CapacityError, Committee, Election, _harmonics, utilities

DEFAULT_CAP = 5_000_000


# ------------------------------------------------------------ exhaustive search

def committee_count(m: int, k: int) -> int:
    '''Number of size-``k`` multisets over ``m`` parties.'''
    return comb(m + k - 1, k)


def _check_cap(election: Election, cap: int, fallback: str | None):
    count = committee_count(election.m, election.k)
    if count > cap:
        hint = f'; use {fallback} instead' if fallback else ''
        raise CapacityError(
            f'{count} committees exceed the enumeration cap {cap}{hint}', cap=cap, fallback=fallback,
        )


def _search_chunk(election: Election, objective, first: int):
    '''Best (key, combo) among combos starting with party ``first``; earliest wins ties.'''
    best_key, best = None, None
    for rest in combinations_with_replacement(range(first, election.m), election.k - 1):
        combo = (first,) + rest
        key = objective(election, combo, best_key)
        if key is not None and (best_key is None or key > best_key):
            best_key, best = key, combo
    return best_key, best


def _search(election: Election, objective, cap: int, threads: int, fallback: str | None) -> Committee:
    '''Maximize ``objective`` over all size-k committees.

    ``objective(election, combo, incumbent)`` gets a sorted party-index
    tuple and returns a comparable key, or ``None`` when it can prove the
    combo is strictly worse than the incumbent key.
    '''
    _check_cap(election, cap, fallback)
    if election.k == 0:
        return Committee.empty(election.m)
    firsts = range(election.m)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_search_chunk, [election] * election.m, [objective] * election.m, firsts))
    else:
        results = [_search_chunk(election, objective, f) for f in firsts]
    best_key, best = None, None
    for key, combo in results:
        if key is not None and (best_key is None or key > best_key):
            best_key, best = key, combo
    return Committee.from_parties(election.m, best)


def _combo_utils(election: Election, combo) -> list[int]:
    seats = [0] * election.m
    for p in combo:
        seats[p] += 1
    return [sum(seats[p] for p in b.approved) for b in election.ballots]


def _pav_objective(election, combo, incumbent):
    h = _harmonics(election.k)
    return sum((b.count * h[u] for b, u in zip(election.ballots, _combo_utils(election, combo))), Fraction(0))


def _cc_objective(election, combo, incumbent):
    return sum(b.count for b, u in zip(election.ballots, _combo_utils(election, combo)) if u > 0)


def _mav_objective(election, combo, incumbent):
    k = election.k
    return -max(k * (len(b.approved) + 1) - 2 * u for b, u in zip(election.ballots, _combo_utils(election, combo)))


def _monroe_objective(election, combo, incumbent):
    return monroe_score(election, Committee.from_parties(election.m, combo))


def _maxphragmen_objective(election, combo, incumbent):
    committee = Committee.from_parties(election.m, combo)
    bound = None if incumbent is None else -incumbent
    load = max_load(election, committee, upper=bound)
    return None if load is None else -load


def pav_exact(election: Election, cap: int = DEFAULT_CAP, threads: int = 1) -> Committee:
    '''Committee maximizing the PAV score, by enumeration.'''
    return _search(election, _pav_objective, cap, threads, 'lspav')


def cc_av_exact(election: Election, cap: int = DEFAULT_CAP, threads: int = 1) -> Committee:
    '''Chamberlin-Courant: maximize the number of voters with at least one approved seat.'''
    return _search(election, _cc_objective, cap, threads, 'greedyav')


def mav_exact(election: Election, cap: int = DEFAULT_CAP, threads: int = 1) -> Committee:
    '''Minimax approval voting on the clone embedding.

    With ``k`` clones per party the Hamming distance between a candidate
    committee and voter ``i``'s ballot is ``k * (|A_i| + 1) - 2 * u_i``.
    '''
    return _search(election, _mav_objective, cap, threads, None)


def monroe_exact(election: Election, cap: int = DEFAULT_CAP, threads: int = 1) -> Committee:
    return _search(election, _monroe_objective, cap, threads, 'greedymonroe')


def max_phragmen_bruteforce(election: Election, cap: int = DEFAULT_CAP, threads: int = 1) -> Committee:
    '''Committee whose best load distribution has the smallest maximal voter load.

    Ties are broken lexicographically only.
    '''
    return _search(election, _maxphragmen_objective, cap, threads, 'seqphragmen')


# -------------------------------------------------------------------- PAV

def seq_pav_rounds(election: Election) -> list[tuple[int, list[Fraction]]]:
    '''Per round: ``(winner, marginal PAV gain of every party)``.'''
    u = [0] * len(election.ballots)
    rounds = []
    for _ in range(election.k):
        gains = [Fraction(0)] * election.m
        for c, b in enumerate(election.ballots):
            g = Fraction(b.count, u[c] + 1)
            for p in b.approved:
                gains[p] += g
        best = max(range(election.m), key=lambda p: (gains[p], -p))
        for c, b in enumerate(election.ballots):
            if best in b.approved:
                u[c] += 1
        rounds.append((best, gains))
    return rounds


def seq_pav(election: Election) -> Committee:
    '''Greedy PAV: add the seat with the largest marginal PAV gain, k times.'''
    return Committee.from_parties(election.m, (w for w, _ in seq_pav_rounds(election)))


def rev_seq_pav(election: Election) -> Committee:
    '''Start from all ``m * k`` clones and drop the cheapest seat until ``k`` remain.

    Removal ties drop a seat of the highest-indexed party, so lower indices
    are favoured as everywhere else.
    '''
    k = election.k
    seats = [k] * election.m
    u = [k * len(b.approved) for b in election.ballots]
    for _ in range(election.m * k - k):
        losses = [Fraction(0)] * election.m
        for c, b in enumerate(election.ballots):
            g = Fraction(b.count, u[c]) if u[c] else Fraction(0)
            for p in b.approved:
                losses[p] += g
        held = [p for p in range(election.m) if seats[p] > 0]
        worst = min(held, key=lambda p: (losses[p], -p))
        seats[worst] -= 1
        for c, b in enumerate(election.ballots):
            if worst in b.approved:
                u[c] -= 1
    return Committee(tuple(seats))


def ls_pav_epsilon(k: int) -> Fraction:
    '''Swap threshold ``1 / ((1 + 2(k-1)) (k-1) k)`` that makes local search core-stable.'''
    if k < 2:
        raise ValueError('threshold is defined for k >= 2')
    return Fraction(1, (1 + 2 * (k - 1)) * (k - 1) * k)


def ls_pav_search(election: Election, epsilon: Fraction | None = None) -> tuple[Committee, int, Fraction]:
    '''Local-search PAV, returning ``(committee, swaps, epsilon)``.

    Starts from :func:`seq_pav` and applies the first single-seat swap, in
    ``(p_out, p_in)`` order, that raises the PAV score by at least
    ``epsilon``, until none exists.
    '''
    k = election.k
    if epsilon is None:
        epsilon = ls_pav_epsilon(k)
    seats = list(seq_pav(election).seats)
    u = utilities(election, Committee(tuple(seats)))
    ballots = election.ballots
    swaps = 0
    while True:
        swapped = False
        for p_out in range(election.m):
            if not seats[p_out]:
                continue
            for p_in in range(election.m):
                if p_in == p_out:
                    continue
                delta = Fraction(0)
                for c, b in enumerate(ballots):
                    has_out = p_out in b.approved
                    has_in = p_in in b.approved
                    if has_out and not has_in:
                        delta -= Fraction(b.count, u[c])
                    elif has_in and not has_out:
                        delta += Fraction(b.count, u[c] + 1)
                if delta >= epsilon:
                    seats[p_out] -= 1
                    seats[p_in] += 1
                    for c, b in enumerate(ballots):
                        u[c] += (p_in in b.approved) - (p_out in b.approved)
                    swaps += 1
                    swapped = True
                    break
            if swapped:
                break
        if not swapped:
            return Committee(tuple(seats)), swaps, epsilon


def ls_pav(election: Election) -> Committee:
    '''Polynomial-time core-stable committee via thresholded local search.'''
    if election.k <= 1:
        return pav_exact(election)
    return ls_pav_search(election)[0]


def ls_pav_swap_budget(election: Election, epsilon: Fraction) -> int:
    '''``ceil(n * H_k / epsilon)``, an upper bound on the number of swaps.'''
    return ceil(election.n * _harmonics(election.k)[election.k] / epsilon)


# ---------------------------------------------------------- approval scores

def av(election: Election) -> Committee:
    '''Approval voting: every clone of the most-approved party fills all k seats.'''
    counts = election.approval_counts()
    best = max(range(election.m), key=lambda p: (counts[p], -p))
    return Committee.empty(election.m).add(best, election.k)


def sav(election: Election) -> Committee:
    '''Satisfaction approval voting: scores ``sum_{i in N_p} 1/|A_i|``.'''
    scores = [Fraction(0)] * election.m
    for b in election.ballots:
        for p in b.approved:
            scores[p] += Fraction(b.count, len(b.approved))
    best = max(range(election.m), key=lambda p: (scores[p], -p))
    return Committee.empty(election.m).add(best, election.k)


# ---------------------------------------------------------------- Phragmén

def seq_phragmen_rounds(election: Election) -> list[tuple[int, dict[int, Fraction]]]:
    '''Per round: ``(winner, {party: bid})`` with bid ``(1 + sum of supporter loads) / |N_p|``.'''
    load = [Fraction(0)] * len(election.ballots)
    support = [election.supporters(p) for p in range(election.m)]
    rounds = []
    for _ in range(election.k):
        bids = {}
        for p in range(election.m):
            weight = sum(election.ballots[c].count for c in support[p])
            if weight:
                bids[p] = (1 + sum(election.ballots[c].count * load[c] for c in support[p])) / weight
        winner = min(bids, key=lambda p: (bids[p], p))
        for c in support[winner]:
            load[c] = bids[winner]
        rounds.append((winner, bids))
    return rounds


def seq_phragmen(election: Election) -> Committee:
    '''Sequential Phragmén; a party may win repeatedly (one clone per round).'''
    return Committee.from_parties(election.m, (w for w, _ in seq_phragmen_rounds(election)))


def phragmen_stv_rounds(election: Election) -> list[tuple[int, dict[int, Fraction]]]:
    '''Per round: ``(winner, {party: score})``; scores are sums of voter weights.

    A winner with score ``s`` rescales its supporters' weights by
    ``(s - n/k) / s``, or zeroes them when ``s <= n/k``.
    '''
    n, k = election.n, election.k
    threshold = Fraction(n, k)
    weight = [Fraction(1)] * len(election.ballots)
    rounds = []
    for _ in range(k):
        scores = {p: Fraction(0) for p in range(election.m)}
        for c, b in enumerate(election.ballots):
            for p in b.approved:
                scores[p] += b.count * weight[c]
        winner = max(scores, key=lambda p: (scores[p], -p))
        s = scores[winner]
        factor = (s - threshold) / s if s > threshold else Fraction(0)
        for c, b in enumerate(election.ballots):
            if winner in b.approved:
                weight[c] *= factor
        rounds.append((winner, scores))
    return rounds


def phragmen_stv(election: Election) -> Committee:
    return Committee.from_parties(election.m, (w for w, _ in phragmen_stv_rounds(election)))


@dataclass(frozen=True)
class LoadDistribution:
    '''Per-voter load ``x[(ballot class, party)]`` carried by each voter of that class.'''

    loads: dict
    committee: Committee

    def voter_load(self, cls: int):
        return sum((x for (c, _), x in self.loads.items() if c == cls), Fraction(0))


def _load_network(election: Election, committee: Committee, lam: Fraction):
    m, nb = election.m, len(election.ballots)
    net = FlowNetwork(m + nb + 2)
    s, t = m + nb, m + nb + 1
    for p, w in enumerate(committee.seats):
        if w:
            net.add_arc(s, p, w)
    arcs = {}
    for c, b in enumerate(election.ballots):
        for p in sorted(b.approved):
            if committee[p]:
                arcs[c, p] = net.add_arc(p, m + c)
        net.add_arc(m + c, t, lam * b.count)
    return net, s, t, arcs


def _load_feasible(election, committee, lam) -> bool:
    net, s, t, _ = _load_network(election, committee, lam)
    return net.max_flow(s, t) == committee.size


def max_load(election: Election, committee: Committee, upper: Fraction | None = None):
    '''Smallest achievable maximal voter load for ``committee`` (exact).

    The optimum equals ``W(Q) / |N(Q)|`` for some set of seated parties
    ``Q``, so it lies among the fractions ``a/b`` with ``a <= k`` and
    ``b <= n``; binary search over those with a flow feasibility test
    finds it exactly. Returns ``None`` if the optimum exceeds ``upper``
    and ``inf`` if some seat has no approver at all.
    '''
    counts = election.approval_counts()
    if any(w and not counts[p] for p, w in enumerate(committee.seats)):
        return float('inf')
    if committee.size == 0:
        return Fraction(0)
    if upper is not None and not _load_feasible(election, committee, upper):
        return None
    cands = _load_candidates(committee.size, election.n)
    lo = max(Fraction(committee[p], counts[p]) for p in range(election.m) if committee[p])
    hi = upper if upper is not None else Fraction(committee.size)
    i, j = bisect_left(cands, lo), bisect_left(cands, hi)
    # invariant: cands[j] (or hi) is feasible
    while i < j:
        mid = (i + j) // 2
        if _load_feasible(election, committee, cands[mid]):
            j = mid
        else:
            i = mid + 1
    return cands[i] if i < len(cands) else hi


@lru_cache(maxsize=16)
def _load_candidates(k: int, n: int) -> list[Fraction]:
    return sorted({Fraction(a, b) for a in range(1, k + 1) for b in range(1, n + 1)})


def load_distribution(election: Election, committee: Committee, lam: Fraction | None = None) -> LoadDistribution:
    '''An optimal (or ``lam``-bounded) party-level load distribution.'''
    if lam is None:
        lam = max_load(election, committee)
    net, s, t, arcs = _load_network(election, committee, lam)
    if net.max_flow(s, t) != committee.size:
        raise ValueError(f'no load distribution with maximal load {lam}')
    loads = {}
    for (c, p), arc in arcs.items():
        f = net.flow_on(arc)
        if f:
            loads[c, p] = Fraction(f) / election.ballots[c].count
    return LoadDistribution(loads, committee)


# ------------------------------------------------------------------ Monroe

def monroe_score(election: Election, committee: Committee) -> int:
    '''Maximal number of voters represented by an approved seat under a valid mapping.

    Each seat represents ``floor(n/k)`` or ``ceil(n/k)`` voters. With
    ``r = n - k * floor(n/k)`` the set of seats taking the larger share has
    size exactly ``r``, so a flow with per-seat capacity ``floor(n/k)`` plus
    a shared pool of ``r`` single extra slots captures every valid mapping.
    '''
    n, k = election.n, committee.size
    lo, r = divmod(n, k)
    m, nb = election.m, len(election.ballots)
    net = FlowNetwork(m + nb + 3)
    s, t, extra = m + nb, m + nb + 1, m + nb + 2
    for c, b in enumerate(election.ballots):
        net.add_arc(s, m + c, b.count)
        for p in sorted(b.approved):
            if committee[p]:
                net.add_arc(m + c, p)
    for p, w in enumerate(committee.seats):
        if w:
            if lo:
                net.add_arc(p, t, lo * w)
            if r:
                net.add_arc(p, extra, w)
    if r:
        net.add_arc(extra, t, r)
    return net.max_flow(s, t)


def _remaining_supporters(election, remaining, p):
    return sum(remaining[c] for c, b in enumerate(election.ballots) if p in b.approved)


def _take(election, remaining, p, count, approvers=True):
    '''Remove ``count`` voters approving (or not approving) ``p``, lowest class first.'''
    for c, b in enumerate(election.ballots):
        if count <= 0:
            break
        if (p in b.approved) == approvers and remaining[c]:
            x = min(count, remaining[c])
            remaining[c] -= x
            count -= x
    return count


def _fill(seats, k):
    # next unchosen clones in candidate order
    p = 0
    while sum(seats) < k:
        while seats[p] >= k:
            p += 1
        seats[p] += 1


def _greedy_removal(election: Election, per_round) -> Committee:
    k = election.k
    remaining = [b.count for b in election.ballots]
    seats = [0] * election.m
    while sum(seats) < k and any(remaining):
        open_parties = [p for p in range(election.m) if seats[p] < k]
        score = {p: _remaining_supporters(election, remaining, p) for p in open_parties}
        best = max(open_parties, key=lambda p: (score[p], -p))
        seats[best] += 1
        _take(election, remaining, best, per_round(score[best]))
    _fill(seats, k)
    return Committee(tuple(seats))


def greedy_av(election: Election) -> Committee:
    '''Repeatedly seat the party approved by most not-yet-satisfied voters.'''
    return _greedy_removal(election, lambda supporters: supporters)


def hare_av(election: Election) -> Committee:
    '''GreedyAV removing only ``min(ceil(n/k), |N_c|)`` ballots per seat, lowest voter first.'''
    hare = -(-election.n // election.k)
    return _greedy_removal(election, lambda supporters: min(hare, supporters))


def greedy_monroe(election: Election) -> Committee:
    '''Greedy Monroe: round ``t`` assigns a group of ``ceil(n/k)`` voters for
    ``t <= n - k*floor(n/k)`` and ``floor(n/k)`` afterwards.'''
    n, k = election.n, election.k
    lo, r = divmod(n, k)
    remaining = [b.count for b in election.ballots]
    seats = [0] * election.m
    for t in range(1, k + 1):
        size = lo + 1 if t <= r else lo
        open_parties = [p for p in range(election.m) if seats[p] < k]
        covered = {p: min(size, _remaining_supporters(election, remaining, p)) for p in open_parties}
        best = max(open_parties, key=lambda p: (covered[p], -p))
        seats[best] += 1
        _take(election, remaining, best, covered[best])
        _take(election, remaining, best, size - covered[best], approvers=False)
    return Committee(tuple(seats))


# ---------------------------------------------------------------- registry

RULES = {
    'pav': pav_exact,
    'lspav': ls_pav,
    'seqpav': seq_pav,
    'revseqpav': rev_seq_pav,
    'av': av,
    'sav': sav,
    'mav': mav_exact,
    'seqphragmen': seq_phragmen,
    'phragmen-stv': phragmen_stv,
    'greedyav': greedy_av,
    'hareav': hare_av,
    'ccav': cc_av_exact,
    'greedymonroe': greedy_monroe,
    'monroe': monroe_exact,
    'maxphragmen': max_phragmen_bruteforce,
}

EXHAUSTIVE = {'pav', 'mav', 'ccav', 'monroe', 'maxphragmen'}
