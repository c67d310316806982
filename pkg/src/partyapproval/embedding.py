'''Clone embedding into candidate-approval elections.

Each party ``p`` becomes ``k`` interchangeable candidates ``p^(1..k)`` and a
voter approves every clone of every party she approves. Candidate ``(p, j)``
has index ``p * k + (j - 1)``, so candidate order is party-major.

A handful of candidate-level rules live here too. They work on candidate
sets only, without knowing about parties, and serve as the reference
against which the party-level rules in :mod:`partyapproval.rules` are
checked.
'''

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .model import Committee, Election, ElectionError


@dataclass(frozen=True)
class CandidateElection:
    candidates: tuple[tuple[int, int], ...]   # (party index, clone index 1..k)
    ballots: tuple[tuple[frozenset[int], int], ...]
    k: int
    m: int

    @property
    def n(self) -> int:
        return sum(c for _, c in self.ballots)

    def supporters(self, cand: int) -> list[int]:
        return [i for i, (a, _) in enumerate(self.ballots) if cand in a]


def embed(election: Election) -> CandidateElection:
    k = election.k
    candidates = tuple((p, j) for p in range(election.m) for j in range(1, k + 1))
    ballots = tuple(
        (frozenset(p * k + j for p in b.approved for j in range(k)), b.count) for b in election.ballots
    )
    return CandidateElection(candidates, ballots, k, election.m)


def collapse(cand_election: CandidateElection, chosen) -> Committee:
    '''Seat vector counting chosen clones per party.'''
    chosen = set(chosen)
    if len(chosen) != cand_election.k:
        raise ElectionError(f'candidate committee has {len(chosen)} members, expected {cand_election.k}')
    seats = [0] * cand_election.m
    for c in chosen:
        seats[cand_election.candidates[c][0]] += 1
    return Committee(tuple(seats))


def apply_candidate_rule(rule, election: Election) -> Committee:
    '''Embed, run a candidate-approval rule, and count clones per party.'''
    ce = embed(election)
    return collapse(ce, rule(ce))


def hamming(cand_committee, approved) -> int:
    return len(set(cand_committee) ^ set(approved))


# ---------------------------------------------------- candidate-level rules

def _cand_utils(ce: CandidateElection, chosen) -> list[int]:
    return [len(a & chosen) for a, _ in ce.ballots]


def c_seq_pav(ce: CandidateElection) -> set[int]:
    chosen: set[int] = set()
    for _ in range(ce.k):
        u = _cand_utils(ce, chosen)
        best, best_gain = None, None
        for c in range(len(ce.candidates)):
            if c in chosen:
                continue
            gain = sum(Fraction(cnt, u[i] + 1) for i, (a, cnt) in enumerate(ce.ballots) if c in a)
            if best is None or gain > best_gain:
                best, best_gain = c, gain
        chosen.add(best)
    return chosen


def c_rev_seq_pav(ce: CandidateElection) -> set[int]:
    # Removal ties drop the highest-indexed candidate.
    chosen = set(range(len(ce.candidates)))
    while len(chosen) > ce.k:
        u = _cand_utils(ce, chosen)
        best, best_loss = None, None
        for c in sorted(chosen, reverse=True):
            loss = sum(Fraction(cnt, u[i]) for i, (a, cnt) in enumerate(ce.ballots) if c in a)
            if best is None or loss < best_loss:
                best, best_loss = c, loss
        chosen.remove(best)
    return chosen


def c_av(ce: CandidateElection) -> set[int]:
    score = [sum(cnt for a, cnt in ce.ballots if c in a) for c in range(len(ce.candidates))]
    order = sorted(range(len(score)), key=lambda c: (-score[c], c))
    return set(order[:ce.k])


def c_sav(ce: CandidateElection) -> set[int]:
    score = [sum(Fraction(cnt, len(a)) for a, cnt in ce.ballots if c in a) for c in range(len(ce.candidates))]
    order = sorted(range(len(score)), key=lambda c: (-score[c], c))
    return set(order[:ce.k])


def c_seq_phragmen(ce: CandidateElection) -> set[int]:
    chosen: set[int] = set()
    load = [Fraction(0)] * len(ce.ballots)
    for _ in range(ce.k):
        best, best_bid = None, None
        for c in range(len(ce.candidates)):
            if c in chosen:
                continue
            sup = ce.supporters(c)
            weight = sum(ce.ballots[i][1] for i in sup)
            if not weight:
                continue
            bid = (1 + sum(ce.ballots[i][1] * load[i] for i in sup)) / weight
            if best is None or bid < best_bid:
                best, best_bid = c, bid
        chosen.add(best)
        for i in ce.supporters(best):
            load[i] = best_bid
    return chosen


def c_pav_bruteforce(ce: CandidateElection) -> set[int]:
    '''Exhaustive PAV over all ``k``-subsets of candidates (tiny inputs only).'''
    harm = [Fraction(0)]
    for t in range(1, ce.k + 1):
        harm.append(harm[-1] + Fraction(1, t))
    best, best_score = None, None
    for combo in combinations(range(len(ce.candidates)), ce.k):
        s = set(combo)
        score = sum(cnt * harm[len(a & s)] for a, cnt in ce.ballots)
        if best is None or score > best_score:
            best, best_score = s, score
    return best
