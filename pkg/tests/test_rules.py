import itertools
import random
from fractions import Fraction as F
from math import comb

import pytest

from partyapproval import rules
from partyapproval.axioms import check_core_bruteforce, check_ejr
from partyapproval.instances import Graph, paper_example, reduce_is_to_maxphragmen
from partyapproval.model import Ballot, CapacityError, Committee, Election, pav_score, utilities

from _support import sweep

ONE_EACH = Election.from_lists(['A', 'B'], [(['A'], 1), (['B'], 1)], 2)


def unanimous(k, n=1, extra=0):
    names = ['A'] + [f'B{j}' for j in range(extra)]
    return Election.from_lists(names, [(['A'], n)], k)


ALL_RULES = sorted(rules.RULES)


@pytest.mark.parametrize('name', ALL_RULES)
def test_every_rule_returns_k_seats(name):
    for seed, e in sweep(25, 8, 4, 4):
        assert rules.RULES[name](e).size == e.k, seed


@pytest.mark.parametrize('name', ALL_RULES)
def test_unanimous_profile_gets_everything(name):
    e = unanimous(4, n=2, extra=2)
    assert rules.RULES[name](e).seats == (4, 0, 0)


# --------------------------------------------------------------- PAV family

def test_pav_exact_examples():
    assert rules.pav_exact(ONE_EACH).seats == (1, 1)
    assert rules.pav_exact(unanimous(5)).seats == (5,)
    e3 = paper_example('ex3').election
    w = rules.pav_exact(e3)
    assert pav_score(e3, w) > pav_score(e3, Committee((8, 0, 4, 0, 4)))
    assert check_core_bruteforce(e3, w).passed


def test_pav_exact_is_optimal_and_canonical():
    for seed, e in sweep(60, 8, 4, 4):
        best = rules.pav_exact(e)
        scored = [
            (pav_score(e, Committee.from_parties(e.m, combo)), combo)
            for combo in itertools.combinations_with_replacement(range(e.m), e.k)
        ]
        top = max(s for s, _ in scored)
        first = next(combo for s, combo in scored if s == top)
        assert best.as_tuple() == first, seed


def test_exhaustive_cap():
    e = paper_example('ex3').election
    assert rules.committee_count(5, 16) == comb(20, 16)
    with pytest.raises(CapacityError) as info:
        rules.pav_exact(e, cap=100)
    assert info.value.cap == 100 and info.value.fallback == 'lspav'


@pytest.mark.parametrize('name', sorted(rules.EXHAUSTIVE))
def test_threads_do_not_change_results(name):
    rule = rules.RULES[name]
    for seed, e in sweep(6, 8, 4, 3):
        assert rule(e, threads=2) == rule(e), seed


def test_ls_pav_examples():
    e3 = paper_example('ex3').election
    assert check_core_bruteforce(e3, rules.ls_pav(e3)).passed
    assert rules.ls_pav(unanimous(4)).seats == (4,)
    e1 = paper_example('ex1').election
    w = rules.ls_pav(e1)
    assert check_ejr(e1, w).passed
    assert max(utilities(e1, w)[2:]) >= 2


def test_ls_pav_epsilon():
    assert rules.ls_pav_epsilon(2) == F(1, 6)
    assert rules.ls_pav_epsilon(16) == F(1, 31 * 15 * 16)
    with pytest.raises(ValueError):
        rules.ls_pav_epsilon(1)


def test_ls_pav_k1_uses_exact():
    for seed, e in sweep(20, 10, 5, 1):
        e = e.with_k(1)
        assert rules.ls_pav(e) == rules.pav_exact(e)


def test_pav_score_ordering_and_swap_budget():
    for seed, e in sweep(80, 8, 5, 5):
        if e.k < 2:
            continue
        w, swaps, eps = rules.ls_pav_search(e)
        assert swaps <= rules.ls_pav_swap_budget(e, eps)
        best = pav_score(e, rules.pav_exact(e))
        assert best >= pav_score(e, w) >= pav_score(e, rules.seq_pav(e))


def test_pav_and_ls_pav_core_stable():
    for seed, e in sweep(150, 8, 5, 5, offset=300):
        assert check_core_bruteforce(e, rules.pav_exact(e)).passed, seed
        assert check_core_bruteforce(e, rules.ls_pav(e)).passed, seed


def test_seq_pav_jr_instance():
    e = paper_example('seqpav-jr').election
    assert e.n == 1199
    rounds = rules.seq_pav_rounds(e)
    assert [gains[w] for w, gains in rounds[:3]] == [162, 162, 147]
    assert all(rounds[i][1][p] == F(241, 2) for i in (3,) for p in (1, 2, 4, 5, 7, 8, 9))
    assert rules.seq_pav(e).seats == (1,) * 10 + (0,)
    bigger = paper_example('seqpav-jr', 13).election
    assert bigger.n == 1199 + 3 * 120
    w = rules.seq_pav(bigger)
    assert w.seats[:10] == (1,) * 10 and sum(w.seats[10:]) == 3


def test_rev_seq_pav_example():
    assert rules.rev_seq_pav(ONE_EACH).seats == (1, 1)


# ------------------------------------------------------------ approval scores

def test_av_and_sav_examples():
    e = paper_example('av-jr').election
    assert rules.av(e).seats == (3, 0)
    assert rules.sav(e).seats == (3, 0)
    assert rules.av(unanimous(2, extra=1)).seats == (2, 0)
    e = Election.from_lists(['A', 'B'], [(['A'], 2), (['A', 'B'], 2), (['B'], 1)], 2)
    assert rules.sav(e).seats == (2, 0)


def test_mav_examples():
    e = paper_example('mav-jr').election
    assert rules.mav_exact(e).seats == (3, 0, 0, 0)
    assert rules.mav_exact(ONE_EACH).seats == (1, 1)


# ----------------------------------------------------------------- Phragmén

def test_seq_phragmen_unanimous_loads():
    e = unanimous(3, n=2)
    rounds = rules.seq_phragmen_rounds(e)
    assert [bids[0] for _, bids in rounds] == [F(1, 2), F(2, 2), F(3, 2)]


def test_seq_phragmen_table_instance():
    e = paper_example('seqphragmen-table').election
    rounds = rules.seq_phragmen_rounds(e)
    assert [w for w, _ in rounds] == [0, 1, 2, 3, 0]
    assert rounds[1][1][0] == F(16, 64) and rounds[1][1][1] == F(15, 64) and rounds[1][1][4] == F(18, 64)
    assert rounds[4][1][0] == F(16473, 32768)


def test_seq_phragmen_large_instance():
    e = paper_example('seqphragmen-ejr').election
    assert e.n == 2 * 282
    assert rules.seq_phragmen(e).seats == (1, 1, 1, 1, 278, 0)


def test_phragmen_stv_instances():
    rounds = rules.phragmen_stv_rounds(paper_example('stv-table').election)
    assert rounds[0][0] == 1 and rounds[0][1][1] == 242
    assert rounds[1][0] == 5 and rounds[1][1][5] == 241
    e = paper_example('stv-ejr').election
    assert e.n == 2160
    assert rules.phragmen_stv(e).seats == (0,) + (1,) * 18


def split_classes(e, seed):
    '''Same voters with ballots split into singletons and shuffled.'''
    rng = random.Random(seed)
    ballots = [Ballot(b.approved, 1) for b in e.ballots for _ in range(b.count)]
    rng.shuffle(ballots)
    return Election(e.parties, tuple(ballots), e.k)


@pytest.mark.parametrize('rule', [rules.seq_phragmen, rules.phragmen_stv, rules.seq_pav, rules.pav_exact])
def test_invariant_under_relabeling_and_compression(rule):
    for seed, e in sweep(40, 12, 5, 5):
        assert rule(split_classes(e, seed)) == rule(e), seed


def hall_max_load(e, w):
    '''max over seated party sets Q of W(Q) / |voters approving something in Q|.'''
    seated = [p for p in range(e.m) if w[p]]
    best = F(0)
    for r in range(1, len(seated) + 1):
        for q in itertools.combinations(seated, r):
            voters = sum(b.count for b in e.ballots if b.approved & set(q))
            best = max(best, F(sum(w[p] for p in q), voters))
    return best


def test_max_load_matches_hall_formula():
    for seed, e in sweep(80, 9, 4, 4):
        for combo in itertools.combinations_with_replacement(range(e.m), e.k):
            w = Committee.from_parties(e.m, combo)
            if any(w[p] and not e.supporters(p) for p in range(e.m)):
                assert rules.max_load(e, w) == float('inf')
                continue
            assert rules.max_load(e, w) == hall_max_load(e, w), (seed, combo)


def test_load_distribution_is_valid():
    for seed, e in sweep(40, 9, 4, 4):
        w = rules.max_phragmen_bruteforce(e)
        lam = rules.max_load(e, w)
        dist = rules.load_distribution(e, w)
        for p in range(e.m):
            carried = sum(x * e.ballots[c].count for (c, q), x in dist.loads.items() if q == p)
            assert carried == w[p]
        for (c, p) in dist.loads:
            assert p in e.ballots[c].approved
        assert all(dist.voter_load(c) <= lam for c in range(len(e.ballots)))


def test_max_phragmen_examples():
    assert rules.max_load(unanimous(2, n=2), rules.max_phragmen_bruteforce(unanimous(2, n=2))) == 1
    c4 = Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
    e, bound = reduce_is_to_maxphragmen(c4, 2, require_cubic=False)
    assert bound == F(1, 2)
    assert rules.max_load(e, rules.max_phragmen_bruteforce(e)) <= bound
    k4 = Graph(4, tuple(itertools.combinations(range(4), 2)))
    e, bound = reduce_is_to_maxphragmen(k4, 1)
    for v in range(4):
        assert rules.max_load(e, Committee.from_parties(4, [v])) == F(1, 3)
    e2, _ = reduce_is_to_maxphragmen(k4, 2)
    assert rules.max_load(e2, rules.max_phragmen_bruteforce(e2)) > F(1, 3)


def test_max_load_upper_bound():
    e = paper_example('ex1').election
    w = Committee((4, 1, 1, 0))
    lam = rules.max_load(e, w)
    assert rules.max_load(e, w, upper=lam) == lam
    assert rules.max_load(e, w, upper=lam - F(1, 1000)) is None


# ------------------------------------------------------- greedy and Monroe

def test_greedy_av_and_ccav():
    e = paper_example('greedyav-pjr').election
    assert rules.greedy_av(e).seats == (1, 1, 1, 0)
    assert rules.cc_av_exact(e).seats == (1, 1, 1, 0)
    e5 = paper_example('greedyav-pjr', 5).election
    assert rules.greedy_av(e5) == rules.cc_av_exact(e5)
    assert rules.greedy_av(e5).seats[0] == 1


def test_monroe_family_instance():
    e = paper_example('monroe-pjr').election
    for rule in (rules.hare_av, rules.greedy_monroe, rules.monroe_exact):
        assert rule(e).seats == (3, 1, 1, 1)
    e8 = paper_example('monroe-pjr', 8).election
    for rule in (rules.hare_av, rules.greedy_monroe):
        w = rule(e8)
        assert w[0] == 3 and max(w.seats[1:]) == 1


def monroe_bruteforce(e, w):
    voters = e.expanded()
    seats = w.as_tuple()
    n, k = len(voters), len(seats)
    lo, hi = n // k, -(-n // k)
    best = 0
    for assign in itertools.product(range(k), repeat=n):
        sizes = [assign.count(j) for j in range(k)]
        if all(lo <= s <= hi for s in sizes):
            best = max(best, sum(seats[j] in voters[i] for i, j in enumerate(assign)))
    return best


def test_monroe_score_matches_bruteforce():
    for seed, e in sweep(60, 6, 4, 3):
        w = rules.monroe_exact(e)
        assert rules.monroe_score(e, w) == monroe_bruteforce(e, w), seed
    assert rules.monroe_score(unanimous(3, n=4), Committee((3,))) == 4


def test_ccav_maximizes_coverage():
    for seed, e in sweep(40, 10, 4, 3):
        w = rules.cc_av_exact(e)
        covered = sum(b.count for b, u in zip(e.ballots, utilities(e, w)) if u)
        for combo in itertools.combinations_with_replacement(range(e.m), e.k):
            other = Committee.from_parties(e.m, combo)
            assert covered >= sum(b.count for b, u in zip(e.ballots, utilities(e, other)) if u)
