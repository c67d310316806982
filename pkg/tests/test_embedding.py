import random

import pytest

from partyapproval import rules
from partyapproval.embedding import (
    apply_candidate_rule, c_av, c_pav_bruteforce, c_rev_seq_pav, c_sav, c_seq_pav, c_seq_phragmen, collapse,
    embed, hamming,
)
from partyapproval.instances import paper_example
from partyapproval.model import Committee, Election, ElectionError, pav_score, utilities

from _support import sweep


def test_embed_sizes():
    ce = embed(paper_example('ex1').election)
    assert len(ce.candidates) == 24
    e = Election.from_lists(['A'], [(['A'], 1)], 3)
    ce = embed(e)
    assert len(ce.candidates) == 3 and ce.ballots[0][0] == {0, 1, 2}
    ce = embed(paper_example('ex3').election)
    assert len(ce.candidates) == 80
    assert len(ce.ballots[0][0]) == 32


def test_candidate_order_is_party_major():
    ce = embed(paper_example('ex1').election)
    assert ce.candidates[:7] == ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 1))


def test_collapse():
    ce = embed(paper_example('ex1').election)
    k = ce.k
    chosen = [0, 1, 2, 3, 1 * k, 2 * k]
    assert collapse(ce, chosen).seats == (4, 1, 1, 0)
    # swapping clones of the same party changes nothing
    assert collapse(ce, [5, 4, 3, 2, k + 3, 2 * k + 5]).seats == (4, 1, 1, 0)
    with pytest.raises(ElectionError):
        collapse(ce, [0])


def test_collapse_empty():
    e = Election.from_lists(['A', 'B'], [(['A'], 1)], 0)
    assert collapse(embed(e), []).seats == (0, 0)


def test_utilities_and_hamming_closed_form():
    for seed, e in sweep(60, 10, 5, 5):
        ce = embed(e)
        rng = random.Random(seed)
        chosen = set(rng.sample(range(len(ce.candidates)), e.k))
        w = collapse(ce, chosen)
        u = utilities(e, w)
        for c, (approved, _) in enumerate(ce.ballots):
            assert len(approved & chosen) == u[c]
            size = len(e.ballots[c].approved)
            assert hamming(chosen, approved) == e.k * (size + 1) - 2 * u[c]


@pytest.mark.parametrize('party_rule, cand_rule', [
    (rules.seq_pav, c_seq_pav),
    (rules.rev_seq_pav, c_rev_seq_pav),
    (rules.av, c_av),
    (rules.sav, c_sav),
    (rules.seq_phragmen, c_seq_phragmen),
])
def test_party_rules_match_candidate_rules(party_rule, cand_rule):
    for seed, e in sweep(80, 10, 4, 4):
        assert party_rule(e) == apply_candidate_rule(cand_rule, e), seed


def test_pav_matches_candidate_bruteforce():
    for seed, e in sweep(40, 8, 3, 3):
        got = rules.pav_exact(e)
        oracle = apply_candidate_rule(c_pav_bruteforce, e)
        assert pav_score(e, got) == pav_score(e, oracle)
        assert got == oracle, seed


def test_seq_phragmen_multi_win():
    e = Election.from_lists(['A', 'B'], [(['A'], 3)], 3)
    assert apply_candidate_rule(c_seq_phragmen, e) == Committee((3, 0))
