import random

from partyapproval.instances import BALLOT_MODELS, random_election
from partyapproval.model import Committee


def random_instance(seed, n_max, p_max, k_max, n_min=1):
    rng = random.Random(seed)
    p = rng.randint(1, p_max)
    return random_election(
        seed, rng.randint(n_min, n_max), p, rng.randint(1, k_max),
        BALLOT_MODELS[seed % len(BALLOT_MODELS)], rng.uniform(0.2, 0.7), rng.randint(1, p),
    )


def sweep(count, n_max, p_max, k_max, offset=0):
    for seed in range(offset, offset + count):
        yield seed, random_instance(seed, n_max, p_max, k_max)


def random_committee(election, seed):
    rng = random.Random(seed)
    return Committee.from_parties(election.m, [rng.randrange(election.m) for _ in range(election.k)])
