'''Apportionment methods and their composition with portioning methods.

Both methods hand out seats one at a time to the party with the largest
quotient ``r(p) / (s(p) + 1)``; the quota method additionally restricts the
``j``-th seat to parties with ``s(p) < j * r(p)``. Quotient ties go to the
lowest party index.
'''

from __future__ import annotations

from typing import Callable

from .model import Committee, Election, ElectionError, Portioning

PortioningMethod = Callable[[Election], Portioning]
ApportionmentMethod = Callable[[Portioning, int], Committee]


def _highest_quotient(shares, seats, eligible):
    best = None
    for p in eligible:
        q = shares[p] / (seats[p] + 1)
        if best is None or q > best_q:
            best, best_q = p, q
    return best


def dhondt(portioning: Portioning, k: int) -> Committee:
    '''D'Hondt (Jefferson) method.'''
    shares = portioning.shares
    seats = [0] * len(shares)
    everyone = range(len(shares))
    for _ in range(k):
        seats[_highest_quotient(shares, seats, everyone)] += 1
    return Committee(tuple(seats))


def quota_method(portioning: Portioning, k: int) -> Committee:
    '''Balinski-Young quota method: D'Hondt restricted to parties below upper quota.'''
    shares = portioning.shares
    seats = [0] * len(shares)
    for j in range(1, k + 1):
        eligible = [p for p in range(len(shares)) if seats[p] < j * shares[p]]
        if not eligible:
            raise ElectionError(f'no party eligible for seat {j}')
        seats[_highest_quotient(shares, seats, eligible)] += 1
    return Committee(tuple(seats))


def compose(portioning_method: PortioningMethod, apportionment_method: ApportionmentMethod):
    '''Party-approval rule: portion the ballots, then apportion ``election.k`` seats.'''

    def rule(election: Election) -> Committee:
        return apportionment_method(portioning_method(election), election.k)

    rule.__name__ = f'{portioning_method.__name__}+{apportionment_method.__name__}'
    return rule


def lower_quota(portioning: Portioning, k: int) -> list[int]:
    '''``floor(k * r(p))`` per party (exact for rational shares).'''
    from math import floor
    return [floor(k * s) for s in portioning.shares]
