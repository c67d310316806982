'''Core types for party-approval elections.

An election holds an ordered list of party names, a multiplicity-compressed
list of approval ballots over party indices, and the committee size ``k``.
Party order doubles as the canonical tie-break order used by every rule in
this package: lower index wins.

Arithmetic is exact wherever the defining quantity is rational. Thresholds of
the form ``l * n / k`` are always compared by cross-multiplication.
'''

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ElectionError(ValueError):
    '''Malformed input: bad ballot file, invalid election or committee.'''


class CapacityError(RuntimeError):
    '''An exhaustive procedure would exceed its configured size cap.'''

    def __init__(self, message: str, cap: int | None = None, fallback: str | None = None):
        super().__init__(message)
        self.cap = cap
        self.fallback = fallback


class DomainError(ValueError):
    '''The requested notion is undefined for this input.'''


class ConvergenceError(ArithmeticError):
    '''An iterative solver hit its iteration cap.'''

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


_NAME = re.compile(r'^[^\s,=:#]+$')


@dataclass(frozen=True)
class Ballot:
    approved: frozenset[int]
    count: int = 1


@dataclass(frozen=True)
class Election:
    parties: tuple[str, ...]
    ballots: tuple[Ballot, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'parties', tuple(self.parties))
        object.__setattr__(
            self, 'ballots',
            tuple(b if isinstance(b, Ballot) else Ballot(frozenset(b[0]), b[1]) for b in self.ballots),
        )
        if len(set(self.parties)) != len(self.parties):
            raise ElectionError('duplicate party name')
        for name in self.parties:
            if not _NAME.match(name):
                raise ElectionError(f'invalid party name {name!r}')
        if not isinstance(self.k, int) or self.k < 0:
            raise ElectionError('committee size must be a nonnegative integer')
        m = len(self.parties)
        for b in self.ballots:
            if not b.approved:
                raise ElectionError('empty approval set')
            if b.count < 1:
                raise ElectionError('ballot multiplicity must be at least 1')
            if any(not 0 <= p < m for p in b.approved):
                raise ElectionError('ballot references unknown party')
        if self.n < 1:
            raise ElectionError('election needs at least one voter')

    @classmethod
    def from_lists(cls, parties: Sequence[str], ballots: Iterable[tuple[Iterable[str], int]], k: int) -> Election:
        '''Build an election from party names, e.g. ``[(['a', 'b'], 3), (['c'], 1)]``.'''
        index = {p: i for i, p in enumerate(parties)}
        out = []
        for names, count in ballots:
            try:
                out.append(Ballot(frozenset(index[x] for x in names), count))
            except KeyError as e:
                raise ElectionError(f'unknown party {e.args[0]!r}') from None
        return cls(tuple(parties), tuple(out), k)

    @property
    def n(self) -> int:
        return sum(b.count for b in self.ballots)

    @property
    def m(self) -> int:
        return len(self.parties)

    def with_k(self, k: int) -> Election:
        return Election(self.parties, self.ballots, k)

    def supporters(self, party: int) -> list[int]:
        '''Ballot-class indices approving ``party``.'''
        return [c for c, b in enumerate(self.ballots) if party in b.approved]

    def approval_counts(self) -> list[int]:
        counts = [0] * self.m
        for b in self.ballots:
            for p in b.approved:
                counts[p] += b.count
        return counts

    def expanded(self) -> list[frozenset[int]]:
        '''One approval set per voter, in ballot-class order.'''
        return [b.approved for b in self.ballots for _ in range(b.count)]

    def party_index(self, name: str) -> int:
        try:
            return self.parties.index(name)
        except ValueError:
            raise ElectionError(f'unknown party {name!r}') from None


@dataclass(frozen=True)
class Committee:
    '''Seat counts per party (a multiset over parties).'''

    seats: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'seats', tuple(int(s) for s in self.seats))
        if any(s < 0 for s in self.seats):
            raise ElectionError('negative seat count')

    @classmethod
    def empty(cls, m: int) -> Committee:
        return cls((0,) * m)

    @classmethod
    def from_parties(cls, m: int, chosen: Iterable[int]) -> Committee:
        '''Count party indices, e.g. a sorted combination, into a seat vector.'''
        seats = [0] * m
        for p in chosen:
            seats[p] += 1
        return cls(tuple(seats))

    def __len__(self) -> int:
        return len(self.seats)

    def __getitem__(self, p: int) -> int:
        return self.seats[p]

    def __iter__(self):
        return iter(self.seats)

    @property
    def size(self) -> int:
        return sum(self.seats)

    def __add__(self, other: Committee) -> Committee:
        return Committee(tuple(a + b for a, b in zip(self.seats, other.seats, strict=True)))

    def add(self, p: int, times: int = 1) -> Committee:
        seats = list(self.seats)
        seats[p] += times
        return Committee(tuple(seats))

    def remove(self, p: int) -> Committee:
        return self.add(p, -1)

    def issubset(self, other: Committee) -> bool:
        return all(a <= b for a, b in zip(self.seats, other.seats, strict=True))

    def as_tuple(self) -> tuple[int, ...]:
        '''Sorted party-index sequence; its lexicographic order is the canonical committee order.'''
        return tuple(p for p, s in enumerate(self.seats) for _ in range(s))


def quota(s_size: int, n: int, k: int) -> int:
    '''Seats a coalition of ``s_size`` voters deserves: ``floor(k * s_size / n)``.'''
    return k * s_size // n


def utility(election: Election, voter: int, committee: Committee) -> int:
    '''Seats held by parties that ballot class ``voter`` approves.'''
    if not 0 <= voter < len(election.ballots):
        raise ElectionError(f'ballot index {voter} out of range')
    if len(committee) != election.m:
        raise ElectionError('committee does not match the election parties')
    return sum(committee[p] for p in election.ballots[voter].approved)


def utilities(election: Election, committee: Committee) -> list[int]:
    if len(committee) != election.m:
        raise ElectionError('committee does not match the election parties')
    return [sum(committee[p] for p in b.approved) for b in election.ballots]


def harmonic(j: int) -> Fraction:
    return sum((Fraction(1, t) for t in range(1, j + 1)), Fraction(0))


def pav_score(election: Election, committee: Committee) -> Fraction:
    '''Sum over voters of ``H(u_i)`` with ``H`` the harmonic numbers.'''
    h = _harmonics(max(committee.size, 0))
    return sum((b.count * h[u] for b, u in zip(election.ballots, utilities(election, committee))), Fraction(0))


def _harmonics(k: int) -> list[Fraction]:
    out = [Fraction(0)]
    for t in range(1, k + 1):
        out.append(out[-1] + Fraction(1, t))
    return out


# ---------------------------------------------------------------- file format

def parse_election(text: str) -> Election:
    '''Parse the line-oriented ballot format.

    ::

        parties: p0 p1 p2 p3
        k: 6
        2 : p0
        2 : p0,p1,p2
        1 : p1,p3   # comments start with '#'
    '''
    parties = None
    k = None
    ballots = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(':')
        if not sep:
            raise ElectionError(f'line {lineno}: expected ":"')
        head = head.strip()
        if parties is None:
            if head != 'parties':
                raise ElectionError(f'line {lineno}: expected "parties:" header')
            parties = rest.split()
            if not parties:
                raise ElectionError(f'line {lineno}: no parties declared')
            if len(set(parties)) != len(parties):
                raise ElectionError(f'line {lineno}: duplicate party name')
            continue
        if k is None:
            if head != 'k':
                raise ElectionError(f'line {lineno}: expected "k:" line')
            try:
                k = int(rest.strip())
            except ValueError:
                raise ElectionError(f'line {lineno}: committee size is not an integer') from None
            if k < 1:
                raise ElectionError(f'line {lineno}: committee size must be at least 1')
            continue
        try:
            count = int(head)
        except ValueError:
            raise ElectionError(f'line {lineno}: bad multiplicity {head!r}') from None
        names = [x.strip() for x in rest.split(',')]
        if not names or any(not x for x in names):
            raise ElectionError(f'line {lineno}: empty approval set')
        if len(set(names)) != len(names):
            raise ElectionError(f'line {lineno}: party listed twice')
        unknown = [x for x in names if x not in parties]
        if unknown:
            raise ElectionError(f'line {lineno}: unknown party {unknown[0]!r}')
        ballots.append((names, count))
    if parties is None or k is None:
        raise ElectionError('missing "parties:" or "k:" line')
    if not ballots:
        raise ElectionError('no ballots')
    try:
        return Election.from_lists(parties, ballots, k)
    except ElectionError as e:
        raise ElectionError(str(e)) from None


def serialize_election(election: Election) -> str:
    lines = ['parties: ' + ' '.join(election.parties), f'k: {election.k}']
    for b in election.ballots:
        names = ','.join(election.parties[p] for p in sorted(b.approved))
        lines.append(f'{b.count} : {names}')
    return '\n'.join(lines) + '\n'


def format_committee(election: Election, committee: Committee, zeros: bool = False) -> str:
    '''``p0=8 p2=4 p4=4`` in party declaration order.'''
    return ' '.join(
        f'{name}={s}' for name, s in zip(election.parties, committee.seats) if zeros or s
    )


def parse_committee(election: Election, spec: str) -> Committee:
    '''Inverse of :func:`format_committee`; accepts commas or whitespace as separators.'''
    seats = [0] * election.m
    for item in re.split(r'[,\s]+', spec.strip()):
        if not item:
            continue
        name, sep, value = item.partition('=')
        if not sep:
            raise ElectionError(f'bad committee entry {item!r}')
        try:
            seats[election.party_index(name)] += int(value)
        except ValueError as e:
            raise ElectionError(str(e)) from None
    return Committee(tuple(seats))


@dataclass(frozen=True)
class Portioning:
    '''Vote shares per party.

    ``exact`` portionings hold :class:`~fractions.Fraction` shares summing to
    exactly one; approximate ones hold floats summing to one within 1e-9.
    '''

    shares: tuple
    exact: bool = True

    def __post_init__(self):
        if self.exact:
            shares = tuple(Fraction(s) for s in self.shares)
            if sum(shares) != 1:
                raise ElectionError(f'exact shares sum to {sum(shares)}, not 1')
        else:
            shares = tuple(float(s) for s in self.shares)
            if abs(sum(shares) - 1.0) > 1e-9:
                raise ElectionError(f'shares sum to {sum(shares)!r}, not 1')
        if any(s < 0 or s > 1 for s in shares):
            raise ElectionError('share outside [0, 1]')
        object.__setattr__(self, 'shares', shares)

    def __len__(self) -> int:
        return len(self.shares)

    def __getitem__(self, p: int):
        return self.shares[p]

    def __iter__(self):
        return iter(self.shares)


def format_portioning(election: Election, portioning: Portioning) -> str:
    if portioning.exact:
        return ' '.join(
            f'{name}={s.numerator}/{s.denominator}' for name, s in zip(election.parties, portioning.shares)
        )
    return ' '.join(f'{name}={s:.10g}' for name, s in zip(election.parties, portioning.shares))
