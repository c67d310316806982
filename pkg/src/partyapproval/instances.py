'''Worked-example elections, Independent Set reductions, random elections.

:func:`paper_example` returns an :class:`Example` bundling an election with
the values it is known to produce. :mod:`partyapproval.golden` checks those
expectations against the implementations.
'''

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction as F
from itertools import combinations

from .model import Ballot, Election, ElectionError


@dataclass(frozen=True)
class Example:
    id: str
    election: Election
    expected: dict = field(default_factory=dict)


def _ex1(k=None):
    e = Election.from_lists(
        ['p0', 'p1', 'p2', 'p3'],
        [(['p0'], 2), (['p0', 'p1', 'p2'], 2), (['p1', 'p3'], 1), (['p2', 'p3'], 1)],
        k or 6,
    )
    return e, {
        'conditional_utilitarian': (F(4, 6), F(1, 6), F(1, 6), F(0)),
        'cu+dhondt': (4, 1, 1, 0),
        'cu+quota': (4, 1, 1, 0),
        'ejr_violation': {'committee': (4, 1, 1, 0), 'party': 3, 'level': 2},
    }


def _ex2(k=None):
    e = Election.from_lists(
        ['p0', 'p1', 'p2', 'p3'],
        [(['p0'], 2), (['p0', 'p1', 'p2'], 1), (['p0', 'p1', 'p3'], 1), (['p1'], 1), (['p2', 'p3'], 1)],
        k or 6,
    )
    return e, {
        'random_priority': (F(23, 45), F(23, 90), F(7, 60), F(7, 60)),
        'nash': ((0.5302, 0.2651, 0.1023, 0.1023), 1e-3),
        'rp+dhondt': (4, 2, 0, 0),
        'rp+quota': (4, 2, 0, 0),
        'nash+dhondt': (4, 2, 0, 0),
        'nash+quota': (4, 2, 0, 0),
    }


def _ex3(k=None):
    e = Election.from_lists(
        ['p0', 'p1', 'p2', 'p3', 'p4'],
        [(['p0', 'p1'], 4), (['p1', 'p2'], 3), (['p2'], 1), (['p0', 'p3'], 4), (['p3', 'p4'], 3), (['p4'], 1)],
        k or 16,
    )
    exp = {'majoritarian': (F(1, 2), F(0), F(1, 4), F(0), F(1, 4))}
    if e.k == 16:
        exp.update({
            'maj+dhondt': (8, 0, 4, 0, 4),
            'maj+quota': (8, 0, 4, 0, 4),
            'core_violation': {'committee': (8, 0, 4, 0, 4), 'coalition_size': 14, 'deviation_size': 14,
                               'deviation': (4, 5, 0, 5, 0)},
            'core_stable': ['pav', 'lspav'],
        })
    return e, exp


def _seqpav_jr(k=None):
    k = 10 if k is None else k
    if k < 10:
        raise ElectionError('seqpav-jr needs k >= 10')
    parties = [f'P{j}' for j in range(1, k + 2)]
    ballots = [
        (['P1', 'P2'], 81), (['P1', 'P3'], 81), (['P2'], 80), (['P3'], 80),
        (['P4', 'P5'], 81), (['P4', 'P6'], 81), (['P5'], 80), (['P6'], 80),
        (['P7', 'P8'], 49), (['P7', 'P9'], 49), (['P7', 'P10'], 49),
        (['P8'], 96), (['P9'], 96), (['P10'], 96), (['P11'], 120),
    ]
    ballots += [([f'P{j}'], 120) for j in range(12, k + 2)]
    e = Election.from_lists(parties, ballots, k)
    exp = {'seqpav_fails': 'jr'}
    if k == 10:
        exp['seqpav'] = (1,) * 10 + (0,)
        exp['seqpav_first_gains'] = (F(162), F(162), F(147))
    return e, exp


def _av_jr(k=None):
    k = 3 if k is None else k
    e = Election.from_lists(['A', 'B'], [(['A'], 2 * k), (['B'], k)], k)
    return e, {'av': (k, 0), 'sav': (k, 0), 'av_fails': 'jr', 'sav_fails': 'jr'}


def _mav_jr(k=None):
    k = 3 if k is None else k
    e = Election.from_lists(['A', 'B', 'C', 'D'], [(['A', 'B', 'C'], k), (['D'], k)], k)
    return e, {'mav_fails': 'jr', 'mav_no_seat_for': 3}


def _seqphragmen_ejr(k=None):
    k = 282 if k is None else k
    if k < 282:
        warnings.warn('seqphragmen-ejr is only a counterexample for k >= 282', stacklevel=3)
    parties = ['A', 'B', 'C', 'D', 'E', 'X']
    ballots = [(['A', 'X'], 1), (['B', 'X'], 1), (['C', 'X'], 1), (['D', 'X'], 1),
               (['A', 'B', 'C', 'D'], 7), (['E'], 2 * k - 11)]
    e = Election.from_lists(parties, ballots, k)
    return e, {'seqphragmen': (1, 1, 1, 1, k - 4, 0), 'seqphragmen_fails': 'ejr'}


def _seqphragmen_table(k=None):
    parties = ['A', 'B', 'C', 'D', 'X']
    ballots = [(['A', 'X'], 1), (['B', 'X'], 1), (['C', 'X'], 1), (['D', 'X'], 1), (['A', 'B', 'C', 'D'], 7)]
    e = Election.from_lists(parties, ballots, k or 5)
    # rows A, B, C, D, X; columns are iterations 1..5; rounded to 5 significant digits
    table = {
        'A': (0.125, 0.25, 0.34570, 0.42944, 0.50272),
        'B': (0.125, 0.23438, 0.35938, 0.44312, 0.51639),
        'C': (0.125, 0.23438, 0.33008, 0.45508, 0.52835),
        'D': (0.125, 0.23438, 0.33008, 0.41382, 0.53882),
        'X': (0.25, 0.28125, 0.33984, 0.42236, 0.52582),
    }
    return e, {
        'seqphragmen_winners': ('A', 'B', 'C', 'D', 'A'),
        'seqphragmen_winning_bids': (0.125, 0.23438, 0.33008, 0.41382, 0.50272),
        'seqphragmen_fifth_bid': F(16473, 32768),
        'seqphragmen_table': table,
    }


def _stv_ejr(k=None):
    k = 18 if k is None else k
    if k < 18:
        raise ElectionError('stv-ejr needs k >= 18')
    parties = ['A'] + [f'X{j}' for j in range(1, k + 1)]
    ballots = [
        (['A', 'X1'], 120), (['A', 'X2'], 120), (['X1', 'X3'], 122), (['X2', 'X4'], 70),
        (['X4', 'X5'], 120), (['X5', 'X6'], 121), (['X3'], 61), (['X4'], 50), (['X6'], 65),
    ]
    ballots += [([f'X{j}'], 109) for j in range(7, 16)]
    ballots += [([f'X{j}'], 110) for j in range(16, 19)]
    ballots += [([f'X{j}'], 120) for j in range(19, k + 1)]
    e = Election.from_lists(parties, ballots, k)
    return e, {'phragmen-stv': (0,) + (1,) * k, 'phragmen-stv_fails': 'ejr', 'n': 120 * k}


def _stv_table(k=None):
    parties = ['A'] + [f'X{j}' for j in range(1, 7)]
    ballots = [
        (['A', 'X1'], 120), (['A', 'X2'], 120), (['X1', 'X3'], 122), (['X2', 'X4'], 70),
        (['X4', 'X5'], 120), (['X5', 'X6'], 121), (['X3'], 61), (['X4'], 50), (['X6'], 65),
    ]
    e = Election.from_lists(parties, ballots, k or 7)
    table = {
        'A': (240.0, 179.86, 179.86, 103.26, 103.26, 103.26, 103.26),
        'X1': (242.0, 120.71, 120.71, 120.71, 120.71, 120.71, 60.14),
        'X2': (190.0, 190.0, 190.0, 68.71, 45.96, 45.96, 45.96),
        'X3': (183.0, 121.86, 121.86, 121.86, 121.86, 121.86, 0.57),
        'X4': (240.0, 240.0, 179.61, 134.92, 13.64, 13.64, 13.64),
        'X5': (241.0, 241.0, 119.71, 119.71, 66.13, 7.86, 7.86),
        'X6': (186.0, 186.0, 125.11, 125.11, 125.11, 3.82, 3.82),
    }
    return e, {
        'phragmen-stv_winners': ('X1', 'X5', 'X2', 'X4', 'X6', 'X3', 'A'),
        'phragmen-stv_winning_scores': (242.0, 241.0, 190.0, 134.92, 125.11, 121.86, 103.26),
        'phragmen-stv_table': table,
    }


def _greedyav_pjr(k=None):
    k = 3 if k is None else k
    if k < 3:
        raise ElectionError('greedyav-pjr needs k >= 3')
    parties = ['A'] + [f'X{j}' for j in range(1, k + 1)]
    ballots = [([f'X{j}'], 1) for j in range(1, k + 1)] + [(['A'], 2 * k)]
    e = Election.from_lists(parties, ballots, k)
    committee = (1,) + (1,) * (k - 1) + (0,)
    return e, {'greedyav': committee, 'ccav': committee, 'greedyav_fails': 'pjr', 'ccav_fails': 'pjr'}


def _monroe_pjr(k=None):
    k = 6 if k is None else k
    if k < 6:
        raise ElectionError('monroe-pjr needs k >= 6')
    parties = ['A'] + [f'X{j}' for j in range(1, k - 2)]
    ballots = [(['A'], 6)] + [([f'X{j}'], 1) for j in range(1, k - 2)]
    e = Election.from_lists(parties, ballots, k)
    committee = (3,) + (1,) * (k - 3)
    return e, {
        'monroe': committee, 'greedymonroe': committee, 'hareav': committee,
        'monroe_fails': 'pjr', 'greedymonroe_fails': 'pjr', 'hareav_fails': 'pjr',
    }


EXAMPLES = {
    'ex1': _ex1,
    'ex2': _ex2,
    'ex3': _ex3,
    'seqpav-jr': _seqpav_jr,
    'av-jr': _av_jr,
    'mav-jr': _mav_jr,
    'seqphragmen-ejr': _seqphragmen_ejr,
    'seqphragmen-table': _seqphragmen_table,
    'stv-ejr': _stv_ejr,
    'stv-table': _stv_table,
    'greedyav-pjr': _greedyav_pjr,
    'monroe-pjr': _monroe_pjr,
}


def paper_example(id: str, k: int | None = None) -> Example:
    '''Worked example election by id, optionally with a different committee size.'''
    try:
        build = EXAMPLES[id]
    except KeyError:
        raise ElectionError(f'unknown example {id!r}; choose from {", ".join(EXAMPLES)}') from None
    election, expected = build(k)
    return Example(id, election, expected)


# ------------------------------------------------------------------ graphs

@dataclass(frozen=True)
class Graph:
    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ElectionError('self-loop')
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ElectionError('edge endpoint out of range')
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ElectionError('duplicate edge')
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, 'edges', tuple(norm))

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.vertices)), default=0)

    def is_cubic(self) -> bool:
        return all(self.degree(v) == 3 for v in range(self.vertices))

    def has_independent_set(self, t: int) -> bool:
        '''Brute force over all ``t``-subsets of vertices.'''
        edges = set(self.edges)
        return any(
            not any((u, v) in edges for u, v in combinations(sub, 2))
            for sub in combinations(range(self.vertices), t)
        )


def parse_graph(text: str) -> Graph:
    '''Edge list: one ``u v`` pair per line, optional ``vertices: N`` line, ``#`` comments.'''
    vertices = None
    edges = []
    for raw in text.splitlines():
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('vertices'):
            vertices = int(line.partition(':')[2])
            continue
        u, v = (int(x) for x in line.split())
        edges.append((u, v))
    if vertices is None:
        vertices = 1 + max((max(e) for e in edges), default=-1)
    return Graph(vertices, tuple(edges))


def _vertex_parties(graph: Graph) -> list[str]:
    return [f'v{v}' for v in range(graph.vertices)]


def reduce_is_to_pav(graph: Graph, t: int) -> tuple[Election, F]:
    '''Party per vertex, a voter per edge, padding voters up to the max degree, ``k = t``.

    ``graph`` has an independent set of size ``t`` iff some committee
    reaches PAV score ``max_degree * t``.
    '''
    if not 1 <= t <= graph.vertices:
        raise ElectionError('need 1 <= t <= |V|')
    d = graph.max_degree
    ballots = [Ballot(frozenset(e), 1) for e in graph.edges]
    for v in range(graph.vertices):
        if d - graph.degree(v):
            ballots.append(Ballot(frozenset([v]), d - graph.degree(v)))
    return Election(tuple(_vertex_parties(graph)), tuple(ballots), t), F(d * t)


def reduce_is_to_maxphragmen(graph: Graph, t: int, require_cubic: bool = True) -> tuple[Election, F]:
    '''Party per vertex, a voter per edge, ``k = t``; load bound ``1/3`` on cubic graphs.

    With ``require_cubic=False`` any regular graph of degree ``d`` is
    accepted and the bound becomes ``1/d``.
    '''
    if require_cubic and not graph.is_cubic():
        raise ElectionError('graph is not cubic')
    degrees = {graph.degree(v) for v in range(graph.vertices)}
    if len(degrees) != 1 or 0 in degrees:
        raise ElectionError('graph is not regular')
    if not 1 <= t <= graph.vertices:
        raise ElectionError('need 1 <= t <= |V|')
    ballots = tuple(Ballot(frozenset(e), 1) for e in graph.edges)
    return Election(tuple(_vertex_parties(graph)), ballots, t), F(1, degrees.pop())


# --------------------------------------------------------------- random

BALLOT_MODELS = ('uniform', 'blocks', 'clustered')


def random_election(seed: int, n: int, parties: int, k: int, model: str = 'uniform',
                    density: float = 0.4, blocks: int | None = None) -> Election:
    '''Seeded random election; identical ballots are merged in first-seen order.

    ``uniform``: each party approved independently with probability
    ``density`` (an empty draw approves one uniform party). ``blocks``:
    parties split into ``blocks`` contiguous groups and each voter approves one
    whole group; ``blocks == parties`` gives singleton ballots.
    ``clustered``: voters approve a contiguous run of parties around a random
    centre.
    '''
    rng = random.Random(seed)
    names = [f'p{j}' for j in range(parties)]
    raw = []
    if model == 'uniform':
        for _ in range(n):
            a = frozenset(p for p in range(parties) if rng.random() < density)
            raw.append(a or frozenset([rng.randrange(parties)]))
    elif model == 'blocks':
        b = blocks or parties
        if not 1 <= b <= parties:
            raise ElectionError('need 1 <= blocks <= parties')
        groups = [frozenset(range(j * parties // b, (j + 1) * parties // b)) for j in range(b)]
        raw = [groups[rng.randrange(b)] for _ in range(n)]
    elif model == 'clustered':
        for _ in range(n):
            centre = rng.randrange(parties)
            radius = rng.randrange(max(1, parties // 2))
            raw.append(frozenset(range(max(0, centre - radius), min(parties, centre + radius + 1))))
    else:
        raise ElectionError(f'unknown ballot model {model!r}')
    counts: dict[frozenset, int] = {}
    for a in raw:
        counts[a] = counts.get(a, 0) + 1
    return Election(tuple(names), tuple(Ballot(a, c) for a, c in counts.items()), k)
