"""Independent set instances turned into PAV and MaxPhragmen elections.

For every t the optimal committee crosses the threshold exactly when the
graph has an independent set of size t. Run with ``python demos/reductions.py``.
"""

from partyapproval import rules
from partyapproval.instances import Graph, reduce_is_to_maxphragmen, reduce_is_to_pav
from partyapproval.model import format_committee, pav_score

PRISM = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))
K33 = Graph(6, ((0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)))


def pav_table(name, graph):
    print(f'{name}: PAV reduction')
    for t in range(1, graph.vertices + 1):
        e, threshold = reduce_is_to_pav(graph, t)
        w = rules.pav_exact(e)
        score = pav_score(e, w)
        print(f'  t={t}  best {str(score):>8} vs {str(threshold):>3}  '
              f'reaches={score >= threshold!s:<5} IS={graph.has_independent_set(t)}')


def phragmen_table(name, graph):
    print(f'{name}: MaxPhragmen reduction')
    for t in range(1, graph.vertices + 1):
        e, bound = reduce_is_to_maxphragmen(graph, t)
        w = rules.max_phragmen_bruteforce(e)
        load = rules.max_load(e, w)
        print(f'  t={t}  load {str(load):>5} vs {bound}  {format_committee(e, w):<18} IS={graph.has_independent_set(t)}')


if __name__ == '__main__':
    for name, graph in (('prism', PRISM), ('K3,3', K33)):
        pav_table(name, graph)
        phragmen_table(name, graph)
