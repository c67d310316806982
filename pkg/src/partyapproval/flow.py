'''Small Dinic max-flow over arbitrary ordered numbers (int or Fraction).

Infinite capacity is represented by ``None``. Arc order is insertion order,
which makes the returned cut deterministic.
'''

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list = []

    def add_arc(self, u: int, v: int, capacity=None) -> int:
        '''Add arc u->v; returns the arc id (its reverse is ``id ^ 1``).'''
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def _residual(self, arc: int) -> bool:
        c = self.cap[arc]
        return c is None or c > 0

    def _levels(self, s: int, t: int):
        level = [-1] * self.size
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.head[u]:
                v = self.to[arc]
                if level[v] < 0 and self._residual(arc):
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _push(self, u, t, limit, level, it):
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            arc = self.head[u][it[u]]
            v = self.to[arc]
            if level[v] == level[u] + 1 and self._residual(arc):
                c = self.cap[arc]
                amount = limit if c is None else (c if limit is None else min(limit, c))
                pushed = self._push(v, t, amount, level, it)
                if pushed:
                    if self.cap[arc] is not None:
                        self.cap[arc] -= pushed
                    if self.cap[arc ^ 1] is not None:
                        self.cap[arc ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int):
        '''Maximum s-t flow value. Raises if it is unbounded.'''
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.size
            while True:
                pushed = self._push(s, t, None, level, it)
                if pushed is None:
                    raise ValueError('unbounded flow')
                if not pushed:
                    break
                total += pushed

    def source_side(self, s: int) -> set[int]:
        '''Nodes reachable from ``s`` in the residual network (call after max_flow).'''
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.head[u]:
                v = self.to[arc]
                if v not in seen and self._residual(arc):
                    seen.add(v)
                    queue.append(v)
        return seen

    def flow_on(self, arc: int):
        '''Flow currently routed over forward arc ``arc``.'''
        return self.cap[arc ^ 1]
