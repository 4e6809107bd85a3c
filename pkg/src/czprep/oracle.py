"""Exact CZ-distance for small graphs by BFS over local-complementation orbits.

Every graph on ``n`` vertices is packed into an integer key with one bit per
vertex pair; pair ``(i, j)`` in row-major order ``k`` sits at bit
``m - 1 - k`` where ``m = n(n-1)/2``, so the numerically smallest key is the
lexicographically smallest upper-triangle bit-string. The orbit key of a
graph is the smallest key in its LC orbit.

For a given ``n`` the whole state space is materialised as numpy arrays:
LC transition tables, orbit keys by label propagation, and BFS levels over
orbits where one move is a single edge toggle on any orbit member.
Memory is about ``4 * 2**m * (n + 2)`` bytes: under 1 MB at n=6, about
75 MB at n=7. n=8 would need 2**28 states and is refused.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import numpy as np

from czprep.graph import Graph, local_complement_inplace
from czprep.opseq import LC, Operation, OperationSequence, Toggle

DEFAULT_ORBIT_CAP = 8
DEFAULT_DISTANCE_CAP = 7
HARD_DISTANCE_CAP = 7


class CapExceeded(ValueError):
    pass


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@lru_cache(maxsize=None)
def _pair_bit(n: int) -> dict[tuple[int, int], int]:
    pairs = _pairs(n)
    m = len(pairs)
    out = {}
    for k, (i, j) in enumerate(pairs):
        out[i, j] = out[j, i] = m - 1 - k
    return out


def graph_key(g: Graph) -> int:
    pos = _pair_bit(g.n)
    key = 0
    for u, v in g.edges():
        key |= 1 << pos[u, v]
    return key


def key_graph(n: int, key: int) -> Graph:
    pos = _pair_bit(n)
    return Graph.from_edges(n, [(i, j) for i, j in _pairs(n) if key >> pos[i, j] & 1])


def orbit(g: Graph, cap: int = DEFAULT_ORBIT_CAP) -> set[Graph]:
    """Closure of ``{g}`` under local complementation at every vertex."""
    if g.n > cap:
        raise CapExceeded(f"orbit enumeration capped at n={cap}, graph has n={g.n}")
    seen = {g.rows}
    queue = deque([g.rows])
    while queue:
        rows = queue.popleft()
        for v in range(g.n):
            if not rows[v]:
                continue
            nxt = list(rows)
            local_complement_inplace(nxt, v)
            t = tuple(nxt)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return {Graph(g.n, r, check=False) for r in seen}


def canonical_orbit_key(g: Graph, cap: int = DEFAULT_ORBIT_CAP) -> int:
    """Smallest packed key over the LC orbit of ``g``."""
    return min(graph_key(h) for h in orbit(g, cap))


def certify_lower_bound(g: Graph) -> int:
    """Sum over connected components of (size - 1); valid at any ``n``."""
    return sum(c.bit_count() - 1 for c in g.components())


class StateSpace:
    """All graphs on ``n`` vertices with LC tables, orbit keys and BFS levels."""

    def __init__(self, n: int) -> None:
        if n > HARD_DISTANCE_CAP:
            raise CapExceeded(f"exact state space limited to n <= {HARD_DISTANCE_CAP}")
        self.n = n
        self.pos = _pair_bit(n)
        self.m = len(_pairs(n))
        size = 1 << self.m
        dtype = np.int32 if self.m < 31 else np.int64
        keys = np.arange(size, dtype=dtype)
        self.lc = [self._lc_table(keys, v) for v in range(n)]
        self.canon = self._orbit_labels(keys)
        self._dist: dict[int, np.ndarray] = {}

    def _lc_table(self, keys: np.ndarray, v: int) -> np.ndarray:
        nb = {i: (keys >> self.pos[v, i]) & 1 for i in range(self.n) if i != v}
        out = keys.copy()
        others = sorted(nb)
        for a in range(len(others)):
            for b in range(a + 1, len(others)):
                i, j = others[a], others[b]
                out ^= (nb[i] & nb[j]) << self.pos[i, j]
        return out

    def _orbit_labels(self, keys: np.ndarray) -> np.ndarray:
        labels = keys.copy()
        while True:
            new = labels
            for table in self.lc:
                new = np.minimum(new, labels[table])
            new = new[new]
            if np.array_equal(new, labels):
                return labels
            labels = new

    def orbit_key(self, key: int) -> int:
        return int(self.canon[key])

    def distances_from(self, key: int) -> np.ndarray:
        """BFS levels over orbits, indexed by orbit key; -1 where unreached."""
        src = self.orbit_key(key)
        cached = self._dist.get(src)
        if cached is not None:
            return cached
        dist = np.full(1 << self.m, -1, dtype=np.int16)
        dist[src] = 0
        d = 0
        while True:
            members = np.nonzero(dist[self.canon] == d)[0]
            if members.size == 0:
                break
            grew = False
            for b in range(self.m):
                nbr = self.canon[members ^ (1 << b)]
                fresh = nbr[dist[nbr] == -1]
                if fresh.size:
                    dist[fresh] = d + 1
                    grew = True
            if not grew:
                break
            d += 1
        self._dist[src] = dist
        return dist

    def distance(self, a: int, b: int) -> int:
        return int(self.distances_from(b)[self.orbit_key(a)])

    def _lc_path(self, start: int, accept) -> tuple[int, list[int]]:
        """BFS inside the LC orbit of ``start`` until ``accept(key)`` holds."""
        parent: dict[int, tuple[int, int] | None] = {start: None}
        queue = deque([start])
        while queue:
            k = queue.popleft()
            if accept(k):
                path = []
                cur = k
                while parent[cur] is not None:
                    prev, v = parent[cur]
                    path.append(v)
                    cur = prev
                return k, path[::-1]
            for v in range(self.n):
                nk = int(self.lc[v][k])
                if nk not in parent:
                    parent[nk] = (k, v)
                    queue.append(nk)
        raise AssertionError("orbit search exhausted without a match")

    def witness(self, target: int, start: int) -> list[Operation]:
        """Optimal ops turning ``start`` into ``target``."""
        dist = self.distances_from(start)
        back: list[Operation] = []  # walks target -> start
        cur = target
        d = int(dist[self.orbit_key(cur)])
        while d > 0:
            def one_step_closer(k: int) -> bool:
                return any(
                    dist[self.canon[k ^ (1 << b)]] == d - 1 for b in range(self.m)
                )

            member, path = self._lc_path(cur, one_step_closer)
            back.extend(LC(v) for v in path)
            bit = next(b for b in range(self.m) if dist[self.canon[member ^ (1 << b)]] == d - 1)
            u, v = next(p for p, pb in self.pos.items() if pb == bit and p[0] < p[1])
            back.append(Toggle(u, v))
            cur = member ^ (1 << bit)
            d -= 1
        _, path = self._lc_path(cur, lambda k: k == start)
        back.extend(LC(v) for v in path)
        return back[::-1]


@lru_cache(maxsize=None)
def state_space(n: int) -> StateSpace:
    return StateSpace(n)


def _check_cap(n: int, cap: int) -> None:
    if n > min(cap, HARD_DISTANCE_CAP):
        raise CapExceeded(
            f"exact CZ-distance capped at n={min(cap, HARD_DISTANCE_CAP)}, graph has n={n}"
        )


def exact_cz_distance(g: Graph, h: Graph, cap: int = DEFAULT_DISTANCE_CAP) -> int:
    """Minimum number of edge toggles between ``g`` and ``h`` when LCs are free."""
    if g.n != h.n:
        raise ValueError("graphs must share a vertex set")
    _check_cap(g.n, cap)
    space = state_space(g.n)
    return space.distance(graph_key(g), graph_key(h))


def exact_cz(g: Graph, cap: int = DEFAULT_DISTANCE_CAP) -> int:
    return exact_cz_distance(g, Graph.empty(g.n), cap)


def optimal_sequence(
    g: Graph, start: Graph | None = None, cap: int = DEFAULT_DISTANCE_CAP
) -> OperationSequence:
    """A minimum-CZ sequence from ``start`` (default edgeless) to ``g``."""
    start = Graph.empty(g.n) if start is None else start
    _check_cap(g.n, cap)
    space = state_space(g.n)
    ops = space.witness(graph_key(g), graph_key(start))
    return OperationSequence(g.n, tuple(ops))
