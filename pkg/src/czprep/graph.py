"""Simple graphs stored as packed GF(2) adjacency rows.

Vertices are dense indices ``0..n-1``. Row ``i`` is an int whose bit ``j`` is
set when ``ij`` is an edge. Every rewrite returns a new :class:`Graph`; the
``*_inplace`` helpers work directly on a list of rows for hot loops.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from czprep.gf2 import bits, mask_of, rank


class GraphError(ValueError):
    pass


def local_complement_inplace(rows: list[int], v: int) -> None:
    """Complement the neighbourhood of ``v`` in a mutable row list."""
    nb = rows[v]
    for w in bits(nb):
        rows[w] ^= nb & ~(1 << w)


def toggle_inplace(rows: list[int], u: int, v: int) -> None:
    rows[u] ^= 1 << v
    rows[v] ^= 1 << u


class Graph:
    """Immutable simple graph.

    Parameters
    ----------
    n : int
        Number of vertices.
    rows : sequence of int, optional
        Adjacency bitmask per vertex. Must be symmetric with zero diagonal.
    labels : sequence, optional
        External identifiers, one per vertex. Ignored by equality.
    """

    __slots__ = ("n", "rows", "labels")

    def __init__(
        self,
        n: int,
        rows: Sequence[int] | None = None,
        labels: Sequence[object] | None = None,
        check: bool = True,
    ) -> None:
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        rows = tuple(rows) if rows is not None else (0,) * n
        if len(rows) != n:
            raise GraphError(f"expected {n} rows, got {len(rows)}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError("label count does not match vertex count")
        if check:
            full = (1 << n) - 1
            for i, r in enumerate(rows):
                if r & ~full or r >> i & 1:
                    raise GraphError(f"row {i} out of range or has a loop")
                for j in bits(r):
                    if not rows[j] >> i & 1:
                        raise GraphError(f"adjacency not symmetric at ({i}, {j})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[object] | None = None
    ) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels, check=False)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, check=False)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << i) for i in range(n)], check=False)

    # -- queries -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, r in enumerate(self.rows):
            for j in bits(r >> (i + 1)):
                yield i, i + 1 + j

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks, ordered by least vertex."""
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def _check_set(self, x: int) -> None:
        if x < 0 or x & ~self.vertex_mask:
            raise GraphError("vertex set outside the graph's vertex range")

    # -- rewrites ----------------------------------------------------------

    def _derive(self, rows: list[int]) -> Graph:
        return Graph(self.n, rows, self.labels, check=False)

    def local_complement(self, v: int) -> Graph:
        self._check_vertex(v)
        rows = list(self.rows)
        local_complement_inplace(rows, v)
        return self._derive(rows)

    def toggle_edge(self, u: int, v: int) -> Graph:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise GraphError("cannot toggle a loop")
        rows = list(self.rows)
        toggle_inplace(rows, u, v)
        return self._derive(rows)

    def complement_on(self, x: int | Iterable[int]) -> Graph:
        """Replace the induced subgraph on ``x`` by its complement."""
        x = as_mask(x)
        self._check_set(x)
        rows = list(self.rows)
        for i in bits(x):
            rows[i] ^= x & ~(1 << i)
        return self._derive(rows)

    def induced_subgraph(self, s: int | Iterable[int]) -> Graph:
        """Induced subgraph on ``s``, relabelled ``0..|s|-1`` in index order.

        ``labels`` of the result carry the source labels (or source indices
        when the source is unlabelled) so the pieces can be mapped back.
        """
        s = as_mask(s)
        self._check_set(s)
        verts = list(bits(s))
        pos = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            r = 0
            for w in bits(self.rows[v] & s):
                r |= 1 << pos[w]
            rows.append(r)
        src = self.labels if self.labels is not None else range(self.n)
        return Graph(len(verts), rows, [src[v] for v in verts], check=False)

    def cut_rank(self, x: int | Iterable[int]) -> int:
        """GF(2) rank of the ``X x (V - X)`` adjacency submatrix."""
        x = as_mask(x)
        self._check_set(x)
        if x == 0 or x == self.vertex_mask:
            raise GraphError("cut-rank needs a proper nonempty vertex subset")
        rest = self.vertex_mask & ~x
        return rank(self.rows[i] & rest for i in bits(x))

    def without_edges_at(self, u: int) -> Graph:
        """``G`` with every edge incident to ``u`` removed."""
        rows = list(self.rows)
        for w in bits(rows[u]):
            rows[w] &= ~(1 << u)
        rows[u] = 0
        return self._derive(rows)

    def disjoint_union_on(self, *parts: int) -> Graph:
        """Keep only edges with both ends inside one of ``parts``."""
        rows = [0] * self.n
        for p in parts:
            for i in bits(p):
                rows[i] = self.rows[i] & p
        return self._derive(rows)


def as_mask(x: int | Iterable[int]) -> int:
    return x if isinstance(x, int) else mask_of(x)


def local_complement(g: Graph, v: int) -> Graph:
    return g.local_complement(v)


def toggle_edge(g: Graph, u: int, v: int) -> Graph:
    return g.toggle_edge(u, v)


def complement_on(g: Graph, x: int | Iterable[int]) -> Graph:
    return g.complement_on(x)


def induced_subgraph(g: Graph, s: int | Iterable[int]) -> Graph:
    return g.induced_subgraph(s)


def cut_rank(g: Graph, x: int | Iterable[int]) -> int:
    return g.cut_rank(x)
