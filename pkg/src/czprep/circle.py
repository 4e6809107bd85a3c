"""Circle graphs given by an interval overlap witness.

The synthesis isolates a helper vertex ``u``, builds ``G - E_u`` by splitting
the colour classes of ``G - u`` in halves and sweeping endpoints to add the
edges between the halves, then adds the edges at ``u`` directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from czprep.gf2 import bits
from czprep.graph import Graph, GraphError, as_mask
from czprep.opseq import OperationSequence, SequenceBuilder


class IntervalError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalSystem:
    """One closed interval ``(left, right)`` per vertex, all endpoints distinct."""

    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ivs = tuple((int(a), int(b)) for a, b in self.intervals)
        seen: set[int] = set()
        for v, (a, b) in enumerate(ivs):
            if a >= b:
                raise IntervalError(f"interval {v} has left >= right: [{a}, {b}]")
            for e in (a, b):
                if e in seen:
                    raise IntervalError(f"endpoint {e} is shared")
                seen.add(e)
        object.__setattr__(self, "intervals", ivs)

    @property
    def n(self) -> int:
        return len(self.intervals)

    def endpoints(self) -> list[tuple[int, int]]:
        """``(position, vertex)`` for all 2n endpoints in increasing order."""
        pts = []
        for v, (a, b) in enumerate(self.intervals):
            pts.append((a, v))
            pts.append((b, v))
        pts.sort()
        return pts

    @classmethod
    def from_word(cls, word: Sequence[int]) -> IntervalSystem:
        """Build from a double-occurrence word: position ``i`` holds a vertex."""
        first: dict[int, int] = {}
        ivs: dict[int, tuple[int, int]] = {}
        for i, v in enumerate(word):
            if v in first:
                ivs[v] = (first[v], i)
            else:
                first[v] = i
        n = len(ivs)
        if sorted(ivs) != list(range(n)) or len(word) != 2 * n:
            raise IntervalError("word must contain each of 0..n-1 exactly twice")
        return cls(tuple(ivs[v] for v in range(n)))


def overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Intersecting and neither contains the other (endpoints distinct)."""
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


def overlap_graph(sys: IntervalSystem) -> Graph:
    ivs = sys.intervals
    n = len(ivs)
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if overlaps(ivs[i], ivs[j])]
    )


def check_represents(g: Graph, sys: IntervalSystem) -> None:
    if sys.n != g.n:
        raise IntervalError(f"interval system has {sys.n} intervals, graph has {g.n} vertices")
    if overlap_graph(sys) != g:
        raise IntervalError("overlap graph of the intervals differs from the graph")


def sweep_toggle_bipartite(
    h: Graph, sys: IntervalSystem, a, b, u: int
) -> OperationSequence:
    """Ops turning ``h`` into ``h`` with the A-B overlap edges complemented.

    ``u`` must be isolated in ``h`` and outside ``A`` and ``B``. Every toggle
    is incident to ``u``; there are exactly ``2 |A| + 2 |B|`` of them and ``u``
    is isolated again at the end.
    """
    a, b = as_mask(a), as_mask(b)
    if a & b:
        raise GraphError("A and B must be disjoint")
    if (a | b) >> u & 1:
        raise GraphError("helper vertex must lie outside A and B")
    if h.rows[u]:
        raise GraphError(f"helper vertex {u} is not isolated")
    if sys.n != h.n:
        raise IntervalError("interval system and graph disagree on n")
    builder = SequenceBuilder(h)
    _sweep(builder, sys, a, b, u)
    return builder.sequence()


def _sweep(builder: SequenceBuilder, sys: IntervalSystem, a: int, b: int, u: int) -> None:
    for _, w in sys.endpoints():
        if a >> w & 1:
            builder.lc(u)
            builder.toggle(u, w)
            builder.lc(u)
        elif b >> w & 1:
            builder.toggle(u, w)


def greedy_color(g: Graph, order: Sequence[int] | None = None) -> list[int]:
    """Smallest-available-colour greedy colouring in ``order``."""
    order = range(g.n) if order is None else order
    color = [-1] * g.n
    for v in order:
        used = {color[w] for w in bits(g.rows[v]) if color[w] >= 0}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def left_endpoint_order(sys: IntervalSystem) -> list[int]:
    return sorted(range(sys.n), key=lambda v: sys.intervals[v][0])


def pick_helper(g: Graph) -> int:
    """Highest-degree vertex, lowest index on ties."""
    return max(range(g.n), key=lambda v: (g.degree(v), -v))


def color_classes(g: Graph, sys: IntervalSystem, u: int) -> list[int]:
    """Greedy classes of ``G`` in left-endpoint order, with ``u`` removed.

    Dropping ``u`` from a proper colouring of ``G`` keeps at most as many
    classes as the greedy colouring of ``G`` itself.
    """
    color = greedy_color(g, left_endpoint_order(sys))
    k = max(color, default=-1) + 1
    classes = [0] * k
    for v, c in enumerate(color):
        if v != u:
            classes[c] |= 1 << v
    return [c for c in classes if c]


def circle_bound(n: int, k: int) -> int:
    """``(2n - 2) * ceil(log2 k) + n - 1`` (k >= 1)."""
    if n == 0:
        return 0
    return (2 * n - 2) * math.ceil(math.log2(max(k, 1))) + n - 1


def synth_circle(
    g: Graph, sys: IntervalSystem, u: int | None = None, info: dict | None = None
) -> OperationSequence:
    """Prepare ``g`` from the edgeless graph.

    The toggle count is at most ``circle_bound(n, k)`` where ``k`` is the
    greedy colour count; ``info`` (when given) receives ``helper``, ``k``,
    ``depth`` and ``bound``.
    """
    check_represents(g, sys)
    n = g.n
    builder = SequenceBuilder(Graph.empty(n))
    if n == 0 or g.num_edges == 0:
        if info is not None:
            info.update(helper=None, k=1 if n else 0, k_used=0, depth=0, bound=circle_bound(n, 1))
        return builder.sequence()
    u = pick_helper(g) if u is None else u
    classes = color_classes(g, sys, u)
    k_used = len(classes) or 1
    k_full = max(greedy_color(g, left_endpoint_order(sys))) + 1
    depth = _build_classes(builder, sys, classes, u)
    for w in bits(g.rows[u]):
        builder.toggle(u, w)
    if info is not None:
        info.update(helper=u, k=k_full, k_used=k_used, depth=depth, bound=circle_bound(n, k_full))
    return builder.sequence()


def _build_classes(builder: SequenceBuilder, sys: IntervalSystem, classes: list[int], u: int) -> int:
    """Build the overlap graph on the union of ``classes``; returns recursion depth."""
    if len(classes) <= 1:
        return 0
    half = len(classes) // 2
    left, right = classes[:half], classes[half:]
    d1 = _build_classes(builder, sys, left, u)
    d2 = _build_classes(builder, sys, right, u)
    a = 0
    for c in left:
        a |= c
    b = 0
    for c in right:
        b |= c
    _sweep(builder, sys, a, b, u)
    return 1 + max(d1, d2)
