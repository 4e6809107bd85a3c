"""Trigraphs, contraction sequences and synthesis by uncontraction.

A contraction ``(u, v)`` merges the class labelled ``v`` into the class
labelled ``u``. Classes are stored as bitmasks of original vertices.

Synthesis runs the merges backwards. Each class keeps one representative
(its smallest vertex) and the realised graph has an edge between two
representatives exactly when they are adjacent in ``G``; all other vertices
are isolated. Splitting a class promotes a fresh representative, which
copies the old representative's neighbourhood (one or two CZs) and then
needs at most one correction per red neighbour of the split class.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from czprep.gf2 import bits
from czprep.graph import Graph
from czprep.opseq import OperationSequence, SequenceBuilder

NONE, BLACK, RED = 0, 1, 2


class ContractionError(ValueError):
    pass


@dataclass(frozen=True)
class ContractionSequence:
    merges: tuple[tuple[int, int], ...]
    width: int | None = None  # declared; checked on replay when given

    def __post_init__(self) -> None:
        object.__setattr__(self, "merges", tuple((int(u), int(v)) for u, v in self.merges))


@dataclass
class Trigraph:
    """Classes keyed by label, with black and red adjacency between labels."""

    classes: dict[int, int]
    black: dict[int, set[int]] = field(default_factory=dict)
    red: dict[int, set[int]] = field(default_factory=dict)

    @classmethod
    def from_graph(cls, g: Graph) -> Trigraph:
        return cls(
            {v: 1 << v for v in range(g.n)},
            {v: set(bits(g.rows[v])) for v in range(g.n)},
            {v: set() for v in range(g.n)},
        )

    def copy(self) -> Trigraph:
        return Trigraph(
            dict(self.classes),
            {k: set(s) for k, s in self.black.items()},
            {k: set(s) for k, s in self.red.items()},
        )

    @property
    def red_degree(self) -> int:
        return max((len(s) for s in self.red.values()), default=0)

    def contract(self, u: int, v: int) -> None:
        """Merge class ``v`` into class ``u`` using the trigraph update rule."""
        if u not in self.classes or v not in self.classes:
            raise ContractionError(f"unknown class label in merge ({u}, {v})")
        if u == v:
            raise ContractionError(f"cannot merge class {u} with itself")
        nu = (self.black[u] | self.red[u]) - {v}
        nv = (self.black[v] | self.red[v]) - {u}
        new_black = {x for x in nu & nv if x in self.black[u] and x in self.black[v]}
        new_red = (nu | nv) - new_black
        for x in nu | nv:
            for table in (self.black, self.red):
                table[x].discard(u)
                table[x].discard(v)
        for x in new_black:
            self.black[x].add(u)
        for x in new_red:
            self.red[x].add(u)
        self.classes[u] |= self.classes.pop(v)
        del self.black[v], self.red[v]
        self.black[u] = new_black
        self.red[u] = new_red

    def check_against(self, g: Graph, only: int | None = None) -> None:
        """Black means all edges between the classes, red some but not all, none means none.

        With ``only`` set, just the pairs involving that class are checked
        (a contraction changes nothing else).
        """
        labels = list(self.classes)
        pairs = (
            [(only, q) for q in labels if q != only]
            if only is not None
            else itertools.combinations(labels, 2)
        )
        for p, q in pairs:
            if q in self.black[p] and q in self.red[p]:
                raise ContractionError("black and red edge sets overlap")
            seen = BLACK if q in self.black[p] else RED if q in self.red[p] else NONE
            rel = class_relation(g, self.classes[p], self.classes[q])
            if seen != rel:
                raise ContractionError(
                    f"trigraph edge {p}-{q} is {seen} but the graph says {rel}"
                )


def class_relation(g: Graph, p: int, q: int) -> int:
    hits = 0
    size_q = q.bit_count()
    full = True
    for v in bits(p):
        c = (g.rows[v] & q).bit_count()
        hits += c
        if c != size_q:
            full = False
    if hits == 0:
        return NONE
    return BLACK if full else RED


def replay_contractions(
    g: Graph, cs: ContractionSequence, check: bool = True
) -> tuple[list[Trigraph], int]:
    """All trigraphs ``G_n, ..., G_1`` and the largest red degree seen."""
    if len(cs.merges) != max(g.n - 1, 0):
        raise ContractionError(f"expected {max(g.n - 1, 0)} merges, got {len(cs.merges)}")
    t = Trigraph.from_graph(g)
    out = [t.copy()]
    width = 0
    for u, v in cs.merges:
        t.contract(u, v)
        if check:
            t.check_against(g, only=u)
        width = max(width, t.red_degree)
        out.append(t.copy())
    if cs.width is not None and width > cs.width:
        raise ContractionError(f"declared width {cs.width} but replay reaches red degree {width}")
    return out, width


def twinwidth_bound(n: int, k: int) -> int:
    return (k + 2) * n


def synth_twinwidth(
    g: Graph, cs: ContractionSequence, info: dict | None = None
) -> OperationSequence:
    """Prepare ``g`` from the edgeless graph by undoing the merges.

    Every split costs at most ``k + 2`` toggles (asserted), so the total is
    at most ``(k + 2) n`` for the measured width ``k``.
    """
    trigraphs, k = replay_contractions(g, cs)
    n = g.n
    builder = SequenceBuilder(Graph.empty(n))
    reps = 1 if n else 0
    step_costs = []
    for idx in range(len(cs.merges) - 1, -1, -1):
        u, v = cs.merges[idx]
        before = trigraphs[idx]  # u and v still separate
        merged = trigraphs[idx + 1]  # u holds the union
        pu, pv = before.classes[u], before.classes[v]
        old = min(bits(pu | pv))
        new = min(bits(pv)) if pu >> old & 1 else min(bits(pu))
        assert builder.rows[new] == 0, "fresh representative must be isolated"
        reps |= 1 << new
        want = g.rows[new] & reps
        adjacent = bool(g.rows[new] >> old & 1)
        copied = builder.rows[old] | ((1 << old) if adjacent else 0)
        corrections = (copied ^ want).bit_count()
        assert corrections <= len(merged.red[u]), "more corrections than red neighbours"
        before_cost = builder.cz
        if builder.rows[old] and (1 if adjacent else 2) + corrections < want.bit_count():
            builder.lc(old)
            builder.toggle(new, old)
            builder.lc(old)
            if not adjacent:
                builder.toggle(new, old)
        for w in bits(builder.rows[new] ^ want):
            builder.toggle(new, w)
        cost = builder.cz - before_cost
        assert cost <= k + 2, f"split step cost {cost} exceeds k + 2 = {k + 2}"
        step_costs.append(cost)
    if info is not None:
        info.update(width=k, bound=twinwidth_bound(n, k), step_costs=step_costs[::-1])
    return builder.sequence()


# -- finding sequences ----------------------------------------------------------


def greedy_contraction_sequence(g: Graph, budget: int = 8, seed: int = 0) -> ContractionSequence:
    """Heuristic sequence: repeatedly merge the pair that keeps red degrees lowest.

    ``budget`` randomised runs are made (the first breaks ties by index) and
    the sequence with the smallest measured width is returned.
    """
    n = g.n
    if n <= 1:
        return ContractionSequence((), 0)
    rng = random.Random(seed)
    best: tuple[int, tuple] | None = None
    for trial in range(max(1, budget)):
        merges, width = _greedy_run(g, rng if trial else None)
        if best is None or width < best[0]:
            best = (width, merges)
        if best[0] == 0:
            break
    return ContractionSequence(best[1], best[0])


def _greedy_run(g: Graph, rng: random.Random | None) -> tuple[tuple[tuple[int, int], ...], int]:
    labels = list(range(g.n))
    classes = {v: 1 << v for v in labels}
    rel = {(a, b): class_relation(g, classes[a], classes[b]) for a in labels for b in labels if a != b}
    red_deg = {v: 0 for v in labels}
    merges = []
    width = 0
    while len(labels) > 1:
        best = None
        for a, b in itertools.combinations(labels, 2):
            new_deg = 0
            worst = 0
            for x in labels:
                if x == a or x == b:
                    continue
                ra, rb = rel[a, x], rel[b, x]
                r = ra if ra == rb else RED
                d = red_deg[x] - (ra == RED) - (rb == RED) + (r == RED)
                if r == RED:
                    new_deg += 1
                worst = max(worst, d)
            score = (max(worst, new_deg), new_deg, rng.random() if rng else 0.0, a, b)
            if best is None or score < best[0]:
                best = (score, a, b)
        _, a, b = best
        for x in labels:
            if x == a or x == b:
                continue
            ra, rb = rel[a, x], rel[b, x]
            r = ra if ra == rb else RED
            red_deg[x] += -(ra == RED) - (rb == RED) + (r == RED)
            rel[a, x] = rel[x, a] = r
        labels.remove(b)
        classes[a] |= classes.pop(b)
        red_deg[a] = sum(1 for x in labels if x != a and rel[a, x] == RED)
        merges.append((a, b))
        width = max(width, max(red_deg[x] for x in labels))
    return tuple(merges), width


def exhaustive_contraction_sequence(g: Graph, max_n: int = 10) -> ContractionSequence:
    """Minimum-width sequence by iterative deepening over partitions (small ``n`` only)."""
    n = g.n
    if n > max_n:
        raise ContractionError(f"exhaustive search limited to n <= {max_n}")
    if n <= 1:
        return ContractionSequence((), 0)
    rows = g.rows

    def rel(p: int, q: int) -> int:
        hits = 0
        full = True
        sq = q.bit_count()
        for v in bits(p):
            c = (rows[v] & q).bit_count()
            hits += c
            if c != sq:
                full = False
        return NONE if hits == 0 else (BLACK if full else RED)

    def red_degrees(parts: tuple[int, ...]) -> int:
        worst = 0
        for p in parts:
            d = sum(1 for q in parts if q != p and rel(p, q) == RED)
            worst = max(worst, d)
        return worst

    for k in range(n):
        dead: set[tuple[int, ...]] = set()

        def search(parts: tuple[int, ...]) -> list[tuple[int, int]] | None:
            if len(parts) == 1:
                return []
            if parts in dead:
                return None
            for i, j in itertools.combinations(range(len(parts)), 2):
                merged = parts[i] | parts[j]
                nxt = tuple(sorted([p for t, p in enumerate(parts) if t not in (i, j)] + [merged]))
                if red_degrees(nxt) > k:
                    continue
                tail = search(nxt)
                if tail is not None:
                    return [(parts[i], parts[j])] + tail
            dead.add(parts)
            return None

        found = search(tuple(1 << v for v in range(n)))
        if found is not None:
            merges = [tuple(sorted((min(bits(p)), min(bits(q))))) for p, q in found]
            return ContractionSequence(tuple(merges), k)
    raise AssertionError("unreachable: width n-1 always suffices")
