"""Joining two sides of a low cut-rank partition.

Given ``X`` with cut-rank ``k``, pick ``A`` (``k`` vertices outside ``X``
whose X-neighbourhoods span all others) and ``Y`` the rest. Starting from
``G[X+A]`` and ``G[Y]`` side by side, each ``y`` in ``Y`` picks up its
X-neighbourhood by pushing through the ``a`` in ``A_y`` (two toggles each),
and the edges between ``A`` and ``Y`` are then fixed directly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from czprep.gf2 import XorBasis, bits
from czprep.graph import Graph, GraphError, as_mask
from czprep.opseq import OperationSequence, SequenceBuilder, naive_sequence, toggles_to

EXHAUSTIVE_LIMIT = 16
BASE_CASE = 4


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class CutWitness:
    x: int
    a: tuple[int, ...]
    a_y: dict  # y -> bitmask over vertices of A

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def a_mask(self) -> int:
        m = 0
        for v in self.a:
            m |= 1 << v
        return m

    def y_mask(self, n: int) -> int:
        return ((1 << n) - 1) & ~self.x & ~self.a_mask

    def validate(self, g: Graph) -> None:
        x, a = self.x, self.a_mask
        if x & a:
            raise WitnessError("A must lie outside X")
        if len(self.a) != g.cut_rank(x):
            raise WitnessError("|A| differs from the cut-rank of X")
        basis = XorBasis()
        for v in self.a:
            if not basis.add(g.rows[v] & x):
                raise WitnessError("X-neighbourhoods of A are dependent")
        y = self.y_mask(g.n)
        if set(self.a_y) != set(bits(y)):
            raise WitnessError("A_y must be given for exactly the vertices of Y")
        for yv, ay in self.a_y.items():
            if ay & ~a:
                raise WitnessError(f"A_{yv} is not a subset of A")
            acc = 0
            for v in bits(ay):
                acc ^= g.rows[v] & x
            if acc != g.rows[yv] & x:
                raise WitnessError(f"A_{yv} does not reproduce N({yv}) & X")


def find_spanning_rows(g: Graph, x) -> CutWitness:
    """Witness for the cut ``X``: a basis ``A`` of X-neighbourhoods and each ``A_y``."""
    x = as_mask(x)
    full = g.vertex_mask
    if x == 0 or x == full:
        raise GraphError("cut needs a proper nonempty vertex subset")
    basis = XorBasis()
    a: list[int] = []
    rest = []
    for v in bits(full & ~x):
        if basis.add(g.rows[v] & x):
            a.append(v)
        else:
            rest.append(v)
    a_y = {}
    for y in rest:
        combo = basis.express(g.rows[y] & x)
        assert combo is not None
        m = 0
        for idx in bits(combo):
            m |= 1 << a[idx]
        a_y[y] = m
    w = CutWitness(x, tuple(a), a_y)
    return w


def join_bound(k: int, y: int) -> int:
    """``2k|Y| + k^2 + k|Y| + k(k-1)/2``."""
    return 2 * k * y + k * k + k * y + k * (k - 1) // 2


def join_start(g: Graph, w: CutWitness) -> Graph:
    """``G[X+A]`` and ``G[Y]`` side by side on the full vertex set."""
    xa = w.x | w.a_mask
    return g.disjoint_union_on(xa, w.y_mask(g.n))


def join_across_cut(g: Graph, w: CutWitness, check: bool = True) -> OperationSequence:
    """Ops from :func:`join_start` to ``g``.

    Edges inside ``A`` are removed first so that every ``a`` only sees ``X``
    while the pushes run; they are restored with the ``A``-``Y`` edges at the
    end. Toggles: ``2 sum |A_y| + |E(A, Y)| + 2 |E(A)|``, inside
    :func:`join_bound`.
    """
    if check:
        w.validate(g)
    builder = SequenceBuilder(join_start(g, w))
    amask = w.a_mask
    for a in w.a:
        toggles_to(builder, a, builder.rows[a] & ~amask)
    for y in sorted(w.a_y):
        for a in bits(w.a_y[y]):
            builder.lc(a)
            builder.toggle(y, a)
            builder.lc(a)
            builder.toggle(y, a)
    for a in w.a:
        toggles_to(builder, a, g.rows[a])
    return builder.sequence()


# -- cut finders ---------------------------------------------------------------

CutFinder = Callable[[Graph, random.Random], "int | None"]


def _useful(g: Graph, x: int) -> int | None:
    """Cut-rank of ``x`` if strictly below ``min(|X|, |V-X|)``, else None."""
    r = g.cut_rank(x)
    return r if r < min(x.bit_count(), (g.vertex_mask & ~x).bit_count()) else None


def _orient(g: Graph, x: int) -> int:
    """Return the larger side, so that ``|X| >= |V - X|``."""
    other = g.vertex_mask & ~x
    return x if x.bit_count() >= other.bit_count() else other


def _score(g: Graph, x: int, r: int) -> tuple[int, int]:
    side = min(x.bit_count(), g.n - x.bit_count())
    return (r, -side)


def component_cut(g: Graph) -> int | None:
    comps = g.components()
    if len(comps) < 2:
        return None
    return _orient(g, comps[0])


def greedy_cut(g: Graph, rng: random.Random, trials: int = 64) -> int | None:
    """Best useful cut among random bisections refined by single-vertex moves."""
    comp = component_cut(g)
    if comp is not None:
        return comp
    n = g.n
    if n < 4:
        return None
    best = None
    best_score = None
    verts = list(range(n))
    for _ in range(trials):
        size = rng.randint(2, n - 2)
        x = 0
        for v in rng.sample(verts, size):
            x |= 1 << v
        improved = True
        cur = g.cut_rank(x)
        while improved:
            improved = False
            for v in verts:
                y = x ^ (1 << v)
                if y.bit_count() < 2 or y.bit_count() > n - 2:
                    continue
                r = g.cut_rank(y)
                if r < cur:
                    x, cur, improved = y, r, True
        r = _useful(g, x)
        if r is None:
            continue
        s = _score(g, x, r)
        if best_score is None or s < best_score:
            best, best_score = x, s
    return None if best is None else _orient(g, best)


def exhaustive_cut(g: Graph, rng: random.Random | None = None) -> int | None:
    """Best useful cut over all subsets (``n <= 16``)."""
    n = g.n
    if n > EXHAUSTIVE_LIMIT:
        raise GraphError(f"exhaustive cut search limited to n <= {EXHAUSTIVE_LIMIT}")
    if n < 2:
        return None
    best = None
    best_score = None
    top = 1 << (n - 1)
    # vertex n-1 always on the complement side, so each cut is seen once
    for x in range(1, top):
        r = _useful(g, x)
        if r is None:
            continue
        s = _score(g, x, r)
        if best_score is None or s < best_score:
            best, best_score = x, s
    return None if best is None else _orient(g, best)


FINDERS: dict[str, CutFinder] = {
    "greedy": lambda g, rng: greedy_cut(g, rng),
    "exhaustive": lambda g, rng: exhaustive_cut(g) if g.n <= EXHAUSTIVE_LIMIT else greedy_cut(g, rng),
    "none": lambda g, rng: None,
}


def synth_by_cuts(
    g: Graph,
    finder: str | CutFinder = "greedy",
    seed: int = 0,
    fallback: Callable[[Graph], OperationSequence] | None = None,
    top_cut: int | None = None,
) -> OperationSequence:
    """Prepare ``g`` by recursive cut-joins; correct for any finder.

    At every level the cut-join result is compared with ``fallback`` (naive
    toggling by default) on the same piece and the cheaper one is kept, so
    the total never exceeds the fallback's cost. ``top_cut`` supplies the
    first cut directly (the ``none`` policy with a user cut file).
    """
    find = FINDERS[finder] if isinstance(finder, str) else finder
    fallback = naive_sequence if fallback is None else fallback

    def solve(sub: Graph, depth: int, path: str, forced: int | None) -> OperationSequence:
        base = fallback(sub)
        if sub.n <= BASE_CASE or sub.num_edges == 0:
            return base
        x = forced
        if x is None:
            x = find(sub, random.Random(f"{seed}:{path}"))
        elif _useful(sub, x) is None:
            raise GraphError("supplied cut does not have cut-rank below min(|X|, |V-X|)")
        if x is None:
            return base
        w = find_spanning_rows(sub, x)
        xa = w.x | w.a_mask
        y = w.y_mask(sub.n)
        left = solve(sub.induced_subgraph(xa), depth + 1, path + "L", None)
        right = solve(sub.induced_subgraph(y), depth + 1, path + "R", None) if y else None
        builder = SequenceBuilder(Graph.empty(sub.n))
        builder.extend(left.relabel(list(bits(xa)), sub.n))
        if right is not None:
            builder.extend(right.relabel(list(bits(y)), sub.n))
        builder.extend(join_across_cut(sub, w, check=False))
        joined = builder.sequence()
        return joined if joined.cz_cost < base.cz_cost else base

    return solve(g, 0, "", top_cut)


def planted_cut_graph(n: int, x_size: int, k: int, rng: random.Random, p: float = 0.5) -> tuple[Graph, int]:
    """Random graph whose cut ``X = {0..x_size-1}`` has cut-rank at most ``k``.

    The X-neighbourhood of every outside vertex is a random combination of
    ``k`` random patterns; everything else is ``G(n, p)``.
    """
    x = (1 << x_size) - 1
    patterns = [rng.getrandbits(x_size) for _ in range(k)]
    rows = [0] * n
    def link(u: int, v: int) -> None:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    for i, j in itertools.combinations(range(n), 2):
        inside = j < x_size or i >= x_size
        if inside and rng.random() < p:
            link(i, j)
    for v in range(x_size, n):
        nb = 0
        for pat in patterns:
            if rng.random() < 0.5:
                nb ^= pat
        for u in bits(nb):
            link(u, v)
    return Graph(n, rows, check=False), x
