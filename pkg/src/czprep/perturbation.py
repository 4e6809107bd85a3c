"""CZ sequences between a graph and a low-rank perturbation of it.

The adjacency difference ``D`` is written as an off-diagonal sum of rank-one
terms ``x x^T``; each term is one complementation on the support of ``x``,
and each complementation costs at most ``2n - 2`` toggles through a helper
vertex.

Because only off-diagonal entries of ``D`` matter, its diagonal is free.
With a free diagonal, peeling row ``i`` (forcing its diagonal to 1) removes
the term ``v v^T`` with ``v = row_i + e_i`` and zeroes row ``i``. Every
optimal factorisation can be reached by some order of such peels, so
``factor_symmetric`` searches peel orders by iterative deepening, pruned by
the rank of off-diagonal blocks (a lower bound on any completion's rank).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from czprep.gf2 import bits, rank, symmetric_rank_one_sum
from czprep.graph import Graph, as_mask
from czprep.opseq import OperationSequence, SequenceBuilder, toggles_to

DEFAULT_SEARCH_BUDGET = 50_000


class DeltaError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricDelta:
    """Symmetric GF(2) matrix as bit rows.

    With ``free_diagonal`` the diagonal entries are ignored and may be chosen
    by the factoriser; otherwise they are part of the matrix to reproduce.
    """

    n: int
    rows: tuple[int, ...]
    free_diagonal: bool = True

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if len(rows) != self.n:
            raise DeltaError(f"expected {self.n} rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for i, r in enumerate(rows):
            if r & ~full:
                raise DeltaError(f"row {i} out of range")
            for j in bits(r):
                if not rows[j] >> i & 1:
                    raise DeltaError(f"matrix is not symmetric at ({i}, {j})")
        if self.free_diagonal:
            rows = tuple(r & ~(1 << i) for i, r in enumerate(rows))
        object.__setattr__(self, "rows", rows)

    @classmethod
    def between(cls, g: Graph, h: Graph) -> SymmetricDelta:
        if g.n != h.n:
            raise DeltaError("graphs must share a vertex set")
        return cls(g.n, tuple(a ^ b for a, b in zip(g.rows, h.rows)))

    @property
    def offdiag_rank(self) -> int:
        return rank(r & ~(1 << i) for i, r in enumerate(self.rows))


@dataclass
class Factorization:
    sets: list[int]
    lower_bound: int
    exhausted: bool = False
    notes: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.sets)


def _peel_free(rows: Sequence[int], i: int) -> tuple[tuple[int, ...], int]:
    v = rows[i] | (1 << i)
    out = list(rows)
    for k in bits(v):
        out[k] = (out[k] ^ v) & ~(1 << k)
    return tuple(out), v


def _block_lower_bound(rows: Sequence[int]) -> int:
    """Max rank of ``R[I, J]`` over a few disjoint row/column splits."""
    live = [i for i, r in enumerate(rows) if r]
    if not live:
        return 0
    best = 1
    half = len(live) // 2
    splits = [
        (live[:half], live[half:]),
        (live[::2], live[1::2]),
        (live[: len(live) // 3] + live[2 * len(live) // 3:], live[len(live) // 3: 2 * len(live) // 3]),
    ]
    for left, right in splits:
        if not left or not right:
            continue
        cols = 0
        for j in right:
            cols |= 1 << j
        best = max(best, rank(rows[i] & cols for i in left))
    return best


def _factor_fixed(rows: Sequence[int]) -> list[int]:
    """Rank-one terms summing exactly to a symmetric matrix (diagonal included).

    Uses ``rank`` terms when some diagonal entry is set and ``rank + 1``
    for a nonzero alternating matrix. Diagonal pivots are chosen so the
    remainder does not become alternating whenever possible.
    """
    work = list(rows)
    out: list[int] = []
    while any(work):
        diag = [i for i, r in enumerate(work) if r >> i & 1]
        if not diag:
            i = next(i for i, r in enumerate(work) if r)
            j = (work[i] & -work[i]).bit_length() - 1
            v = work[i] ^ work[j]
        else:
            v = work[diag[0]]
            for i in diag:
                cand = work[i]
                trial = list(work)
                for k in bits(cand):
                    trial[k] ^= cand
                if not any(trial) or any(r >> k & 1 for k, r in enumerate(trial)):
                    v = cand
                    break
        for k in bits(v):
            work[k] ^= v
        out.append(v)
    return out


def _greedy_free(rows: Sequence[int]) -> list[int]:
    cur = tuple(rows)
    out = []
    while True:
        i = next((i for i, r in enumerate(cur) if r), None)
        if i is None:
            return out
        cur, v = _peel_free(cur, i)
        out.append(v)


def factor_symmetric(d: SymmetricDelta, budget: int = DEFAULT_SEARCH_BUDGET) -> Factorization:
    """Vertex sets whose complementations compose to ``d``.

    With a free diagonal the search returns a minimum-size list whenever it
    finishes within ``budget`` peel steps; otherwise the best list found.
    The result never exceeds ``offdiag_rank + 1`` sets.
    """
    rows = d.rows
    if not any(rows):
        return Factorization([], 0, exhausted=True)
    if not d.free_diagonal:
        sets = _factor_fixed(rows)
        return Factorization(sets, rank(rows), exhausted=True)

    best = _factor_fixed(rows)
    greedy = _greedy_free(rows)
    if len(greedy) < len(best):
        best = greedy
    lower = _block_lower_bound(rows)
    steps = 0
    exhausted = True

    def search(cur: tuple[int, ...], left: int, dead: set) -> list[int] | None:
        nonlocal steps
        if not any(cur):
            return []
        if left == 0 or (cur, left) in dead or _block_lower_bound(cur) > left:
            return None
        for i, r in enumerate(cur):
            if not r:
                continue
            steps += 1
            if steps > budget:
                raise _BudgetExceeded
            nxt, v = _peel_free(cur, i)
            tail = search(nxt, left - 1, dead)
            if tail is not None:
                return [v] + tail
        dead.add((cur, left))
        return None

    depth = lower
    try:
        while depth < len(best):
            found = search(rows, depth, set())
            if found is not None:
                best = found
                break
            depth += 1
    except _BudgetExceeded:
        exhausted = False
    return Factorization(best, max(lower, min(depth, len(best))), exhausted, {"steps": steps})


class _BudgetExceeded(Exception):
    pass


def reconstruct(sets: Iterable[int], n: int, free_diagonal: bool = True) -> tuple[int, ...]:
    rows = symmetric_rank_one_sum(list(sets), n)
    if free_diagonal:
        rows = [r & ~(1 << i) for i, r in enumerate(rows)]
    return tuple(rows)


def realize_complementation(g: Graph, x, u: int | None = None) -> OperationSequence:
    """Ops from ``g`` to ``g`` complemented on ``x`` with at most ``2n - 2`` toggles.

    The helper ``u`` first gets neighbourhood ``x - {u}``; one LC at ``u``
    then complements ``x - {u}``, and ``u``'s neighbourhood is finally set to
    what the complemented graph requires. Without ``u`` every helper is
    tried and the cheapest kept (lowest index on ties).
    """
    x = as_mask(x)
    if x.bit_count() <= 1 or g.n == 0:
        return OperationSequence(g.n)
    if u is None:
        return min(
            (realize_complementation(g, x, w) for w in range(g.n)),
            key=lambda s: s.cz_cost,
        )
    builder = SequenceBuilder(g)
    ubit = 1 << u
    final = g.rows[u] ^ (x & ~ubit) if x & ubit else g.rows[u]
    toggles_to(builder, u, x & ~ubit)
    builder.lc(u)
    toggles_to(builder, u, final)
    return builder.sequence()


def synth_perturbation(
    g: Graph, h: Graph, info: dict | None = None, budget: int = DEFAULT_SEARCH_BUDGET
) -> OperationSequence:
    """Ops from ``g`` to ``h``; at most ``(#sets) * (2n - 2)`` toggles."""
    delta = SymmetricDelta.between(g, h)
    fac = factor_symmetric(delta, budget)
    builder = SequenceBuilder(g)
    for x in fac.sets:
        builder.extend(realize_complementation(builder.graph, x))
    if info is not None:
        info.update(
            sets=len(fac.sets),
            lower_bound=fac.lower_bound,
            optimal=fac.exhausted,
            offdiag_rank=delta.offdiag_rank,
            bound=len(fac.sets) * max(2 * g.n - 2, 0),
        )
    return builder.sequence()


def perturbation_bound(n: int, p: int) -> int:
    """``(2p + 2) n - 2p - 2``."""
    return (2 * p + 2) * n - 2 * p - 2
