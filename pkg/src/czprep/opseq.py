"""Operation sequences: local complementations (free) and edge toggles (one CZ each).

Sequences are stored in replay order, leftmost op first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence, Union

from czprep.gf2 import bits
from czprep.graph import Graph, GraphError, local_complement_inplace, toggle_inplace


class LC(NamedTuple):
    v: int


class Toggle(NamedTuple):
    u: int
    v: int


Operation = Union[LC, Toggle]


class Gate(NamedTuple):
    name: str  # "H", "S" or "CZ"
    qubits: tuple[int, ...]


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class OperationSequence:
    n: int
    ops: tuple[Operation, ...] = ()

    def __post_init__(self) -> None:
        ops = tuple(self.ops)
        for op in ops:
            if isinstance(op, Toggle):
                if op.u == op.v:
                    raise SequenceError(f"toggle with equal endpoints {op.u}")
                if not (0 <= op.u < self.n and 0 <= op.v < self.n):
                    raise SequenceError(f"{op} out of range for n={self.n}")
            elif isinstance(op, LC):
                if not 0 <= op.v < self.n:
                    raise SequenceError(f"{op} out of range for n={self.n}")
            else:
                raise SequenceError(f"unknown operation {op!r}")
        object.__setattr__(self, "ops", ops)

    @property
    def cz_cost(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Toggle))

    @property
    def lc_count(self) -> int:
        return len(self.ops) - self.cz_cost

    def __len__(self) -> int:
        return len(self.ops)

    def __add__(self, other: OperationSequence) -> OperationSequence:
        return concat(self, other)

    def apply(self, start: Graph) -> Graph:
        return apply(self, start)

    def reverse(self) -> OperationSequence:
        return reverse(self)

    def relabel(self, mapping: Sequence[int] | Mapping[int, int], n: int) -> OperationSequence:
        """Rename vertex ``i`` to ``mapping[i]`` inside an ``n``-vertex host."""
        ops: list[Operation] = []
        for op in self.ops:
            if isinstance(op, LC):
                ops.append(LC(mapping[op.v]))
            else:
                ops.append(Toggle(mapping[op.u], mapping[op.v]))
        return OperationSequence(n, tuple(ops))

    def without_lcs(self) -> OperationSequence:
        return OperationSequence(self.n, tuple(op for op in self.ops if isinstance(op, Toggle)))


class SequenceBuilder:
    """Accumulates ops while tracking the current graph."""

    def __init__(self, start: Graph) -> None:
        self.n = start.n
        self.rows = list(start.rows)
        self.ops: list[Operation] = []
        self.cz = 0

    def lc(self, v: int) -> None:
        local_complement_inplace(self.rows, v)
        self.ops.append(LC(v))

    def toggle(self, u: int, v: int) -> None:
        toggle_inplace(self.rows, u, v)
        self.ops.append(Toggle(u, v))
        self.cz += 1

    def extend(self, seq: OperationSequence) -> None:
        for op in seq.ops:
            if isinstance(op, LC):
                self.lc(op.v)
            else:
                self.toggle(op.u, op.v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    @property
    def graph(self) -> Graph:
        return Graph(self.n, self.rows, check=False)

    def sequence(self) -> OperationSequence:
        return OperationSequence(self.n, tuple(self.ops))


def apply(seq: OperationSequence, start: Graph) -> Graph:
    if seq.n != start.n:
        raise SequenceError(f"sequence is for n={seq.n}, graph has n={start.n}")
    rows = list(start.rows)
    for op in seq.ops:
        if isinstance(op, LC):
            local_complement_inplace(rows, op.v)
        else:
            toggle_inplace(rows, op.u, op.v)
    return Graph(start.n, rows, start.labels, check=False)


def verify_prepares(seq: OperationSequence, target: Graph) -> bool:
    """True iff replaying ``seq`` from the edgeless graph lands exactly on ``target``."""
    if seq.n != target.n:
        return False
    return apply(seq, Graph.empty(seq.n)) == target


def concat(*seqs: OperationSequence) -> OperationSequence:
    if not seqs:
        raise SequenceError("concat needs at least one sequence")
    n = seqs[0].n
    ops: list[Operation] = []
    for s in seqs:
        if s.n != n:
            raise SequenceError(f"cannot concatenate sequences for n={n} and n={s.n}")
        ops.extend(s.ops)
    return OperationSequence(n, tuple(ops))


def reverse(seq: OperationSequence) -> OperationSequence:
    """Inverse rewrite: every op is an involution, so just reverse the order."""
    return OperationSequence(seq.n, seq.ops[::-1])


def push_neighborhood(g: Graph, u: int, v: int) -> tuple[Graph, OperationSequence]:
    """Rewrite ``(((G*v) + uv)*v) + uv`` at a cost of two CZs.

    The result differs from ``G`` only at ``u``: edges from ``u`` to
    ``N(u) & N(v)`` are removed and edges from ``u`` to
    ``N(v) - N(u) - {u}`` are added.
    """
    if u == v:
        raise GraphError("push_neighborhood needs distinct vertices")
    b = SequenceBuilder(g)
    b.lc(v)
    b.toggle(u, v)
    b.lc(v)
    b.toggle(u, v)
    return b.graph, b.sequence()


def compile_gates(seq: OperationSequence, start: Graph | None = None) -> list[Gate]:
    """Translate ops into H/S/CZ gates, tracking the graph to find neighbourhoods.

    ``LC(v)`` becomes ``S, H, S`` on ``v`` followed by ``S`` on each current
    neighbour of ``v``. ``S H S`` is sqrt(X)^dagger up to phase; together with
    ``S`` on the neighbours it maps the stabilizers of ``|G>`` onto those of
    ``|G*v>`` with all signs +1.
    """
    start = Graph.empty(seq.n) if start is None else start
    if start.n != seq.n:
        raise SequenceError("start graph and sequence disagree on n")
    rows = list(start.rows)
    gates: list[Gate] = []
    for op in seq.ops:
        if isinstance(op, LC):
            v = op.v
            gates.append(Gate("S", (v,)))
            gates.append(Gate("H", (v,)))
            gates.append(Gate("S", (v,)))
            gates.extend(Gate("S", (w,)) for w in bits(rows[v]))
            local_complement_inplace(rows, v)
        else:
            gates.append(Gate("CZ", (op.u, op.v)))
            toggle_inplace(rows, op.u, op.v)
    return gates


def naive_sequence(g: Graph) -> OperationSequence:
    """One toggle per edge."""
    return OperationSequence(g.n, tuple(Toggle(u, v) for u, v in g.edges()))


def toggles_to(b: SequenceBuilder, u: int, target_nbhd: int) -> None:
    """Toggle edges at ``u`` until its neighbourhood equals ``target_nbhd``."""
    for w in bits(b.rows[u] ^ target_nbhd):
        b.toggle(u, w)
