"""Stabilizer tableau over GF(2) for H, S and CZ.

The tableau is column-packed: ``xcols[q]`` is a bitmask over generators
whose X-part touches qubit ``q`` (likewise ``zcols``), and ``signs`` has bit
``g`` set when generator ``g`` carries a -1. A gate then costs a few big-int
operations regardless of how many generators there are.

Pauli letters follow the usual convention (x, z) = (1, 0) X, (0, 1) Z,
(1, 1) Y, so every generator is Hermitian and only +-1 signs occur.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from czprep.gf2 import bits, rank
from czprep.graph import Graph
from czprep.opseq import Gate


class TableauError(ValueError):
    pass


def _pauli_product_sign(x1: int, z1: int, s1: int, x2: int, z2: int, s2: int) -> int:
    """Sign bit of ``P1 * P2`` for commuting Hermitian Paulis."""
    y1 = x1 & z1
    xo = x1 & ~z1
    zo = z1 & ~x1
    plus = (y1 & z2 & ~x2) | (xo & z2 & x2) | (zo & x2 & ~z2)
    minus = (y1 & x2 & ~z2) | (xo & z2 & ~x2) | (zo & x2 & z2)
    total = (2 * s1 + 2 * s2 + plus.bit_count() - minus.bit_count()) % 4
    if total & 1:
        raise TableauError("product of anticommuting Paulis has an imaginary phase")
    return total >> 1


@dataclass
class StabilizerTableau:
    n: int
    xcols: list[int] = field(default_factory=list)
    zcols: list[int] = field(default_factory=list)
    signs: int = 0

    @classmethod
    def plus_state(cls, n: int) -> StabilizerTableau:
        """``|+>^n``: generator ``i`` is ``X_i``."""
        return cls(n, [1 << q for q in range(n)], [0] * n, 0)

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[tuple[int, int, int]]) -> StabilizerTableau:
        """Build from ``(xmask, zmask, sign)`` per generator (masks over qubits)."""
        xcols = [0] * n
        zcols = [0] * n
        signs = 0
        for g, (x, z, s) in enumerate(rows):
            for q in bits(x):
                xcols[q] |= 1 << g
            for q in bits(z):
                zcols[q] |= 1 << g
            signs |= (s & 1) << g
        return cls(n, xcols, zcols, signs)

    def rows(self) -> list[tuple[int, int, int]]:
        out = []
        for g in range(self.n):
            x = z = 0
            for q in range(self.n):
                x |= (self.xcols[q] >> g & 1) << q
                z |= (self.zcols[q] >> g & 1) << q
            out.append((x, z, self.signs >> g & 1))
        return out

    def copy(self) -> StabilizerTableau:
        return StabilizerTableau(self.n, list(self.xcols), list(self.zcols), self.signs)

    def _qubit(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise TableauError(f"qubit {q} out of range for n={self.n}")

    def h(self, q: int) -> None:
        self._qubit(q)
        x, z = self.xcols[q], self.zcols[q]
        self.signs ^= x & z
        self.xcols[q], self.zcols[q] = z, x

    def s(self, q: int) -> None:
        self._qubit(q)
        x = self.xcols[q]
        self.signs ^= x & self.zcols[q]
        self.zcols[q] ^= x

    def cz(self, a: int, b: int) -> None:
        self._qubit(a)
        self._qubit(b)
        if a == b:
            raise TableauError("CZ needs two distinct qubits")
        xa, xb = self.xcols[a], self.xcols[b]
        self.signs ^= xa & xb & (self.zcols[a] ^ self.zcols[b])
        self.zcols[a] ^= xb
        self.zcols[b] ^= xa

    def apply(self, gate: Gate) -> None:
        if gate.name == "H":
            self.h(*gate.qubits)
        elif gate.name == "S":
            self.s(*gate.qubits)
        elif gate.name == "CZ":
            self.cz(*gate.qubits)
        else:
            raise TableauError(f"unsupported gate {gate.name!r}")

    def is_valid(self) -> bool:
        """Generators pairwise commute and are independent."""
        rows = self.rows()
        for i, (x1, z1, _) in enumerate(rows):
            for x2, z2, _ in rows[i + 1:]:
                if ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1:
                    return False
        return rank(x | (z << self.n) for x, z, _ in rows) == self.n

    def canonical(self) -> tuple[tuple[int, int], ...]:
        """Reduced row echelon form of the generated group, with signs.

        Columns are ordered X block (qubits 0..n-1) then Z block. The result
        depends only on the group, so two tableaux stabilise the same state
        iff their canonical forms match.
        """
        n = self.n
        work = [[x | (z << n), s] for x, z, s in self.rows()]
        full = (1 << n) - 1
        top = 0
        for col in range(2 * n):
            piv = next((r for r in range(top, len(work)) if work[r][0] >> col & 1), None)
            if piv is None:
                continue
            work[top], work[piv] = work[piv], work[top]
            pv, ps = work[top]
            for r in range(len(work)):
                if r != top and work[r][0] >> col & 1:
                    v, s = work[r]
                    s = _pauli_product_sign(v & full, v >> n, s, pv & full, pv >> n, ps)
                    work[r] = [v ^ pv, s]
            top += 1
        return tuple((v, s) for v, s in work)


def apply_gate(t: StabilizerTableau, gate: Gate) -> StabilizerTableau:
    out = t.copy()
    out.apply(gate)
    return out


def graph_state_tableau(g: Graph) -> StabilizerTableau:
    """Generators ``X_i prod_{j in N(i)} Z_j``, all with sign +1."""
    return StabilizerTableau.from_rows(g.n, [(1 << i, g.rows[i], 0) for i in range(g.n)])


def run_gates(n: int, gates: Iterable[Gate]) -> StabilizerTableau:
    t = StabilizerTableau.plus_state(n)
    for gate in gates:
        t.apply(gate)
    return t


def same_state(a: StabilizerTableau, b: StabilizerTableau) -> bool:
    return a.n == b.n and a.canonical() == b.canonical()


def verify_graph_state(gates: Iterable[Gate], g: Graph) -> bool:
    """True iff ``gates`` applied to ``|+>^n`` produce exactly ``|G>`` (up to global phase)."""
    try:
        t = run_gates(g.n, gates)
    except TableauError:
        return False
    return same_state(t, graph_state_tableau(g))
