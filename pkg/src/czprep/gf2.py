"""Small GF(2) linear algebra helpers over int bitsets.

A row is a Python int whose bit ``j`` is the entry in column ``j``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def bits(mask: int) -> Iterable[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) via an XOR basis keyed by leading bit."""
    basis: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in basis:
                row ^= basis[lead]
            else:
                basis[lead] = row
                r += 1
                break
    return r


class XorBasis:
    """Incremental row basis that remembers how each reduced row was formed.

    ``add`` returns True when the vector is independent of the rows seen so
    far. ``express`` writes a vector as a combination of the added rows and
    returns the combination as a bitmask over their insertion order, or
    ``None`` when the vector is outside the span.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}
        self.size = 0

    def _reduce(self, vec: int) -> tuple[int, int]:
        combo = 0
        while vec:
            lead = vec.bit_length() - 1
            hit = self._rows.get(lead)
            if hit is None:
                break
            vec ^= hit[0]
            combo ^= hit[1]
        return vec, combo

    def add(self, vec: int) -> bool:
        vec, combo = self._reduce(vec)
        if not vec:
            return False
        self._rows[vec.bit_length() - 1] = (vec, combo ^ (1 << self.size))
        self.size += 1
        return True

    def express(self, vec: int) -> int | None:
        # fully reduce, since _reduce stops at the first missing pivot
        combo = 0
        while vec:
            lead = vec.bit_length() - 1
            hit = self._rows.get(lead)
            if hit is None:
                return None
            vec ^= hit[0]
            combo ^= hit[1]
        return combo


def symmetric_rank_one_sum(vectors: Sequence[int], n: int) -> list[int]:
    """Rows of the GF(2) sum of ``v v^T`` over ``vectors`` (diagonal kept)."""
    out = [0] * n
    for v in vectors:
        for i in bits(v):
            out[i] ^= v
    return out
