"""Text and JSON formats.

Graph file: first line ``n``, then one ``u v`` per edge with ``0 <= u < v < n``.
Interval file: one ``v left right`` per vertex. Contraction file: ``n - 1``
lines ``u v`` (merge ``v``'s class into ``u``'s). Cut file: one line of
vertex indices. Lines starting with ``#`` and blank lines are ignored
everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from czprep.circle import IntervalError, IntervalSystem
from czprep.graph import Graph
from czprep.opseq import LC, Gate, OperationSequence, SequenceError, Toggle
from czprep.twinwidth import ContractionSequence


class FormatError(ValueError):
    pass


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(lineno: int, fields: list[str], count: int | None = None) -> list[int]:
    if count is not None and len(fields) != count:
        raise FormatError(f"line {lineno}: expected {count} fields, got {len(fields)}")
    try:
        return [int(f) for f in fields]
    except ValueError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None


def parse_graph(text: str) -> Graph:
    lines = iter(_lines(text))
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise FormatError("graph file is empty") from None
    (n,) = _ints(lineno, head, 1)
    if n < 0:
        raise FormatError(f"line {lineno}: negative vertex count")
    seen: set[tuple[int, int]] = set()
    for lineno, fields in lines:
        u, v = _ints(lineno, fields, 2)
        if not 0 <= u < v < n:
            raise FormatError(f"line {lineno}: need 0 <= u < v < {n}, got {u} {v}")
        if (u, v) in seen:
            raise FormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
    return Graph.from_edges(n, sorted(seen))


def format_graph(g: Graph) -> str:
    return "".join([f"{g.n}\n"] + [f"{u} {v}\n" for u, v in g.edges()])


def parse_intervals(text: str, n: int | None = None) -> IntervalSystem:
    found: dict[int, tuple[int, int]] = {}
    for lineno, fields in _lines(text):
        v, left, right = _ints(lineno, fields, 3)
        if v in found:
            raise FormatError(f"line {lineno}: vertex {v} listed twice")
        found[v] = (left, right)
    size = len(found) if n is None else n
    if sorted(found) != list(range(size)):
        raise FormatError(f"interval file must list each vertex 0..{size - 1} exactly once")
    try:
        return IntervalSystem(tuple(found[v] for v in range(size)))
    except IntervalError as exc:
        raise FormatError(str(exc)) from None


def format_intervals(sys: IntervalSystem) -> str:
    return "".join(f"{v} {a} {b}\n" for v, (a, b) in enumerate(sys.intervals))


def parse_contractions(text: str) -> ContractionSequence:
    return ContractionSequence(tuple(tuple(_ints(ln, f, 2)) for ln, f in _lines(text)))


def format_contractions(cs: ContractionSequence) -> str:
    return "".join(f"{u} {v}\n" for u, v in cs.merges)


def parse_cut(text: str, n: int) -> int:
    fields = [f for _, line in _lines(text) for f in line]
    mask = 0
    for v in _ints(0, fields):
        if not 0 <= v < n:
            raise FormatError(f"cut vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


# -- JSON ------------------------------------------------------------------------


def ops_to_json(seq: OperationSequence) -> dict[str, Any]:
    ops = []
    for op in seq.ops:
        if isinstance(op, LC):
            ops.append({"op": "LC", "v": op.v})
        else:
            ops.append({"op": "CZ", "u": op.u, "v": op.v})
    return {"n": seq.n, "ops": ops}


def ops_from_json(obj: Any) -> OperationSequence:
    try:
        n = obj["n"]
        ops = []
        for item in obj["ops"]:
            kind = item["op"]
            if kind == "LC":
                ops.append(LC(int(item["v"])))
            elif kind == "CZ":
                ops.append(Toggle(int(item["u"]), int(item["v"])))
            else:
                raise FormatError(f"unknown op {kind!r}")
        return OperationSequence(int(n), tuple(ops))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed ops JSON: {exc}") from None


def gates_to_json(gates: Iterable[Gate], n: int) -> dict[str, Any]:
    out = []
    for g in gates:
        if g.name == "CZ":
            out.append({"g": "CZ", "q": list(g.qubits)})
        else:
            out.append({"g": g.name, "q": g.qubits[0]})
    return {"n": n, "gates": out}


def gates_from_json(obj: Any) -> tuple[int | None, list[Gate]]:
    """Accepts ``{"n": .., "gates": [..]}`` or a bare gate array."""
    try:
        if isinstance(obj, list):
            n, items = None, obj
        else:
            n, items = int(obj["n"]), obj["gates"]
        gates = []
        for item in items:
            name = item["g"]
            if name == "CZ":
                a, b = item["q"]
                gates.append(Gate("CZ", (int(a), int(b))))
            elif name in ("H", "S"):
                gates.append(Gate(name, (int(item["q"]),)))
            else:
                raise FormatError(f"unknown gate {name!r}")
        return n, gates
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed gates JSON: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from None


__all__ = [
    "FormatError",
    "SequenceError",
    "parse_graph",
    "format_graph",
    "parse_intervals",
    "format_intervals",
    "parse_contractions",
    "format_contractions",
    "parse_cut",
    "ops_to_json",
    "ops_from_json",
    "gates_to_json",
    "gates_from_json",
]
