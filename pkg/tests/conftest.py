from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import strategies as st

from czprep.circle import IntervalSystem, overlap_graph
from czprep.graph import Graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p])


def random_intervals(rng: random.Random, n: int) -> IntervalSystem:
    word = [v for v in range(n) for _ in (0, 1)]
    rng.shuffle(word)
    return IntervalSystem.from_word(word)


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


@lru_cache(maxsize=None)
def interval_witnesses(n: int) -> dict[Graph, IntervalSystem]:
    """An interval system for every circle graph on ``n`` labelled vertices, by brute force.

    Enumerates double-occurrence words with first occurrences in label order,
    then relabels by every permutation.
    """
    shapes = []

    def extend(word: list[int], opened: int, closed: int) -> None:
        if len(word) == 2 * n:
            shapes.append(tuple(word))
            return
        if opened < n:
            extend(word + [opened], opened + 1, closed)
        for v in range(opened):
            if word.count(v) == 1:
                extend(word + [v], opened, closed + 1)

    extend([], 0, 0)
    found: dict[Graph, IntervalSystem] = {}
    for shape in shapes:
        for perm in itertools.permutations(range(n)):
            sys = IntervalSystem.from_word([perm[v] for v in shape])
            g = overlap_graph(sys)
            if g not in found:
                found[g] = sys
    return found


# -- dense state vectors: an oracle independent of the tableau code -------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j])


def statevector(n: int, gates) -> np.ndarray:
    psi = np.full(1 << n, 2 ** (-n / 2), dtype=complex)
    idx = np.arange(1 << n)
    for gate in gates:
        if gate.name == "CZ":
            a, b = gate.qubits
            # qubit q is bit (n - 1 - q) of the basis index
            both = ((idx >> (n - 1 - a)) & 1) & ((idx >> (n - 1 - b)) & 1)
            psi = np.where(both == 1, -psi, psi)
        else:
            (q,) = gate.qubits
            m = _H if gate.name == "H" else _S
            t = psi.reshape(1 << q, 2, -1)
            psi = np.einsum("ij,ajb->aib", m, t).reshape(-1)
    return psi


def graph_statevector(g: Graph) -> np.ndarray:
    n = g.n
    idx = np.arange(1 << n)
    phase = np.zeros(1 << n, dtype=int)
    for u, v in g.edges():
        phase ^= ((idx >> (n - 1 - u)) & 1) & ((idx >> (n - 1 - v)) & 1)
    return np.where(phase == 1, -1.0, 1.0).astype(complex) * 2 ** (-n / 2)


def same_up_to_phase(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.isclose(abs(np.vdot(a, b)), 1.0, atol=1e-9))


# -- hypothesis --------------------------------------------------------------------


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.integers(0, (1 << len(pairs)) - 1)) if pairs else 0
    return Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
