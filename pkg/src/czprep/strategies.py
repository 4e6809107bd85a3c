"""Strategy dispatch: each strategy turns a graph plus optional witnesses into a verified sequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from czprep.circle import IntervalSystem, overlap_graph, synth_circle
from czprep.cutjoin import find_spanning_rows, join_bound, synth_by_cuts
from czprep.graph import Graph
from czprep.opseq import OperationSequence, compile_gates, concat, naive_sequence, verify_prepares
from czprep.perturbation import perturbation_bound, synth_perturbation
from czprep.stabsim import verify_graph_state
from czprep.twinwidth import (
    ContractionSequence,
    greedy_contraction_sequence,
    synth_twinwidth,
)

# also the tiebreak order for ``auto``
STRATEGIES = ("naive", "circle", "perturb", "cutjoin", "twinwidth")


class MissingWitness(ValueError):
    pass


class VerificationFailure(RuntimeError):
    pass


@dataclass
class Witnesses:
    intervals: IntervalSystem | None = None
    contraction: ContractionSequence | None = None
    cut: int | None = None
    base: Graph | None = None
    seed: int = 0


@dataclass
class StrategyResult:
    name: str
    sequence: OperationSequence
    bound: int
    notes: dict = field(default_factory=dict)
    replay_ok: bool = False
    tableau_ok: bool = False

    @property
    def cz_cost(self) -> int:
        return self.sequence.cz_cost

    @property
    def verified(self) -> bool:
        return self.replay_ok and self.tableau_ok


def verify_both(seq: OperationSequence, g: Graph) -> tuple[bool, bool]:
    replay = verify_prepares(seq, g)
    tableau = verify_graph_state(compile_gates(seq), g)
    return replay, tableau


def run_naive(g: Graph, w: Witnesses) -> StrategyResult:
    return StrategyResult("naive", naive_sequence(g), g.num_edges)


def run_circle(g: Graph, w: Witnesses) -> StrategyResult:
    if w.intervals is None:
        raise MissingWitness("circle strategy needs an interval file (--intervals)")
    info: dict = {}
    seq = synth_circle(g, w.intervals, info=info)
    return StrategyResult("circle", seq, info["bound"], {"k_greedy": info["k"], "helper": info["helper"]})


def intervals_represent(w: Witnesses, g: Graph) -> bool:
    return w.intervals is not None and w.intervals.n == g.n and overlap_graph(w.intervals) == g


def _base_sequence(base: Graph, w: Witnesses) -> tuple[OperationSequence, int, str]:
    if intervals_represent(w, base):
        info: dict = {}
        seq = synth_circle(base, w.intervals, info=info)
        return seq, info["bound"], "circle"
    cut = synth_by_cuts(base, "greedy", seed=w.seed)
    naive = naive_sequence(base)
    if cut.cz_cost < naive.cz_cost:
        return cut, base.num_edges, "cutjoin"
    return naive, base.num_edges, "naive"


def run_perturb(g: Graph, w: Witnesses) -> StrategyResult:
    """Prepare the base graph, then apply the complementations that turn it into ``g``."""
    if w.base is None:
        raise MissingWitness("perturb strategy needs a base graph file (--base)")
    if w.base.n != g.n:
        raise MissingWitness(f"base graph has n={w.base.n}, input has n={g.n}")
    base_seq, base_bound, how = _base_sequence(w.base, w)
    info: dict = {}
    step = synth_perturbation(w.base, g, info=info)
    r = info["offdiag_rank"]
    assert info["sets"] <= r + 1, "factorisation used more than rank + 1 sets"
    notes = {
        "base_strategy": how,
        "base_cost": base_seq.cz_cost,
        "sets": info["sets"],
        "offdiag_rank": r,
        "sets_optimal": info["optimal"],
    }
    return StrategyResult("perturb", concat(base_seq, step), base_bound + perturbation_bound(g.n, r), notes)


def run_cutjoin(g: Graph, w: Witnesses) -> StrategyResult:
    notes: dict = {}
    if w.cut is not None:
        seq = synth_by_cuts(g, "greedy", seed=w.seed, top_cut=w.cut)
        wit = find_spanning_rows(g, w.cut)
        y = wit.y_mask(g.n).bit_count()
        notes = {"cut_rank": wit.k, "y_size": y, "join_bound": join_bound(wit.k, y)}
        notes["finder"] = "supplied cut"
    else:
        seq = synth_by_cuts(g, "greedy", seed=w.seed)
        notes["finder"] = "greedy"
    return StrategyResult("cutjoin", seq, g.num_edges, notes)


def run_twinwidth(g: Graph, w: Witnesses) -> StrategyResult:
    cs = w.contraction
    label = "supplied"
    if cs is None:
        cs = greedy_contraction_sequence(g, seed=w.seed)
        label = "heuristic witness"
    info: dict = {}
    seq = synth_twinwidth(g, cs, info=info)
    return StrategyResult("twinwidth", seq, info["bound"], {"width": info["width"], "witness": label})


RUNNERS: dict[str, Callable[[Graph, Witnesses], StrategyResult]] = {
    "naive": run_naive,
    "circle": run_circle,
    "perturb": run_perturb,
    "cutjoin": run_cutjoin,
    "twinwidth": run_twinwidth,
}


def run_strategy(name: str, g: Graph, w: Witnesses | None = None) -> StrategyResult:
    """Run one strategy and verify its output by replay and by tableau.

    Raises :class:`VerificationFailure` if either check fails; this would be
    a bug in the synthesis code, never a property of the input.
    """
    w = Witnesses() if w is None else w
    res = RUNNERS[name](g, w)
    res.replay_ok, res.tableau_ok = verify_both(res.sequence, g)
    if not res.verified:
        raise VerificationFailure(
            f"{name}: replay {'ok' if res.replay_ok else 'FAILED'}, "
            f"tableau {'ok' if res.tableau_ok else 'FAILED'}"
        )
    return res


def applicable(g: Graph, w: Witnesses) -> list[str]:
    names = ["naive"]
    if intervals_represent(w, g):
        names.append("circle")
    if w.base is not None:
        names.append("perturb")
    names += ["cutjoin", "twinwidth"]
    return names


def run_all(g: Graph, w: Witnesses | None = None) -> list[StrategyResult]:
    """Every strategy whose witnesses are present, in priority order."""
    w = Witnesses() if w is None else w
    return [run_strategy(name, g, w) for name in applicable(g, w)]


def pick_best(results: list[StrategyResult]) -> StrategyResult:
    order = {name: i for i, name in enumerate(STRATEGIES)}
    return min(results, key=lambda r: (r.cz_cost, order[r.name]))


def run_auto(g: Graph, w: Witnesses | None = None) -> tuple[StrategyResult, list[StrategyResult]]:
    results = run_all(g, w)
    return pick_best(results), results
