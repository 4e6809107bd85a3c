"""Prepare graph states with few CZ gates, using free local complementations."""

from czprep.circle import IntervalSystem, overlap_graph, sweep_toggle_bipartite, synth_circle
from czprep.cutjoin import CutWitness, find_spanning_rows, join_across_cut, synth_by_cuts
from czprep.graph import (
    Graph,
    GraphError,
    complement_on,
    cut_rank,
    induced_subgraph,
    local_complement,
    toggle_edge,
)
from czprep.opseq import (
    LC,
    Gate,
    OperationSequence,
    Toggle,
    apply,
    compile_gates,
    concat,
    naive_sequence,
    push_neighborhood,
    verify_prepares,
)
from czprep.oracle import (
    CapExceeded,
    canonical_orbit_key,
    certify_lower_bound,
    exact_cz,
    exact_cz_distance,
    optimal_sequence,
    orbit,
)
from czprep.perturbation import SymmetricDelta, factor_symmetric, realize_complementation, synth_perturbation
from czprep.stabsim import StabilizerTableau, apply_gate, verify_graph_state
from czprep.strategies import Witnesses, run_strategy
from czprep.twinwidth import (
    ContractionSequence,
    Trigraph,
    exhaustive_contraction_sequence,
    greedy_contraction_sequence,
    synth_twinwidth,
)

__version__ = "0.1.0"
