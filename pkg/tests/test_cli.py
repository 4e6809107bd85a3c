from __future__ import annotations

import json
import subprocess
import sys

import pytest

from czprep.circle import IntervalSystem, overlap_graph
from czprep.cli import main
from czprep.formats import format_graph, format_intervals, parse_graph
from czprep.graph import Graph
from czprep.strategies import Witnesses, pick_best, run_all, run_strategy
from tests.conftest import random_graph, random_intervals

C5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestStrategies:
    def test_naive_triangle(self):
        assert run_strategy("naive", Graph.complete(3)).cz_cost == 3

    def test_auto_edgeless(self):
        best = pick_best(run_all(Graph.empty(6)))
        assert best.cz_cost == 0 and best.name == "naive"

    def test_auto_never_worse_than_naive(self, rng):
        for _ in range(30):
            n = rng.randint(1, 12)
            sys_ = random_intervals(rng, n)
            g = overlap_graph(sys_)
            w = Witnesses(intervals=sys_, base=random_graph(rng, n))
            results = run_all(g, w)
            assert {r.name for r in results} == {"naive", "circle", "perturb", "cutjoin", "twinwidth"}
            assert pick_best(results).cz_cost <= g.num_edges
            assert all(r.verified and r.cz_cost <= r.bound for r in results)

    def test_tiebreak_is_priority_order(self):
        results = run_all(Graph.complete(2))
        assert pick_best(results).name == "naive"

    def test_twinwidth_labels_heuristic_witness(self):
        res = run_strategy("twinwidth", C5)
        assert res.notes["witness"] == "heuristic witness"


class TestSynth:
    def test_triangle_naive(self, write, capsys):
        g = write("k3.txt", format_graph(Graph.complete(3)))
        code, out, err = run(["synth", "--input", g, "--strategy", "naive"], capsys)
        assert code == 0
        assert sum(op["op"] == "CZ" for op in json.loads(out)["ops"]) == 3
        assert "naive" in err

    def test_gates_and_output_file(self, write, capsys, tmp_path):
        g = write("c5.txt", format_graph(C5))
        dest = tmp_path / "gates.json"
        code, out, _ = run(["synth", "--input", g, "--emit", "gates", "--output", str(dest)], capsys)
        assert code == 0 and out == ""
        code, _, err = run(["verify", "--input", g, "--gates", str(dest)], capsys)
        assert code == 0 and "pass" in err

    def test_byte_identical(self, write, capsys, rng):
        g = write("g.txt", format_graph(random_graph(rng, 11)))
        outs = {run(["synth", "--input", g, "--seed", "3"], capsys)[1] for _ in range(2)}
        assert len(outs) == 1

    def test_circle_with_intervals(self, write, capsys, rng):
        sys_ = random_intervals(rng, 9)
        g = write("g.txt", format_graph(overlap_graph(sys_)))
        iv = write("g.iv", format_intervals(sys_))
        code, _, err = run(["synth", "--input", g, "--intervals", iv, "--strategy", "circle"], capsys)
        assert code == 0 and "circle" in err

    def test_missing_witness(self, write, capsys):
        g = write("c5.txt", format_graph(C5))
        assert run(["synth", "--input", g, "--strategy", "circle"], capsys)[0] == 2
        assert run(["synth", "--input", g, "--strategy", "perturb"], capsys)[0] == 2

    def test_bad_intervals(self, write, capsys):
        g = write("c5.txt", format_graph(C5))
        iv = write("bad.iv", format_intervals(IntervalSystem(((0, 1), (2, 3), (4, 5), (6, 7), (8, 9)))))
        assert run(["synth", "--input", g, "--intervals", iv], capsys)[0] == 2

    def test_perturb_with_base(self, write, capsys):
        g = write("k3.txt", format_graph(Graph.complete(3)))
        base = write("p3.txt", "3\n0 1\n1 2\n")
        code, out, err = run(["synth", "--input", g, "--base", base, "--strategy", "perturb"], capsys)
        assert code == 0 and "perturb.sets" in err

    def test_contraction_and_cut(self, write, capsys):
        g = write("c5.txt", format_graph(C5))
        cs = write("c5.cs", "0 1\n0 2\n0 3\n0 4\n")
        code, _, err = run(["synth", "--input", g, "--contraction", cs], capsys)
        assert code == 0 and "measured width" in err
        bad = write("bad.cs", "0 1\n")
        assert run(["synth", "--input", g, "--contraction", bad], capsys)[0] == 2
        # C5 has no cut of rank below min(|X|, |V - X|)
        cut = write("c5.cut", "0 1 2\n")
        assert run(["synth", "--input", g, "--cut", cut], capsys)[0] == 2
        bridged = write("tt.txt", "6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n")
        code, _, err = run(["synth", "--input", bridged, "--cut", cut, "--strategy", "cutjoin"], capsys)
        assert code == 0 and "cutjoin.cut_rank = 1" in err

    def test_parse_error(self, write, capsys):
        g = write("bad.txt", "3\n0 1\n0 1\n")
        code, _, err = run(["synth", "--input", g], capsys)
        assert code == 2 and "duplicate" in err

    def test_missing_file(self, capsys):
        assert run(["synth", "--input", "/nonexistent/graph.txt"], capsys)[0] == 2


class TestVerify:
    def test_match_and_mismatch(self, write, capsys):
        g = write("c5.txt", format_graph(C5))
        k5 = write("k5.txt", format_graph(Graph.complete(5)))
        _, ops, _ = run(["synth", "--input", g], capsys)
        path = write("ops.json", ops)
        assert run(["verify", "--input", g, "--ops", path], capsys)[0] == 0
        assert run(["verify", "--input", k5, "--ops", path], capsys)[0] == 1

    def test_corrupted_json_is_parse_error(self, write, capsys):
        g = write("c5.txt", format_graph(C5))
        path = write("ops.json", '{"n": 5, "ops": [')
        code, _, err = run(["verify", "--input", g, "--ops", path], capsys)
        assert code == 2 and "invalid JSON" in err

    def test_bare_gate_array(self, write, capsys):
        g = write("k2.txt", "2\n0 1\n")
        path = write("gates.json", '[{"g": "CZ", "q": [0, 1]}]')
        assert run(["verify", "--input", g, "--gates", path], capsys)[0] == 0

    def test_requires_ops_or_gates(self, write):
        g = write("k2.txt", "2\n0 1\n")
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--input", g])
        assert exc.value.code == 2


class TestOracle:
    @pytest.mark.parametrize("graph,expected", [(Graph.complete(2), 1), (Graph.complete(4), 3), (C5, 5)])
    def test_values_and_witness(self, write, capsys, graph, expected):
        g = write("g.txt", format_graph(graph))
        code, out, _ = run(["oracle", "--input", g], capsys)
        assert code == 0
        obj = json.loads(out)
        assert obj["cz"] == expected
        path = write("ops.json", json.dumps({"n": obj["n"], "ops": obj["ops"]}))
        assert run(["verify", "--input", g, "--ops", path], capsys)[0] == 0

    def test_cap_exceeded(self, write, capsys):
        g = write("g.txt", format_graph(Graph.empty(8)))
        code, _, err = run(["oracle", "--input", g], capsys)
        assert code == 3 and "n <= 7" in err
        g6 = write("g6.txt", format_graph(Graph.empty(6)))
        assert run(["oracle", "--input", g6, "--cap", "5"], capsys)[0] == 3


class TestCostAndOrbit:
    def test_cost_json_and_csv(self, write, capsys):
        g = write("c5.txt", format_graph(C5))
        code, out, _ = run(["cost", "--input", g], capsys)
        rows = json.loads(out)["rows"]
        assert code == 0 and all(r["exact"] == 5 and r["cz_cost"] >= 5 for r in rows)
        code, out, _ = run(["cost", "--input", g, "--format", "csv"], capsys)
        assert out.splitlines()[0].startswith("strategy,cz_cost,bound")

    def test_cost_figure(self, write, capsys, tmp_path):
        g = write("c5.txt", format_graph(C5))
        fig = tmp_path / "cost.png"
        assert run(["cost", "--input", g, "--figure", str(fig)], capsys)[0] == 0
        assert fig.stat().st_size > 0

    def test_orbit(self, write, capsys):
        g = write("p3.txt", "3\n0 1\n1 2\n")
        code, out, _ = run(["orbit", "--input", g], capsys)
        obj = json.loads(out)
        assert code == 0 and obj["size"] == 4 and [[0, 1], [0, 2], [1, 2]] in obj["graphs"]
        big = write("e9.txt", format_graph(Graph.empty(9)))
        assert run(["orbit", "--input", big], capsys)[0] == 3


def test_module_entry_point(tmp_path):
    g = tmp_path / "k3.txt"
    g.write_text("3\n0 1\n1 2\n0 2\n")
    proc = subprocess.run(
        [sys.executable, "-m", "czprep", "synth", "--input", str(g)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 3
    assert parse_graph(g.read_text()) == Graph.complete(3)
