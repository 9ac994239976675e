from __future__ import annotations

import json
import subprocess
import sys

import networkx as nx
import numpy as np
import pytest
from pysat.solvers import Solver

from oracles import random_graph, to_nx

from pathchrom.construction import build_G, build_H
from pathchrom.graph_core import Graph, complete_graph, cycle_graph
from pathchrom.io_cli import (
    Graph6Error,
    ReportWriter,
    RunConfig,
    emit_dimacs_cnf,
    emit_dot,
    emit_graph6,
    parse_dimacs_cnf,
    parse_graph6,
    read_graph6_file,
    write_graph6_file,
)
from pathchrom.io_cli.cli import main
from pathchrom.io_cli.formats import read_jsonl, roles_json
from pathchrom.report import Report
from pathchrom.solvers import k_colourable


def _sat(cnf: bytes) -> bool:
    _, clauses = parse_dimacs_cnf(cnf)
    with Solver(name="cadical153", bootstrap_with=clauses) as s:
        return s.solve()


# -- graph6 --------------------------------------------------------------------

def test_graph6_worked_example():
    g = parse_graph6(b"D?{")
    assert g == Graph.from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
    assert emit_graph6(g) == b"D?{"


def test_graph6_k1():
    assert emit_graph6(complete_graph(1)) == b"@"
    assert parse_graph6("@").n == 1


def test_graph6_matches_networkx():
    rng = np.random.default_rng(61)
    for _ in range(300):
        g = random_graph(rng, int(rng.integers(0, 70)))
        ref = nx.to_graph6_bytes(to_nx(g), header=False).strip()
        assert emit_graph6(g) == ref
        assert parse_graph6(ref) == g


def test_graph6_long_form_roundtrip():
    g = build_G(6, 1).g
    data = emit_graph6(g)
    assert data[:1] == b"~"
    assert parse_graph6(data) == g
    assert parse_graph6(emit_graph6(g, header=True)) == g


@pytest.mark.parametrize(
    "line",
    [b"", b"D?", b"D?{?", b"D?|", b"D ?{", b"~??~", b"~~??????"],
)
def test_graph6_rejects_malformed(line):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(line)
    assert err.value.offset >= 0


def test_graph6_file_roundtrip(tmp_path):
    graphs = [cycle_graph(5), complete_graph(3), Graph.empty(0)]
    path = tmp_path / "g.g6"
    assert write_graph6_file(path, graphs) == 3
    assert read_graph6_file(path)[:2] == graphs[:2]


def test_graph6_file_error_mentions_line(tmp_path):
    path = tmp_path / "bad.g6"
    path.write_bytes(b"D?{\nD?|\n")
    with pytest.raises(Graph6Error, match="line 2"):
        read_graph6_file(path)


# -- CNF -------------------------------------------------------------------------

def test_cnf_k2_one_colour():
    cnf = emit_dimacs_cnf(complete_graph(2), 1)
    nvars, clauses = parse_dimacs_cnf(cnf)
    assert cnf.splitlines()[0] == b"p cnf 2 3"
    assert nvars == 2 and sorted(map(sorted, clauses)) == [[-2, -1], [1], [2]]
    assert not _sat(cnf)


def test_cnf_k3():
    assert _sat(emit_dimacs_cnf(complete_graph(3), 3))


def test_cnf_pinned_H_is_unsat():
    h = build_H(6, 1)
    assert not _sat(emit_dimacs_cnf(h.g, 6, {h.find("x", 1): 0, h.find("x", 2): 0}))


def test_cnf_agrees_with_internal_solver():
    rng = np.random.default_rng(62)
    for _ in range(150):
        g = random_graph(rng, int(rng.integers(1, 11)))
        c = int(rng.integers(1, 5))
        pins = {0: int(rng.integers(0, c))} if rng.random() < 0.5 else None
        assert _sat(emit_dimacs_cnf(g, c, pins)) == k_colourable(g, c, pins).yes


def test_cnf_errors():
    with pytest.raises(ValueError):
        emit_dimacs_cnf(complete_graph(2), 0)
    with pytest.raises(ValueError):
        emit_dimacs_cnf(complete_graph(2), 2, {0: 2})


# -- DOT, roles, reports ------------------------------------------------------------

def _dot_counts(data: bytes) -> tuple[int, int]:
    lines = data.decode().splitlines()
    return sum("[" in ln for ln in lines), sum("--" in ln for ln in lines)


def test_dot_counts():
    assert _dot_counts(emit_dot(build_G(6, 0))) == (6, 15)
    lc = build_G(6, 1)
    data = emit_dot(lc)
    assert _dot_counts(data) == (133, lc.g.m)
    wbar = lc.find("wbar")
    line = next(ln for ln in data.decode().splitlines() if ln.strip().startswith(f"{wbar} ["))
    assert "peripheries=2" in line and "wbar" in line
    assert "digraph" not in data.decode() and "->" not in data.decode()


def test_roles_json_shape():
    doc = roles_json(build_G(6, 1))
    assert doc["n"] == 133 and len(doc["roles"]) == 133
    assert set(doc["roles"][0]) == {"partition", "special", "inW", "copyPath"}


def test_report_writer_header(tmp_path):
    path = tmp_path / "r.jsonl"
    rep = Report("demo")
    rep.fail("bad", graph6="@")
    with ReportWriter(path, header=RunConfig(seed=5).header()) as w:
        w.write(rep)
    rows = read_jsonl(path)
    assert rows[0]["header"]["seed"] == 5 and "seed_scheme" in rows[0]["header"]
    assert rows[1] == {"check": "demo", "status": "Fail", "stats": {}, "witness": [{"reason": "bad", "graph6": "@"}], "graph6": "@"}


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(samples=0)
    with pytest.raises(ValueError):
        RunConfig(seed=2**64)
    with pytest.raises(ValueError):
        RunConfig(subsets_cap=99)


# -- command line ----------------------------------------------------------------------

@pytest.fixture
def k6_file(tmp_path):
    path = tmp_path / "k6.g6"
    write_graph6_file(path, [complete_graph(6)])
    return path


def test_cli_chi(k6_file, capsys):
    assert main(["chi", "--in", str(k6_file)]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_cli_chi_cnf(k6_file, tmp_path):
    out = tmp_path / "k6.cnf"
    assert main(["chi", "--in", str(k6_file), "--cnf-out", str(out), "--colours", "5"]) == 0
    assert not _sat(out.read_bytes())
    assert main(["chi", "--in", str(k6_file), "--cnf-out", str(out)]) == 3


def test_cli_rvalue(tmp_path, capsys):
    path = tmp_path / "c5.g6"
    write_graph6_file(path, [cycle_graph(5)])
    assert main(["rvalue", "--in", str(path), "--mode", "exact-paths"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["rvalue", "--in", str(path), "--mode", "sample", "--samples", "5", "--seed", "1"]) == 0
    assert capsys.readouterr().out.strip() == ">=3"


def test_cli_construct(tmp_path, capsys):
    out, roles, dot = tmp_path / "g.g6", tmp_path / "g.json", tmp_path / "g.dot"
    code = main(["construct", "--r", "6", "--k", "1", "--out", str(out), "--roles", str(roles), "--dot", str(dot)])
    assert code == 0
    assert "n=133" in capsys.readouterr().out
    assert read_graph6_file(out)[0] == build_G(6, 1).g
    assert json.loads(roles.read_text())["n"] == 133
    assert main(["construct", "--r", "6", "--k", "0", "--aux", "--out", str(out)]) == 0
    assert read_graph6_file(out)[0].n == 8


def test_cli_verify_structure(tmp_path):
    report = tmp_path / "rep.jsonl"
    assert main(["verify", "--r", "6", "--k", "1", "--suite", "structure", "--report", str(report)]) == 0
    rows = read_jsonl(report)
    assert "header" in rows[0] and all(r["status"] == "Pass" for r in rows[1:])


def test_cli_verify_paths_and_colouring():
    assert main(["verify", "--r", "6", "--k", "1", "--suite", "paths", "--samples", "20", "--seed", "4"]) == 0
    assert main(["verify", "--r", "6", "--k", "2", "--suite", "colouring"]) == 0


def test_cli_corpus(tmp_path):
    path = tmp_path / "c.g6"
    from pathchrom.verification import load_corpus

    write_graph6_file(path, load_corpus(5))
    assert main(["corpus", "--in", str(path), "--filter", "2K2", "--check", "chi<=r+1"]) == 0
    assert main(["corpus", "--in", str(path), "--filter", "none", "--check", "path-perfect"]) == 0
    assert main(["corpus", "--in", str(path), "--check", "conjecture:P5free_pp"]) == 0
    assert main(["corpus", "--in", str(path), "--check", "chi<r"]) == 3


def test_cli_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--r", "6"])
    assert exc.value.code == 3
    assert main(["construct", "--r", "5", "--k", "0", "--out", str(tmp_path / "x")]) == 3
    assert main(["chi", "--in", str(tmp_path / "missing.g6")]) == 4
    bad = tmp_path / "bad.g6"
    bad.write_bytes(b"D?|\n")
    assert main(["chi", "--in", str(bad)]) == 4
    assert main(["verify", "--r", "6", "--k", "1", "--samples", "0"]) == 3


def test_cli_module_entry_point(k6_file):
    out = subprocess.run([sys.executable, "-m", "pathchrom", "chi", "--in", str(k6_file)], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "6"
