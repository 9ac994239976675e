"""Regenerate the bundled corpus of all graphs on 0..8 vertices.

Orders up to 7 come from the networkx graph atlas.  Order 8 is built by
adding one vertex, with every possible neighbourhood, to each graph on 7
vertices; duplicates are removed with nauty canonical certificates.  Every
list is checked against the census before it is written.

    python3 tools/gen_corpus.py [--out src/pathchrom/data]
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import networkx as nx
import pynauty

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from pathchrom.graph_core import Graph  # noqa: E402
from pathchrom.io_cli.graph6 import write_graph6_file  # noqa: E402
from pathchrom.verification.corpus import CENSUS  # noqa: E402


def certificate(g: Graph) -> bytes:
    adj = {v: list(g.neighbours(v)) for v in range(g.n)}
    return pynauty.certificate(pynauty.Graph(g.n, adjacency_dict=adj))


def canonical_graph(g: Graph) -> Graph:
    adj = {v: list(g.neighbours(v)) for v in range(g.n)}
    lab = pynauty.canon_label(pynauty.Graph(g.n, adjacency_dict=adj))
    pos = {old: new for new, old in enumerate(lab)}
    return Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])


def atlas_by_order() -> dict[int, list[Graph]]:
    out: dict[int, list[Graph]] = {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        out.setdefault(n, []).append(Graph.from_edges(n, h.edges()))
    return out


def extend_by_one(graphs: list[Graph]) -> list[Graph]:
    seen: dict[bytes, Graph] = {}
    for g in graphs:
        n = g.n
        for s in range(1 << n):
            h = Graph(n + 1, [a | (((s >> v) & 1) << n) for v, a in enumerate(g.adj)] + [s])
            cert = certificate(h)
            if cert not in seen:
                seen[cert] = canonical_graph(h)
    return sorted(seen.values(), key=lambda x: (x.m, x.adj))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src/pathchrom/data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    by_n = atlas_by_order()
    by_n[8] = extend_by_one(by_n[7])
    for n in sorted(CENSUS):
        graphs = by_n[n]
        if len(graphs) != CENSUS[n]:
            raise SystemExit(f"n={n}: generated {len(graphs)} graphs, census says {CENSUS[n]}")
        write_graph6_file(out / f"graphs{n}.g6", graphs)
        print(f"n={n}: {len(graphs)} graphs")


if __name__ == "__main__":
    main()
