"""DIMACS CNF, DOT, the role sidecar and JSON-lines reports."""
from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Any, Iterable, Mapping, Optional

from ..construction import LabeledConstruction
from ..graph_core import Graph
from ..report import Report


def colour_var(v: int, i: int, c: int) -> int:
    """DIMACS variable for 'vertex v gets colour i' (colours 0..c-1)."""
    return v * c + i + 1


def emit_dimacs_cnf(g: Graph, c: int, pins: Optional[Mapping[int, int]] = None) -> bytes:
    """CNF that is satisfiable iff g has a proper c-colouring honouring
    ``pins`` (vertex -> colour in 0..c-1).

    Clauses: one at-least-one clause per vertex, one conflict clause per edge
    and colour, one unit clause per pin.
    """
    if c < 1:
        raise ValueError("need at least one colour")
    pins = dict(pins or {})
    for v, col in pins.items():
        if not 0 <= v < g.n or not 0 <= col < c:
            raise ValueError(f"pin {v}->{col} out of range")
    clauses: list[str] = []
    for v in range(g.n):
        clauses.append(" ".join(str(colour_var(v, i, c)) for i in range(c)) + " 0")
    for u, v in g.edges():
        for i in range(c):
            clauses.append(f"-{colour_var(u, i, c)} -{colour_var(v, i, c)} 0")
    for v, col in sorted(pins.items()):
        clauses.append(f"{colour_var(v, col, c)} 0")
    head = f"p cnf {g.n * c} {len(clauses)}"
    return ("\n".join([head, *clauses]) + "\n").encode("ascii")


def parse_dimacs_cnf(data: bytes | str) -> tuple[int, list[list[int]]]:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    nvars, clauses, cur = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            _, fmt, nv, nc = line.split()
            if fmt != "cnf":
                raise ValueError("not a cnf header")
            nvars = int(nv)
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        raise ValueError("last clause is not terminated by 0")
    return nvars, clauses


_PART_STYLE = {
    "A": 'shape=box, style=filled, fillcolor="#cfe2f3"',
    "B": 'shape=ellipse, style=filled, fillcolor="#f4cccc"',
    None: 'shape=diamond, style=filled, fillcolor="#fff2cc"',
}


def emit_dot(lc: LabeledConstruction) -> bytes:
    """Undirected DOT drawing: A and B vertices styled differently, layer
    specials labelled, W vertices drawn with a double border."""
    lines = [f'graph "G_r{lc.r}_k{lc.k}" {{']
    for v, tag in enumerate(lc.roles):
        label = tag.special_label()
        text = f"{v}" if label is None else f"{v}:{label}"
        attrs = [_PART_STYLE[tag.partition], f'label="{text}{" W" if tag.in_w else ""}"']
        if tag.in_w:
            attrs.append("peripheries=2")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in lc.g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def roles_json(lc: LabeledConstruction) -> dict[str, Any]:
    return {
        "r": lc.r,
        "k": lc.k,
        "kind": lc.kind,
        "n": lc.g.n,
        "apexes": {"vA": lc.aux_a, "vB": lc.aux_b} if lc.aux_a is not None else None,
        "roles": [t.to_json() for t in lc.roles],
    }


def write_roles_json(lc: LabeledConstruction, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(roles_json(lc), fh)


class ReportWriter:
    """Appends one JSON object per line; the first line is a header."""

    def __init__(self, target: str | Path | IO[str], header: Optional[Mapping[str, Any]] = None):
        self._own = not hasattr(target, "write")
        self._fh: IO[str] = open(target, "w", encoding="utf-8") if self._own else target  # type: ignore[arg-type]
        if header is not None:
            self._write({"header": dict(header)})

    def _write(self, obj: Mapping[str, Any]) -> None:
        self._fh.write(json.dumps(obj, default=str) + "\n")
        self._fh.flush()

    def write(self, report: Report) -> None:
        self._write(report.to_json())

    def write_all(self, reports: Iterable[Report]) -> None:
        for r in reports:
            self.write(r)

    def close(self) -> None:
        if self._own:
            self._fh.close()

    def __enter__(self) -> "ReportWriter":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


def read_jsonl(path: str | Path) -> list[dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
