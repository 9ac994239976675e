"""Forbidden induced subgraphs.

Patterns are small graphs (at most 12 vertices) named in the usual way:
``K1``, ``2K1``, ``P3``, ``K2+K1``, ``P3+K1``, ``2K2``, ``K1_3`` (the claw),
``P5`` and so on.  Detection is a backtracking induced-subgraph search with
degree pruning; stars get a dedicated test.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..graph_core import Graph, complete_graph, disjoint_union, iter_bits, path_graph, star_graph

MAX_PATTERN = 12


@dataclass(frozen=True)
class ForbiddenPattern:
    name: str
    graph: Graph
    star_leaves: Optional[int] = None  # set for K_{1,t}

    def __post_init__(self) -> None:
        if self.graph.n > MAX_PATTERN:
            raise ValueError(f"pattern {self.name} has more than {MAX_PATTERN} vertices")

    @classmethod
    def star(cls, t: int) -> "ForbiddenPattern":
        if t < 1:
            raise ValueError("K1_t needs t >= 1")
        return cls(f"K1_{t}", star_graph(t), t)

    @classmethod
    def path(cls, t: int) -> "ForbiddenPattern":
        if t < 1:
            raise ValueError("P_t needs t >= 1")
        return cls(f"P{t}", path_graph(t))

    @classmethod
    def custom(cls, g: Graph, name: str = "custom") -> "ForbiddenPattern":
        return cls(name, g)

    @classmethod
    def parse(cls, text: str) -> "ForbiddenPattern":
        """Parse names such as ``P4``, ``K2+2K1``, ``3K1``, ``K1_3``,
        ``K1,3`` or ``claw``."""
        name = text.strip().replace(" ", "")
        if name.lower() == "claw":
            return cls.star(3)
        m = re.fullmatch(r"K1[_,](\d+)", name)
        if m:
            return cls.star(int(m.group(1)))
        parts = []
        for term in name.split("+"):
            m = re.fullmatch(r"(\d*)([KP])(\d+)", term)
            if not m:
                raise ValueError(f"cannot parse pattern {text!r}")
            mult = int(m.group(1) or 1)
            size = int(m.group(3))
            if size < 1 or mult < 1:
                raise ValueError(f"cannot parse pattern {text!r}")
            piece = complete_graph(size) if m.group(2) == "K" else path_graph(size)
            parts.extend([piece] * mult)
        g = disjoint_union(*parts)
        star = 1 if g.n == 2 and g.m == 1 else None
        return cls(name, g, star)

    def __str__(self) -> str:
        return self.name


# The forests on at most four vertices other than the claw.
SMALL_FORESTS = ("K1", "K2", "2K1", "P3", "K2+K1", "3K1", "P4", "P3+K1", "K2+2K1", "2K2", "4K1")


def _find_star(g: Graph, t: int) -> Optional[tuple[int, ...]]:
    adj = g.adj
    for v in range(g.n):
        if g.degree(v) < t:
            continue
        chosen: list[int] = []

        def grow(cand: int) -> bool:
            if len(chosen) == t:
                return True
            if cand.bit_count() < t - len(chosen):
                return False
            for u in iter_bits(cand):
                chosen.append(u)
                if grow(cand & ~adj[u] & ~((1 << (u + 1)) - 1)):
                    return True
                chosen.pop()
            return False

        if grow(adj[v]):
            return (v, *chosen)
    return None


def has_induced(g: Graph, pat: ForbiddenPattern | str) -> Optional[tuple[int, ...]]:
    """An embedding of the pattern as an induced subgraph, or None.

    The result lists host vertices in pattern-vertex order, so
    ``g.induced(result)`` equals the pattern graph.
    """
    if isinstance(pat, str):
        pat = ForbiddenPattern.parse(pat)
    p = pat.graph
    if p.n == 0:
        return ()
    if p.n > g.n:
        return None
    if pat.star_leaves is not None and p.n == pat.star_leaves + 1:
        return _find_star(g, pat.star_leaves)
    # order pattern vertices so each one after the first is, when possible,
    # adjacent to an earlier one (constrains candidates early)
    order: list[int] = []
    left = p.full_mask
    while left:
        seen = 0
        for q in order:
            seen |= p.adj[q]
        pool = left & seen or left
        q = max(iter_bits(pool), key=lambda x: (p.degree(x), -x))
        order.append(q)
        left &= ~(1 << q)
    pdeg = [p.degree(q) for q in range(p.n)]
    hdeg = [g.degree(v) for v in range(g.n)]
    full = g.full_mask
    image = [-1] * p.n
    nonadj = [full & ~g.adj[v] & ~(1 << v) for v in range(g.n)]

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        q = order[i]
        cand = full & ~used
        for prev in order[:i]:
            h = image[prev]
            cand &= g.adj[h] if (p.adj[q] >> prev) & 1 else nonadj[h]
            if not cand:
                return False
        for v in iter_bits(cand):
            if hdeg[v] < pdeg[q]:
                continue
            image[q] = v
            if place(i + 1, used | (1 << v)):
                return True
        image[q] = -1
        return False

    if place(0, 0):
        return tuple(image)
    return None


def is_free(g: Graph, *patterns: ForbiddenPattern | str) -> bool:
    return all(has_induced(g, p) is None for p in patterns)
