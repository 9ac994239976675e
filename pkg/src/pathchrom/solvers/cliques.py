"""Maximum clique by bitset branch and bound with a greedy-colouring bound."""
from __future__ import annotations

from typing import Optional

from ..graph_core import Graph, iter_bits
from .budget import BudgetClock, BudgetExhausted, SolveBudget


def _colour_sort(p: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy colour classes over candidate set ``p``.  Returns vertices in
    class order with, for each, the number of classes used so far (an upper
    bound on a clique inside the prefix)."""
    order: list[int] = []
    bounds: list[int] = []
    k = 0
    rest = p
    while rest:
        k += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            rest &= ~low
            order.append(v)
            bounds.append(k)
    return order, bounds


def max_clique(g: Graph, budget: SolveBudget | BudgetClock | None = None, within: Optional[int] = None) -> list[int]:
    """A maximum clique of g (or of g[within]).  Raises BudgetExhausted."""
    clock = budget if isinstance(budget, BudgetClock) else BudgetClock(budget)
    cand = g.full_mask if within is None else within
    if not cand:
        return []
    # relabel by non-increasing degree so that low bits are high-degree vertices
    verts = sorted(iter_bits(cand), key=lambda v: (-(g.adj[v] & cand).bit_count(), v))
    pos = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for u in iter_bits(g.adj[v] & cand):
            row |= 1 << pos[u]
        adj.append(row)

    best: list[int] = []

    def expand(r: list[int], p: int) -> None:
        nonlocal best
        clock.tick()
        order, bounds = _colour_sort(p, adj)
        for idx in range(len(order) - 1, -1, -1):
            if len(r) + bounds[idx] <= len(best):
                return
            v = order[idx]
            np_ = p & adj[v]
            r.append(v)
            if np_:
                expand(r, np_)
            elif len(r) > len(best):
                best = list(r)
            r.pop()
            p &= ~(1 << v)

    expand([], (1 << len(verts)) - 1)
    return sorted(verts[i] for i in best)


def omega(g: Graph, budget: SolveBudget | None = None) -> Optional[int]:
    """Clique number, or None when the budget runs out."""
    try:
        return len(max_clique(g, budget))
    except BudgetExhausted:
        return None


def max_independent_set(g: Graph, budget: SolveBudget | BudgetClock | None = None) -> list[int]:
    return max_clique(g.complement(), budget)


def alpha(g: Graph, budget: SolveBudget | None = None) -> Optional[int]:
    """Independence number as the clique number of the complement."""
    try:
        return len(max_independent_set(g, budget))
    except BudgetExhausted:
        return None
