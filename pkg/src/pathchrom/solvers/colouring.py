"""Exact k-colourability and chromatic number.

The search is DSATUR-ordered backtracking with forward checking and
conflict-directed backjumping.  Colour symmetry is broken two ways: when no
pins are given a maximum clique is pinned to distinct colours, and once all
pins are placed a vertex only tries colours already in use plus the lowest
unused one (unused colours are interchangeable at that point).
"""
from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

from ..graph_core import Colouring, Graph, iter_bits
from .budget import Answer, BudgetClock, BudgetExhausted, SolveBudget, Verdict
from .cliques import max_clique

Pins = Union[Mapping[int, int], Sequence[Optional[int]], None]


def _normalise_pins(g: Graph, c: int, pins: Pins) -> dict[int, int]:
    if pins is None:
        return {}
    if isinstance(pins, Mapping):
        items = dict(pins)
    else:
        if len(pins) != g.n:
            raise ValueError("a pin sequence must have one entry per vertex")
        items = {v: col for v, col in enumerate(pins) if col is not None}
    for v, col in items.items():
        if not 0 <= v < g.n:
            raise ValueError(f"pinned vertex {v} out of range")
        if not 0 <= col < c:
            raise ValueError(f"pin colour {col} for vertex {v} outside 0..{c - 1}")
    return items


def dsatur_greedy(g: Graph) -> list[int]:
    """Greedy DSATUR colouring (upper bound)."""
    n = g.n
    nbrs = g.neighbour_lists()
    col = [-1] * n
    sat = [0] * n  # bitset of neighbour colours
    deg = [len(x) for x in nbrs]
    free = set(range(n))
    while free:
        v = min(free, key=lambda u: (-sat[u].bit_count(), -deg[u], u))
        s = sat[v]
        c = (~s & (s + 1)).bit_length() - 1
        col[v] = c
        free.discard(v)
        bit = 1 << c
        for u in nbrs[v]:
            sat[u] |= bit
    return col


def _clique_cover(g: Graph, min_size: int = 4) -> list[list[int]]:
    """Greedy maximal cliques so that every vertex lying in some clique of
    at least ``min_size`` vertices is (usually) in one of them."""
    adj = g.adj
    covered = 0
    cliques: list[list[int]] = []
    seen: set[tuple[int, ...]] = set()
    for v in sorted(range(g.n), key=lambda u: (-g.degree(u), u)):
        if (covered >> v) & 1 or g.degree(v) + 1 < min_size:
            continue
        clique = [v]
        cand = adj[v]
        while cand:
            # prefer the candidate keeping the most candidates alive
            best = max(iter_bits(cand), key=lambda u: ((adj[u] & cand).bit_count(), -u))
            clique.append(best)
            cand &= adj[best]
        if len(clique) >= min_size:
            key = tuple(sorted(clique))
            if key not in seen:
                seen.add(key)
                cliques.append(list(key))
                for u in clique:
                    covered |= 1 << u
    return cliques


def _search(g: Graph, c: int, pins: list[tuple[int, int]], clock: BudgetClock) -> Optional[list[int]]:
    n = g.n
    nbrs = g.neighbour_lists()
    cliques = _clique_cover(g) if c >= 3 else []
    member: list[list[int]] = [[] for _ in range(n)]
    for ci, cl in enumerate(cliques):
        for u in cl:
            member[u].append(ci)
    deg = [len(x) for x in nbrs]
    full = (1 << c) - 1
    init = [full] * n
    for v, col in pins:
        init[v] = 1 << col
    dom = init[:]
    assigned = [-1] * n
    red: list[list[int]] = [[] for _ in range(n)]  # depths that pruned v
    pfc = [0] * n  # same, as a bitset over depths
    order: list[int] = []
    conf: list[int] = []
    was_new: list[bool] = []
    used = [0] * c
    used_mask = 0
    npins = len(pins)
    pin_vertices = [v for v, _ in pins]
    free = set(range(n))

    def undo(j: int) -> None:
        w = order[j]
        bit = 1 << assigned[w]
        jbit = 1 << j
        for u in nbrs[w]:
            ru = red[u]
            if ru and ru[-1] == j:
                ru.pop()
                pfc[u] &= ~jbit
                dom[u] |= bit

    def unassign(w: int) -> None:
        nonlocal used_mask
        col = assigned[w]
        used[col] -= 1
        if not used[col]:
            used_mask &= ~(1 << col)
        assigned[w] = -1
        free.add(w)

    def label(i: int) -> bool:
        nonlocal used_mask
        v = order[i]
        while True:
            d = dom[v]
            if i >= npins:
                fresh = d & ~used_mask
                cand = (d & used_mask) | (fresh & -fresh)
            else:
                fresh = 0
                cand = d
            if not cand:
                return False
            clock.tick()
            bit = cand & -cand
            col = bit.bit_length() - 1
            is_new = bool(bit & fresh)
            assigned[v] = col
            used[col] += 1
            used_mask |= bit
            free.discard(v)
            ibit = 1 << i
            wiped = -1
            for u in nbrs[v]:
                if assigned[u] < 0 and dom[u] & bit:
                    dom[u] &= ~bit
                    red[u].append(i)
                    pfc[u] |= ibit
                    if not dom[u]:
                        wiped = u
                        break
            hall = 0
            if wiped < 0 and cliques:
                # pigeonhole on cliques touched by this assignment
                touched = {ci for u in nbrs[v] if red[u] and red[u][-1] == i for ci in member[u]}
                for ci in touched:
                    union = 0
                    cnt = 0
                    why = 0
                    for u in cliques[ci]:
                        if assigned[u] < 0:
                            union |= dom[u]
                            cnt += 1
                            why |= pfc[u]
                    if union.bit_count() < cnt:
                        hall = why | ibit
                        break
            if wiped < 0 and not hall:
                was_new[i] = is_new
                return True
            conf[i] |= pfc[wiped] if wiped >= 0 else hall
            undo(i)
            unassign(v)
            dom[v] &= ~(fresh if is_new else bit)

    def reset_domain(w: int) -> None:
        d = init[w]
        for dd in red[w]:
            d &= ~(1 << assigned[order[dd]])
        dom[w] = d

    def unlabel(i: int) -> int:
        v = order[i]
        cs = (conf[i] | pfc[v]) & ~(1 << i)
        if not cs:
            return -1
        h = cs.bit_length() - 1
        conf[h] |= cs & ~(1 << h)
        released = []
        for j in range(i, h, -1):
            w = order[j]
            if assigned[w] >= 0:
                undo(j)
                unassign(w)
            released.append(w)
            order.pop()
            conf.pop()
            was_new.pop()
        # values tried by the released vertices are no longer excluded
        for w in released:
            reset_domain(w)
        w = order[h]
        col = assigned[w]
        undo(h)
        unassign(w)
        if was_new[h]:
            dom[w] &= ~(dom[w] & ~used_mask)
        else:
            dom[w] &= ~(1 << col)
        return h

    if n == 0:
        return []
    consistent = True
    i = -1
    while True:
        if consistent:
            if len(order) == n:
                return assigned[:]
            depth = len(order)
            if depth < npins:
                v = pin_vertices[depth]
            else:
                v = min(free, key=lambda u: (dom[u].bit_count(), -deg[u], u))
            order.append(v)
            conf.append(0)
            was_new.append(False)
            i = depth
            consistent = label(i)
        else:
            h = unlabel(i)
            if h < 0:
                return None
            i = h
            consistent = label(i)


def _decide(g: Graph, c: int, pins: Pins, budget, clique: Optional[list[int]], use_clique: bool) -> Verdict[list[int]]:
    if c < 0:
        raise ValueError("colour count must be non-negative")
    pin_map = _normalise_pins(g, c, pins)
    for v, col in pin_map.items():
        for u in g.neighbours(v):
            if pin_map.get(u) == col:
                return Verdict(Answer.NO)
    if g.n == 0:
        return Verdict(Answer.YES, [])
    if c == 0:
        return Verdict(Answer.NO)
    clock = budget if isinstance(budget, BudgetClock) else BudgetClock(budget)
    try:
        pin_list = list(pin_map.items())
        if not pin_list and use_clique:
            if clique is None:
                clique = max_clique(g, clock)
            if len(clique) > c:
                return Verdict(Answer.NO, nodes=clock.nodes)
            pin_list = [(v, i) for i, v in enumerate(clique)]
        result = _search(g, c, pin_list, clock)
    except BudgetExhausted:
        return Verdict(Answer.UNKNOWN, nodes=clock.nodes)
    if result is None:
        return Verdict(Answer.NO, nodes=clock.nodes)
    return Verdict(Answer.YES, result, nodes=clock.nodes)


def k_colourable(
    g: Graph,
    c: int,
    pins: Pins = None,
    budget: SolveBudget | BudgetClock | None = None,
    *,
    clique: Optional[list[int]] = None,
    use_clique: bool = True,
) -> Verdict[Colouring]:
    """Decide whether g has a proper colouring with colours 0..c-1 that
    extends ``pins``.  Yes carries the colouring in canonical (compressed)
    form; No is returned only after a complete search.  Without pins a
    maximum clique is pinned first to break colour symmetry."""
    v = _decide(g, c, pins, budget, clique, use_clique)
    if v.yes:
        return Verdict(Answer.YES, Colouring(v.witness), v.nodes)
    return Verdict(v.answer, None, v.nodes)


def k_colouring_raw(
    g: Graph, c: int, pins: Pins = None, budget: SolveBudget | BudgetClock | None = None
) -> Verdict[list[int]]:
    """Like k_colourable but the witness keeps raw colour ids 0..c-1, so
    pinned colours keep their meaning."""
    return _decide(g, c, pins, budget, None, True)


def chromatic_colouring(g: Graph, budget: SolveBudget | BudgetClock | None = None) -> Optional[Colouring]:
    """An optimal colouring, or None if the budget runs out."""
    if g.n == 0:
        return Colouring(())
    clock = budget if isinstance(budget, BudgetClock) else BudgetClock(budget)
    try:
        clique = max_clique(g, clock)
    except BudgetExhausted:
        return None
    best = dsatur_greedy(g)
    ub = max(best) + 1
    for c in range(len(clique), ub):
        v = k_colourable(g, c, budget=clock, clique=clique)
        if v.yes:
            return v.witness
        if v.unknown:
            return None
    return Colouring(best)


def chromatic_number(g: Graph, budget: SolveBudget | BudgetClock | None = None) -> Optional[int]:
    """Exact chromatic number, or None when the budget runs out."""
    col = chromatic_colouring(g, budget)
    return None if col is None else col.num_colours
