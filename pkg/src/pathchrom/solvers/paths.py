"""Hamiltonian paths and cycles, traceable-subset tables, random maximal
paths and the Chvatal-Erdos test."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..graph_core import Graph, PathWitness, iter_bits, induced_subgraph
from .budget import Answer, BudgetClock, BudgetExhausted, SolveBudget, Verdict
from .cliques import alpha as alpha_number
from .connectivity import kappa as kappa_number

DP_LIMIT = 22
_NUMPY_FROM = 13

Seed = Union[int, np.random.Generator, np.random.SeedSequence, None]


def _popcount32(x: np.ndarray) -> np.ndarray:
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return (x * 0x01010101) >> 24


def path_table(g: Graph, start: Optional[int] = None):
    """``t[mask]`` = bitset of vertices v such that g[mask] has a Hamiltonian
    path ending at v (starting at ``start`` when given).  n <= 22."""
    n = g.n
    if n > DP_LIMIT:
        raise ValueError(f"path table limited to {DP_LIMIT} vertices, got {n}")
    size = 1 << n
    adj = g.adj
    if n < _NUMPY_FROM:
        dp = [0] * size
        for v in ([start] if start is not None else range(n)):
            dp[1 << v] = 1 << v
        full = size - 1
        for mask in range(1, size):
            e = dp[mask]
            if not e:
                continue
            for u in iter_bits(full & ~mask):
                if adj[u] & e:
                    dp[mask | (1 << u)] |= 1 << u
        return dp
    dp = np.zeros(size, dtype=np.uint32)
    for v in ([start] if start is not None else range(n)):
        dp[1 << v] = 1 << v
    masks = np.arange(size, dtype=np.uint32)
    pc = _popcount32(masks)
    order = np.argsort(pc, kind="stable").astype(np.uint32)
    bounds = np.concatenate(([0], np.cumsum(np.bincount(pc, minlength=n + 1))))
    adj_np = np.array(adj, dtype=np.uint32)
    for layer_size in range(1, n):
        layer = order[bounds[layer_size]:bounds[layer_size + 1]]
        d = dp[layer]
        keep = d != 0
        layer, d = layer[keep], d[keep]
        if layer.size == 0:
            continue
        for u in range(n):
            ubit = np.uint32(1 << u)
            sel = ((layer & ubit) == 0) & ((d & adj_np[u]) != 0)
            if sel.any():
                tgt = layer[sel] | ubit
                dp[tgt] |= ubit
    return dp


def _walk_back(g: Graph, dp, mask: int, end: int) -> list[int]:
    path = [end]
    v = end
    while mask & (mask - 1):
        prev = mask ^ (1 << v)
        u = (int(dp[prev]) & g.adj[v])
        u = (u & -u).bit_length() - 1
        path.append(u)
        mask, v = prev, u
    path.reverse()
    return path


def traceable_masks(g: Graph):
    """The full table; ``bool(t[mask])`` says whether g[mask] is traceable."""
    return path_table(g)


def longest_path(g: Graph) -> PathWitness:
    """A longest path (exact; n <= 22)."""
    if g.n == 0:
        return PathWitness(())
    dp = path_table(g)
    best_mask, best_len = 0, 0
    for mask in range(1, 1 << g.n):
        if dp[mask]:
            c = mask.bit_count()
            if c > best_len:
                best_mask, best_len = mask, c
    e = int(dp[best_mask])
    return PathWitness(_walk_back(g, dp, best_mask, (e & -e).bit_length() - 1))


def hamiltonian_path(g: Graph, budget: SolveBudget | BudgetClock | None = None) -> Verdict[PathWitness]:
    """Held-Karp for n <= 22 (always decisive), pruned DFS above."""
    n = g.n
    if n == 0:
        return Verdict(Answer.YES, PathWitness(()))
    if n <= DP_LIMIT:
        dp = path_table(g)
        full = (1 << n) - 1
        e = int(dp[full])
        if not e:
            return Verdict(Answer.NO)
        return Verdict(Answer.YES, PathWitness(_walk_back(g, dp, full, (e & -e).bit_length() - 1)))
    return _dfs(g, budget, cycle=False)


def hamiltonian_cycle(g: Graph, budget: SolveBudget | BudgetClock | None = None) -> Verdict[PathWitness]:
    n = g.n
    if n < 3:
        return Verdict(Answer.NO)
    if n <= DP_LIMIT:
        dp = path_table(g, start=0)
        full = (1 << n) - 1
        e = int(dp[full]) & g.adj[0]
        if not e:
            return Verdict(Answer.NO)
        verts = _walk_back(g, dp, full, (e & -e).bit_length() - 1)
        return Verdict(Answer.YES, PathWitness(verts, closed=True))
    return _dfs(g, budget, cycle=True)


def _dfs(g: Graph, budget, cycle: bool) -> Verdict[PathWitness]:
    clock = budget if isinstance(budget, BudgetClock) else BudgetClock(budget)
    n = g.n
    adj = g.adj
    full = g.full_mask

    def connected(mask: int) -> bool:
        if not mask:
            return True
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    path: list[int] = []

    def extend(end: int, unvisited: int, start: int) -> bool:
        clock.tick()
        if not unvisited:
            return not cycle or bool((adj[end] >> start) & 1)
        avail = unvisited | (1 << end)
        if cycle:
            avail |= 1 << start
        if not connected(avail):
            return False
        loose = 0
        for u in iter_bits(unvisited):
            d = (adj[u] & avail).bit_count()
            if d == 0:
                return False
            if d == 1:
                loose += 1
        if loose > (0 if cycle else 1):
            return False
        options = sorted(iter_bits(adj[end] & unvisited), key=lambda u: ((adj[u] & unvisited).bit_count(), u))
        for u in options:
            path.append(u)
            if extend(u, unvisited & ~(1 << u), start):
                return True
            path.pop()
        return False

    starts = [0] if cycle else sorted(range(n), key=lambda v: (g.degree(v), v))
    try:
        import sys

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 4 * n + 100))
        try:
            for s in starts:
                path[:] = [s]
                if extend(s, full & ~(1 << s), s):
                    return Verdict(Answer.YES, PathWitness(path, closed=cycle), clock.nodes)
        finally:
            sys.setrecursionlimit(old)
    except BudgetExhausted:
        return Verdict(Answer.UNKNOWN, nodes=clock.nodes)
    return Verdict(Answer.NO, nodes=clock.nodes)


def is_traceable(g: Graph, budget: SolveBudget | None = None) -> Optional[bool]:
    v = hamiltonian_path(g, budget)
    return None if v.unknown else v.yes


def _rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_maximal_path(g: Graph, seed: Seed = None) -> PathWitness:
    """Random simple path grown at both ends until neither end can move."""
    if g.n == 0:
        raise ValueError("random_maximal_path needs a nonempty graph")
    rng = _rng(seed)
    nbrs = g.neighbour_lists()
    start = int(rng.integers(g.n))
    left: list[int] = []  # reversed prefix
    right: list[int] = [start]
    used = bytearray(g.n)
    used[start] = 1
    alive = [True, True]
    while alive[0] or alive[1]:
        side = int(rng.integers(2)) if alive[0] and alive[1] else (0 if alive[0] else 1)
        end = (left[-1] if left else right[0]) if side == 0 else right[-1]
        cand = [u for u in nbrs[end] if not used[u]]
        if not cand:
            alive[side] = False
            continue
        u = cand[int(rng.integers(len(cand)))]
        used[u] = 1
        (left if side == 0 else right).append(u)
    left.reverse()
    return PathWitness(left + right)


@dataclass(frozen=True)
class ChvatalErdosResult:
    condition_holds: bool
    kappa: int
    alpha: int
    answer: Answer  # Hamiltonicity outcome of the search
    cycle: Optional[PathWitness] = None


def chvatal_erdos_hamiltonian(g: Graph, budget: SolveBudget | None = None) -> ChvatalErdosResult:
    """Evaluate kappa >= alpha and search for a Hamilton cycle."""
    if g.n < 3:
        raise ValueError("the Chvatal-Erdos test needs at least 3 vertices")
    k = kappa_number(g)
    a = alpha_number(g, budget)
    if a is None:
        raise BudgetExhausted
    v = hamiltonian_cycle(g, budget)
    return ChvatalErdosResult(k >= a, k, a, v.answer, v.witness)


def is_traceable_subset(g: Graph, s) -> bool:
    """Whether g[s] has a Hamiltonian path (|s| <= 22)."""
    h, _ = induced_subgraph(g, s)
    if h.n > DP_LIMIT:
        raise ValueError(f"subset size {h.n} exceeds {DP_LIMIT}")
    return hamiltonian_path(h).yes
