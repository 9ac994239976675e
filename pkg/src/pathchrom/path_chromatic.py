"""The path-chromatic number r(G): the largest chromatic number of a
subgraph induced by the vertex set of a path.

Two exact routes (traceable-subset table, and explicit path enumeration)
serve as oracles for each other; sampling gives lower bounds on graphs far
too large for either.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph_core import Colouring, Graph, PathWitness, induced_subgraph, iter_bits
from .solvers.budget import BudgetClock, BudgetExhausted, SolveBudget
from .solvers.colouring import chromatic_colouring, dsatur_greedy
from .solvers.paths import DP_LIMIT, Seed, _walk_back, is_traceable_subset, path_table, random_maximal_path

SUBSETS_CAP = 18
PATHS_CAP = 12

__all__ = [
    "Mode",
    "RResult",
    "r_exact_subsets",
    "r_exact_paths",
    "r_sampled_lower",
    "is_traceable_subset",
    "sample_seed",
    "extend_to_maximal",
]


class Mode(str, enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"


@dataclass
class RResult:
    value: int
    mode: Mode
    witness: PathWitness
    colouring: Optional[Colouring] = None  # optimal colouring of g[V(witness)]
    stats: dict = field(default_factory=dict)


class CapExceeded(ValueError):
    pass


def _clock(budget) -> BudgetClock:
    return budget if isinstance(budget, BudgetClock) else BudgetClock(budget)


def _chi_of(g: Graph, mask: int, clock: BudgetClock) -> tuple[int, Colouring]:
    h, _ = induced_subgraph(g, mask)
    col = chromatic_colouring(h, clock)
    if col is None:
        raise BudgetExhausted
    return col.num_colours, col


def _maximal_traceable(dp, n: int) -> list[int]:
    """Traceable masks with no traceable one-vertex extension (this
    includes every inclusion-maximal traceable set)."""
    size = 1 << n
    if isinstance(dp, np.ndarray):
        masks = np.arange(size, dtype=np.uint32)
        good = dp != 0
        for u in range(n):
            ubit = np.uint32(1 << u)
            lacking = (masks & ubit) == 0
            ext = np.zeros(size, dtype=bool)
            ext[lacking] = dp[masks[lacking] | ubit] != 0
            good &= ~ext
        return [int(m) for m in np.nonzero(good)[0]]
    full = size - 1
    out = []
    for mask in range(1, size):
        if dp[mask] and not any(dp[mask | (1 << u)] for u in iter_bits(full & ~mask)):
            out.append(mask)
    return out


def r_exact_subsets(g: Graph, budget: SolveBudget | None = None) -> RResult:
    """Exact r(G) by maximising chi over traceable vertex subsets (n <= 18).

    Only subsets without a traceable one-vertex extension are evaluated,
    largest first, skipping any whose size or greedy colour count cannot
    beat the best value found so far.
    """
    if g.n > SUBSETS_CAP:
        raise CapExceeded(f"r_exact_subsets is capped at {SUBSETS_CAP} vertices")
    if g.n == 0:
        return RResult(0, Mode.EXACT, PathWitness(()), Colouring(()), {"evaluated": 0})
    clock = _clock(budget)
    top = chromatic_colouring(g, clock)
    if top is None:
        raise BudgetExhausted
    dp = path_table(g)
    cands = sorted(_maximal_traceable(dp, g.n), key=lambda m: (-m.bit_count(), m))
    best, best_mask, best_col = 0, 0, None
    evaluated = 0
    for mask in cands:
        if best >= top.num_colours:
            break
        if mask.bit_count() <= best:
            break
        h, _ = induced_subgraph(g, mask)
        if max(dsatur_greedy(h)) + 1 <= best:
            continue
        col = chromatic_colouring(h, clock)
        if col is None:
            raise BudgetExhausted
        evaluated += 1
        if col.num_colours > best:
            best, best_mask, best_col = col.num_colours, mask, col
    e = int(dp[best_mask])
    path = _walk_back(g, dp, best_mask, (e & -e).bit_length() - 1)
    return RResult(best, Mode.EXACT, PathWitness(path), best_col, {"candidates": len(cands), "evaluated": evaluated})


def path_vertex_sets(g: Graph) -> dict[int, tuple[int, ...]]:
    """Every vertex set spanned by a simple path, with one path for each.

    Plain depth-first enumeration from every start vertex; a (set, end)
    state already explored is not explored again, which is what keeps this
    tractable on dense graphs."""
    adj = g.adj
    found: dict[int, tuple[int, ...]] = {}
    seen: set[tuple[int, int]] = set()
    path: list[int] = []

    def dfs(mask: int, end: int) -> None:
        if (mask, end) in seen:
            return
        seen.add((mask, end))
        if mask not in found:
            found[mask] = tuple(path)
        for u in iter_bits(adj[end] & ~mask):
            path.append(u)
            dfs(mask | (1 << u), u)
            path.pop()

    for s in range(g.n):
        path[:] = [s]
        dfs(1 << s, s)
    return found


def r_exact_paths(g: Graph, budget: SolveBudget | None = None) -> RResult:
    """Exact r(G) from explicit path enumeration (n <= 12)."""
    if g.n > PATHS_CAP:
        raise CapExceeded(f"r_exact_paths is capped at {PATHS_CAP} vertices")
    if g.n == 0:
        return RResult(0, Mode.EXACT, PathWitness(()), Colouring(()), {"vertex_sets": 0})
    clock = _clock(budget)
    sets = path_vertex_sets(g)
    best, best_path, best_col = 0, (), None
    for mask in sorted(sets, key=lambda m: -m.bit_count()):
        if mask.bit_count() <= best:
            break
        chi, col = _chi_of(g, mask, clock)
        if chi > best:
            best, best_path, best_col = chi, sets[mask], col
    return RResult(best, Mode.EXACT, PathWitness(best_path), best_col, {"vertex_sets": len(sets)})


def sample_seed(master: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index`` under ``master``."""
    return np.random.default_rng(np.random.SeedSequence(master, spawn_key=(index,)))


def extend_to_maximal(g: Graph, path: Sequence[int], seed: Seed = None) -> PathWitness:
    """Grow a given path at both ends at random until it is maximal."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    verts = list(path)
    used = bytearray(g.n)
    for v in verts:
        used[v] = 1
    nbrs = g.neighbour_lists()
    for _ in range(2):
        while True:
            cand = [u for u in nbrs[verts[-1]] if not used[u]]
            if not cand:
                break
            u = cand[int(rng.integers(len(cand)))]
            used[u] = 1
            verts.append(u)
        verts.reverse()
    return PathWitness(verts)


def r_sampled_lower(
    g: Graph,
    samples: int,
    seed: int = 0,
    budget: SolveBudget | None = None,
    extra_paths: Iterable[Sequence[int]] = (),
) -> RResult:
    """Lower bound on r(G): the best chi over ``samples`` random maximal
    paths (sample i uses the generator ``sample_seed(seed, i)``), plus any
    explicitly supplied paths.  A sample whose chi search runs out of
    budget is skipped and listed in ``stats['unknown_samples']``."""
    if g.n == 0:
        return RResult(0, Mode.LOWER_BOUND, PathWitness(()), Colouring(()), {"samples": 0})
    best, best_path, best_col = 0, PathWitness(()), None
    unknown: list = []
    histogram: dict[int, int] = {}

    def consider(p: PathWitness, tag) -> None:
        nonlocal best, best_path, best_col
        if not p.is_valid(g):
            raise ValueError(f"sample {tag} is not a path")
        h, _ = induced_subgraph(g, p.mask)
        col = chromatic_colouring(h, budget)
        if col is None:
            unknown.append(tag)
            return
        histogram[col.num_colours] = histogram.get(col.num_colours, 0) + 1
        if col.num_colours > best:
            best, best_path, best_col = col.num_colours, p, col

    for idx, extra in enumerate(extra_paths):
        consider(PathWitness(extra), f"extra{idx}")
    for i in range(samples):
        consider(random_maximal_path(g, sample_seed(seed, i)), i)
    return RResult(
        best,
        Mode.LOWER_BOUND,
        best_path,
        best_col,
        {"samples": samples, "unknown": len(unknown), "unknown_samples": unknown, "chi_histogram": histogram},
    )
