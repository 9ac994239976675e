"""Bound checks, path-perfectness and counterexample search over graph
corpora.

Corpora are lists of :class:`Graph`.  The exhaustive lists of all graphs on
up to 8 vertices ship with the package as graph6 files and are only handed
out after their sizes match the known census.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from ..graph_core import Graph, induced_subgraph, iter_bits
from ..io_cli.graph6 import emit_graph6, parse_graph6
from ..path_chromatic import SUBSETS_CAP, r_exact_subsets
from ..report import Report, Timer
from ..solvers.budget import BudgetExhausted, SolveBudget
from ..solvers.cliques import alpha
from ..solvers.colouring import chromatic_number
from ..solvers.paths import hamiltonian_path, path_table
from .patterns import ForbiddenPattern, has_induced

# Number of graphs on n unlabelled vertices (OEIS A000088).
CENSUS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
PATH_PERFECT_CAP = 10


class CorpusError(RuntimeError):
    pass


def load_corpus(n: int, validate: bool = True) -> list[Graph]:
    """All graphs on exactly n vertices, up to isomorphism (n <= 8)."""
    if n not in CENSUS:
        raise CorpusError(f"no bundled corpus for n={n}")
    data = resources.files("pathchrom.data").joinpath(f"graphs{n}.g6").read_bytes()
    graphs = [parse_graph6(line) for line in data.splitlines() if line.strip()]
    if validate:
        if len(graphs) != CENSUS[n]:
            raise CorpusError(f"corpus n={n} has {len(graphs)} graphs, census says {CENSUS[n]}")
        if any(g.n != n for g in graphs):
            raise CorpusError(f"corpus n={n} contains a graph of another order")
    return graphs


def load_corpus_upto(n_max: int, n_min: int = 1) -> list[Graph]:
    out: list[Graph] = []
    for n in range(n_min, n_max + 1):
        out.extend(load_corpus(n))
    return out


def worker_count() -> int:
    """Parallelism cap from PATHCHROM_THREADS (default 1)."""
    raw = os.environ.get("PATHCHROM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"PATHCHROM_THREADS must be an integer, got {raw!r}") from None


# -- invariants ----------------------------------------------------------------

_INVARIANTS: dict[Graph, tuple[int, int]] = {}


def _compute(g: Graph) -> tuple[int, int]:
    chi = chromatic_number(g)
    res = r_exact_subsets(g)
    return chi, res.value


def chi_and_r(g: Graph) -> tuple[int, int]:
    """(chi, r) of a corpus graph, cached per graph."""
    hit = _INVARIANTS.get(g)
    if hit is None:
        hit = _INVARIANTS[g] = _compute(g)
    return hit


def prefetch_invariants(graphs: Sequence[Graph], workers: Optional[int] = None) -> None:
    todo = [g for g in graphs if g not in _INVARIANTS and g.n <= SUBSETS_CAP]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(todo) < 64:
        for g in todo:
            chi_and_r(g)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for g, val in zip(todo, pool.map(_compute, todo, chunksize=64)):
            _INVARIANTS[g] = val


# -- bounds ----------------------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    name: str
    holds: Callable[[int, int], bool]  # (chi, r) -> bool

    @staticmethod
    def parse(text: str) -> "Bound":
        t = text.replace(" ", "")
        table = {
            "chi=r": Bound("chi=r", lambda c, r: c == r),
            "chi<=r+1": Bound("chi<=r+1", lambda c, r: c <= r + 1),
            "chi<=2r": Bound("chi<=2r", lambda c, r: c <= 2 * r),
            "chi<=3r": Bound("chi<=3r", lambda c, r: c <= 3 * r),
        }
        if t in table:
            return table[t]
        if t.startswith("K1t:"):
            return star_bound(int(t[4:]))
        raise ValueError(f"unknown bound {text!r}; expected one of {sorted(table)} or K1t:<t>")


def star_bound(t: int) -> Bound:
    """chi <= (t-1)(r + C(t-1, 2) - 3) for K_{1,t}-free graphs, t >= 4."""
    if t < 4:
        raise ValueError("the star bound is stated for t >= 4")
    return Bound(f"K1t:{t}", lambda c, r: c <= (t - 1) * (r + comb(t - 1, 2) - 3))


def _patterns(p) -> list[ForbiddenPattern]:
    if p is None:
        return []
    if isinstance(p, (ForbiddenPattern, str)):
        p = [p]
    return [ForbiddenPattern.parse(x) if isinstance(x, str) else x for x in p]


def passes_filter(g: Graph, patterns) -> bool:
    return all(has_induced(g, p) is None for p in _patterns(patterns))


def verify_bound_corpus(
    corpus: Iterable[Graph],
    pattern,
    bound: Bound | str,
    budget: Optional[SolveBudget] = None,
    workers: Optional[int] = None,
) -> Report:
    """Check ``bound`` on every graph of the corpus that is free of all the
    given patterns.  A violation carries the graph6 string of the graph."""
    bound = Bound.parse(bound) if isinstance(bound, str) else bound
    pats = _patterns(pattern)
    rep = Report(f"bound[{bound.name}|{'+'.join(p.name for p in pats) or 'all'}-free]")
    with Timer(rep):
        graphs = list(corpus)
        chosen = [g for g in graphs if g.n <= SUBSETS_CAP and passes_filter(g, pats)]
        skipped = sum(1 for g in graphs if g.n > SUBSETS_CAP)
        prefetch_invariants(chosen, workers)
        for g in chosen:
            chi, r = chi_and_r(g)
            if not bound.holds(chi, r):
                rep.fail("bound violated", graph6=emit_graph6(g).decode(), chi=chi, r=r)
        rep.stats.update(instances=len(graphs), filtered=len(chosen), skipped=skipped)
    return rep


# -- path-perfectness -------------------------------------------------------------

def _chi_table(g: Graph) -> list[int]:
    """chi of every induced subgraph, by peeling off independent sets that
    contain the lowest vertex."""
    n = g.n
    size = 1 << n
    adj = g.adj
    indep = bytearray(size)
    indep[0] = 1
    for m in range(1, size):
        low = (m & -m).bit_length() - 1
        indep[m] = indep[m & (m - 1)] and not (adj[low] & m)
    chi = [0] * size
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & ~adj[low] & ~(1 << low)
        best = n
        sub = rest
        while True:
            if indep[sub]:
                c = chi[s & ~sub & ~(1 << low)]
                if c < best:
                    best = c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        chi[s] = best + 1
    return chi


def _path_perfect_definition(g: Graph) -> Optional[int]:
    """First vertex set S (by size) with chi(G[S]) != r(G[S]), or None."""
    chi = _chi_table(g)
    trace = path_table(g)
    size = 1 << g.n
    r = [0] * size
    bad = None
    for s in sorted(range(1, size), key=lambda m: (m.bit_count(), m)):
        if trace[s]:
            r[s] = chi[s]
        else:
            r[s] = max(r[s & ~(1 << v)] for v in iter_bits(s))
        if r[s] != chi[s] and bad is None:
            bad = s
    return bad


def _path_perfect_critical(g: Graph, budget: Optional[SolveBudget]) -> Optional[int]:
    """First vertex-critical induced subgraph that is not traceable."""
    size = 1 << g.n
    chi = [0] * size
    order = sorted(range(1, size), key=lambda m: (m.bit_count(), m))
    for s in order:
        h, _ = induced_subgraph(g, s)
        c = chromatic_number(h, budget)
        if c is None:
            raise BudgetExhausted
        chi[s] = c
    for s in order:
        if all(chi[s & ~(1 << v)] < chi[s] for v in iter_bits(s)):
            h, _ = induced_subgraph(g, s)
            if not hamiltonian_path(h).yes:
                return s
    return None


def is_path_perfect(g: Graph, budget: Optional[SolveBudget] = None, method: str = "definition") -> Report:
    """Whether every induced subgraph has chi = r (n <= 10).

    ``method="definition"`` compares chi and r on every vertex subset using
    subset tables; ``method="critical"`` checks that every vertex-critical
    induced subgraph is traceable, using the solvers directly.
    """
    if g.n > PATH_PERFECT_CAP:
        raise ValueError(f"is_path_perfect is capped at {PATH_PERFECT_CAP} vertices")
    rep = Report(f"path_perfect[{method}]")
    with Timer(rep):
        if method == "definition":
            bad = _path_perfect_definition(g)
        elif method == "critical":
            try:
                bad = _path_perfect_critical(g, budget)
            except BudgetExhausted:
                rep.unknown("budget exhausted")
                return rep
        else:
            raise ValueError(f"unknown method {method!r}")
        if bad is not None:
            h, _ = induced_subgraph(g, bad)
            rep.fail("induced subgraph with chi != r", vertices=list(iter_bits(bad)), graph6=emit_graph6(h).decode())
    return rep


def is_vertex_critical(g: Graph, budget: Optional[SolveBudget] = None) -> Optional[bool]:
    """chi(G - v) < chi(G) for every v; None when the budget runs out."""
    if g.n == 0:
        return False
    c = chromatic_number(g, budget)
    if c is None:
        return None
    for v in range(g.n):
        h, _ = induced_subgraph(g, g.full_mask & ~(1 << v))
        cv = chromatic_number(h, budget)
        if cv is None:
            return None
        if cv >= c:
            return False
    return True


# -- conjecture hunt -----------------------------------------------------------------

def _alpha_is(value: int) -> Callable[[Graph], bool]:
    def test(g: Graph) -> bool:
        return alpha(g) == value

    return test


CONJECTURES: dict[str, Callable[[Graph], bool]] = {
    "clawfree_pp": lambda g: has_induced(g, ForbiddenPattern.star(3)) is None,
    "alpha4_pp": _alpha_is(4),
    "2K2_pp": lambda g: has_induced(g, "2K2") is None,
    "K2_2K1_pp": lambda g: has_induced(g, "K2+2K1") is None,
    "P5free_pp": lambda g: has_induced(g, ForbiddenPattern.path(5)) is None,
}


def hunt_counterexamples(
    corpus: Iterable[Graph],
    conjecture: str,
    budget: Optional[SolveBudget] = None,
    workers: Optional[int] = None,
) -> Report:
    """Look for a graph in the conjecture's class with chi != r.

    Over a corpus closed under induced subgraphs this decides
    path-perfectness of every member.  A violator is reported as Fail with
    its graph6 string.
    """
    if conjecture not in CONJECTURES:
        raise ValueError(f"unknown conjecture {conjecture!r}; choose from {sorted(CONJECTURES)}")
    member = CONJECTURES[conjecture]
    rep = Report(f"conjecture[{conjecture}]")
    with Timer(rep):
        graphs = list(corpus)
        chosen = [g for g in graphs if g.n <= SUBSETS_CAP and member(g)]
        prefetch_invariants(chosen, workers)
        for g in chosen:
            chi, r = chi_and_r(g)
            if chi != r:
                rep.fail("chi differs from r", graph6=emit_graph6(g).decode(), chi=chi, r=r)
        rep.stats.update(instances=len(graphs), in_class=len(chosen), skipped=sum(1 for g in graphs if g.n > SUBSETS_CAP))
    return rep
