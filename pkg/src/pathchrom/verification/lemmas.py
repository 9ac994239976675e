"""Structural checks on the recursive construction, each confirming one
property of G_k from the raw adjacency plus the role labels.

Every Fail witness is a small vertex set or edge that can be re-checked on
the graph alone.
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

from ..construction import LabeledConstruction
from ..graph_core import Graph, bits_to_list, connected_components, is_clique, is_connected, is_independent, iter_bits
from ..report import Report, Status, Timer
from ..solvers.budget import SolveBudget
from ..solvers.paths import DP_LIMIT, longest_path
from .patterns import ForbiddenPattern, has_induced

_CAP = 20  # witnesses kept per report
LONGEST_PATH_CAP = 18


def _record(rep: Report, reason: str, **data) -> None:
    if len(rep.witnesses) < _CAP:
        rep.fail(reason, **data)
    else:
        rep.status = Status.FAIL


def _a_components(lc: LabeledConstruction) -> list[int]:
    return connected_components(lc.g, within=lc.a_mask)


def check_lemma_inducedA(lc: LabeledConstruction) -> Report:
    """Every component of G[A] is a clique on 1 or floor(r/2) vertices."""
    rep = Report("lemma_inducedA")
    with Timer(rep):
        half = lc.r // 2
        sizes: dict[int, int] = {}
        for comp in _a_components(lc):
            s = comp.bit_count()
            sizes[s] = sizes.get(s, 0) + 1
            if s not in (1, half):
                _record(rep, "A-component of unexpected size", component=bits_to_list(comp), size=s)
            elif not is_clique(lc.g, comp):
                _record(rep, "A-component is not a clique", component=bits_to_list(comp))
        rep.stats["component_sizes"] = dict(sorted(sizes.items()))
    return rep


def check_lemma_B_next_to_A(lc: LabeledConstruction) -> Report:
    """A vertex seeing one vertex of an A-component sees all of it."""
    rep = Report("lemma_B_next_to_A")
    with Timer(rep):
        g = lc.g
        for comp in _a_components(lc):
            touch = 0
            for v in iter_bits(comp):
                touch |= g.adj[v]
            touch &= ~comp
            for v in iter_bits(touch):
                missing = comp & ~g.adj[v]
                if missing:
                    u = (missing & -missing).bit_length() - 1
                    seen = ((g.adj[v] & comp) & -(g.adj[v] & comp)).bit_length() - 1
                    _record(rep, "vertex sees part of an A-component", vertex=v, sees=seen, misses=u)
        rep.stats["components"] = len(_a_components(lc))
    return rep


def _touching(lc: LabeledConstruction, comp: int) -> list[int]:
    nb = 0
    for v in iter_bits(comp):
        nb |= lc.g.adj[v]
    return list(iter_bits(nb & lc.b_mask))


def _k2_groups(lc: LabeledConstruction, comp: int) -> tuple[list[int], dict[int, list[int]]]:
    """For an A-component: the touching B vertices, and those among them
    whose A-neighbourhood is exactly the component, grouped by closed
    neighbourhood."""
    g = lc.g
    t = _touching(lc, comp)
    groups: dict[int, list[int]] = {}
    for b in t:
        if g.adj[b] & lc.a_mask == comp:
            groups.setdefault(g.adj[b] | (1 << b), []).append(b)
    return t, groups


def k2_pair_free_size(lc: LabeledConstruction, comp: int) -> int:
    """Largest subset of the touching B vertices containing no pair with
    equal closed neighbourhoods whose A-neighbourhood is the component.

    One representative per twin group plus every other touching vertex."""
    t, groups = _k2_groups(lc, comp)
    grouped = sum(len(m) for m in groups.values())
    return len(t) - grouped + len(groups)


def k2_pair_free_size_direct(lc: LabeledConstruction, comp: int) -> int:
    """Same quantity by brute force over subsets (small inputs only)."""
    g = lc.g
    t = _touching(lc, comp)

    def good(u: int, v: int) -> bool:
        return (g.adj[u] | (1 << u)) == (g.adj[v] | (1 << v)) and g.adj[u] & lc.a_mask == comp

    best = 0
    for size in range(len(t) + 1):
        if any(not any(good(u, v) for u, v in combinations(sub, 2)) for sub in combinations(t, size)):
            best = size
        else:
            break
    return best


def check_lemma_k2_common(lc: LabeledConstruction) -> Report:
    """Among any k+2 B-vertices touching a non-trivial A-component there are
    two with equal closed neighbourhoods whose A-neighbourhood is exactly the
    component; i.e. the largest pair-free set has at most k+1 vertices."""
    rep = Report("lemma_k2_common")
    with Timer(rep):
        worst = 0
        for comp in _a_components(lc):
            if comp.bit_count() < 2:
                continue
            size = k2_pair_free_size(lc, comp)
            worst = max(worst, size)
            if size > lc.k + 1:
                t, groups = _k2_groups(lc, comp)
                reps = [b for b in t if not any(b in m for m in groups.values())]
                reps += [m[0] for m in groups.values()]
                _record(rep, "k+2 touching vertices without a twin pair", component=bits_to_list(comp), vertices=sorted(reps)[: lc.k + 2])
        rep.stats["largest_pair_free"] = worst
    return rep


def check_lemma_W(lc: LabeledConstruction) -> Report:
    """W is independent and so is N(W) within A."""
    rep = Report("lemma_W")
    with Timer(rep):
        g, w = lc.g, lc.w_mask
        rep.stats["W_size"] = w.bit_count()
        for v in iter_bits(w):
            if g.adj[v] & w:
                u = (g.adj[v] & w).bit_length() - 1
                _record(rep, "W is not independent", edge=[v, u])
        nw = 0
        for v in iter_bits(w):
            nw |= g.adj[v]
        nwa = nw & lc.a_mask
        for v in iter_bits(nwa):
            if g.adj[v] & nwa:
                u = (g.adj[v] & nwa).bit_length() - 1
                _record(rep, "N(W) meets A in an edge", edge=[v, u])
    return rep


def _covered_chains_from(po, start: int, length: int):
    """Covered chains of ``length`` elements starting at ``start``."""
    up_cover: dict[int, list[int]] = {}

    def covers_above(v: int) -> list[int]:
        if v not in up_cover:
            up_cover[v] = [w for w in iter_bits(po.up(v)) if (po.covers_below(w) >> v) & 1]
        return up_cover[v]

    chain = [start]

    def walk():
        if len(chain) == length:
            yield tuple(chain)
            return
        for w in covers_above(chain[-1]):
            chain.append(w)
            yield from walk()
            chain.pop()

    yield from walk()


def check_lemma_poset(lc: LabeledConstruction) -> Report:
    """The order on B minus W: comparability equals adjacency, every
    maximal chain has ceil(r/2)+k elements, covered chains of ceil(r/2)
    elements from a minimal element are closed twins, minimal elements have
    no W-neighbours and see an A-clique of size floor(r/2)."""
    rep = Report("lemma_poset")
    with Timer(rep):
        g, po = lc.g, lc.poset
        elems = lc.b_mask & ~lc.w_mask
        if po.elements != elems:
            _record(rep, "order elements differ from B minus W")
            return rep
        for v in iter_bits(elems):
            if po.comparable(v) != g.adj[v] & elems:
                diff = po.comparable(v) ^ (g.adj[v] & elems)
                _record(rep, "comparability differs from adjacency", pair=[v, (diff & -diff).bit_length() - 1])
        want = (lc.r + 1) // 2 + lc.k
        ranges = po.chain_length_range()
        maximal = po.maximal()
        lengths = set()
        for v in iter_bits(maximal):
            lo, hi = ranges[v]
            lengths.update((lo, hi))
            if lo != want or hi != want:
                _record(rep, "maximal chain of wrong length", top=v, shortest=lo, longest=hi, expected=want)
        rep.stats["chain_lengths"] = sorted(lengths)
        half_up = (lc.r + 1) // 2
        minimal = po.minimal()
        chains = 0
        for u in iter_bits(minimal):
            closed = g.adj[u] | (1 << u)
            for ch in _covered_chains_from(po, u, half_up):
                chains += 1
                for w in ch[1:]:
                    if g.adj[w] | (1 << w) != closed:
                        _record(rep, "covered chain from a minimal element is not twin", chain=list(ch), vertex=w)
                        break
            if g.adj[u] & lc.w_mask:
                _record(rep, "minimal element has a W-neighbour", vertex=u)
            na = g.adj[u] & lc.a_mask
            if na.bit_count() != lc.r // 2 or not is_clique(g, na):
                _record(rep, "minimal element's A-neighbourhood is not a clique of size floor(r/2)", vertex=u, a_nbrs=bits_to_list(na))
        rep.stats["minimal"] = minimal.bit_count()
        rep.stats["covered_chains"] = chains
    return rep


def check_cut_structure(lc: LabeledConstruction) -> Report:
    """Each top-level copy is connected and is attached to the rest of the
    graph only through its two attachment vertices (and the apexes of the
    auxiliary graph)."""
    rep = Report("cut_structure")
    with Timer(rep):
        g, lay = lc.g, lc.layout
        if lay.k == 0:
            rep.stats["copies"] = 0
            return rep
        nc = lay.child_n
        apexes = 0
        for v in (lc.aux_a, lc.aux_b):
            if v is not None:
                apexes |= 1 << v
        for blk in lay.copies:
            cmask = ((1 << nc) - 1) << blk.offset
            cut = (1 << blk.a_attach) | (1 << blk.b_attach) | apexes
            if lay.vbar is not None:
                cut |= 1 << lay.vbar
            if lay.ubar is not None:
                cut |= 1 << lay.ubar
            for v in iter_bits(cmask):
                leak = g.adj[v] & ~cmask & ~cut
                if leak:
                    _record(rep, "copy has an edge leaving the cut", copy=[blk.side, blk.i, blk.j], edge=[v, (leak & -leak).bit_length() - 1])
                    break
            if not is_connected(g, within=cmask):
                _record(rep, "copy is not connected", copy=[blk.side, blk.i, blk.j])
        rep.stats["copies"] = len(lay.copies)
    return rep


def check_longest_path_lemma(g: Graph, which: str, budget: Optional[SolveBudget] = None) -> Report:
    """For a 2K2-free graph, or a connected (K2+2K1)-free graph, the
    vertices off a longest path form an independent set."""
    if which not in ("2K2", "K2+2K1"):
        raise ValueError("which must be '2K2' or 'K2+2K1'")
    emb = has_induced(g, ForbiddenPattern.parse(which))
    if emb is not None:
        raise ValueError(f"graph is not {which}-free (induced copy on {list(emb)})")
    if which == "K2+2K1" and g.n and not is_connected(g):
        raise ValueError("the (K2+2K1) variant needs a connected graph")
    rep = Report(f"longest_path_{which}")
    with Timer(rep):
        if g.n > min(LONGEST_PATH_CAP, DP_LIMIT):
            rep.unknown("graph too large for an exact longest path", n=g.n)
            return rep
        p = longest_path(g)
        off = g.full_mask & ~p.mask
        rep.stats["path_len"] = len(p)
        if not is_independent(g, off):
            u = next(v for v in iter_bits(off) if g.adj[v] & off)
            rep.fail("vertices off the longest path span an edge", path=list(p.verts), edge=[u, (g.adj[u] & off).bit_length() - 1])
    return rep


STRUCTURE_CHECKS = (
    check_lemma_inducedA,
    check_lemma_B_next_to_A,
    check_lemma_k2_common,
    check_lemma_W,
    check_lemma_poset,
)
