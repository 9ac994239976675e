"""Constructive colourings of the recursive construction.

* ``canonical_chi_colouring`` colours G_k with exactly r+k colours, class 1
  inside A and class 2 inside B, by recursion over the layers.
* ``fourcolour_near_forest`` 4-colours a graph that is a forest plus a few
  extra edges, by peeling vertices of degree at most 3.
* ``colour_path_subgraph`` r-colours the subgraph of the auxiliary graph
  induced by a path while honouring the reserved colour bands, the apex pins
  and the rule that W together with the minimal elements forms one colour
  class.  It has a structured tier (recursion over copies) and an oracle tier
  (constrained exact search); ``audit_path_colouring`` checks either result
  from the raw graph and the role labels.

Colours in this module are the integers 1..r (1..r+k for the global
colouring) so that band positions keep their meaning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .construction import Layout, LabeledConstruction
from .graph_core import Colouring, Graph, GraphBuilder, PathWitness, iter_bits, induced_subgraph
from .report import Report, Timer
from .solvers.budget import BudgetClock, SolveBudget
from .solvers.colouring import k_colouring_raw


# -- helpers ----------------------------------------------------------------

def mask_to_bool(mask: int, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros(0, dtype=bool)
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


# -- global (r+k)-colouring --------------------------------------------------

def _layer_perm(size: int, first: int, second: int) -> np.ndarray:
    """Permutation of 1..size sending 1->first, 2->second and otherwise as
    close to the identity as possible (displaced colours fill the gaps in
    increasing order)."""
    perm = np.zeros(size + 1, dtype=np.int64)
    perm[1], perm[2] = first, second
    rest_src = [c for c in range(3, size + 1)]
    taken = {first, second}
    fixed = [c for c in rest_src if c not in taken]
    for c in fixed:
        perm[c] = c
    leftover_src = [c for c in rest_src if c in taken]
    leftover_dst = sorted(set(range(1, size + 1)) - taken - set(fixed))
    for s, d in zip(leftover_src, leftover_dst):
        perm[s] = d
    return perm


def _canonical(layout: Layout) -> np.ndarray:
    r, k1 = layout.r, layout.k
    if k1 == 0:
        half = r // 2
        out = np.zeros(r, dtype=np.int64)
        out[0] = 1
        out[half] = 2
        nxt = 3
        for v in range(r):
            if v not in (0, half):
                out[v] = nxt
                nxt += 1
        return out
    child = _canonical(layout.child)
    k = k1 - 1
    size = r + k  # colours used by the child
    m = r + k - 1
    psi = np.zeros(layout.n, dtype=np.int64)
    for xs in (layout.xs, layout.ys):
        for idx, x in enumerate(xs, start=1):
            psi[x] = idx
    nc = layout.child_n
    for blk in layout.copies:
        if (blk.i, blk.j) == (1, m):
            perm = _layer_perm(size, 1, m)
        else:
            perm = _layer_perm(size, blk.j, blk.i)
        psi[blk.offset:blk.offset + nc] = perm[child]
    psi[layout.vbar] = r + k
    if layout.kind != "G":
        raise ValueError("the global colouring is defined for G-type constructions")
    psi[layout.wbar] = r + k
    psi[layout.ubar] = 1
    is_a = mask_to_bool(layout.a_mask, layout.n)
    phi = np.where(psi == 1, np.where(is_a, 1, 2), psi + 1)
    phi[layout.ubar] = 1
    phi[layout.vbar] = 1
    return phi


def canonical_chi_colouring_raw(lc: LabeledConstruction) -> np.ndarray:
    """Colours 1..r+k for the vertices of G_k (apexes excluded)."""
    return _canonical(lc.layout)


def canonical_chi_colouring(lc: LabeledConstruction) -> Colouring:
    """Proper colouring of G_k with exactly r+k colours; colour 0 of the
    result (class 1 of the recursion) lies in A and colour 1 in B."""
    return Colouring(_canonical(lc.layout).tolist())


# -- near-forest 4-colouring ---------------------------------------------------

class PreconditionError(ValueError):
    pass


def _forest_components(n: int, edges: Iterable[tuple[int, int]]) -> Optional[int]:
    """Number of components if the edge set is acyclic, else None."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return None
        parent[a] = b
        comps -= 1
    return comps


def fourcolour_near_forest(h: Graph, t: Iterable[tuple[int, int]]) -> Colouring:
    """4-colour h given an edge set t such that h - t is a forest, with
    |t| <= 5, or |t| <= 6 and h - t having at least two components.

    Every vertex removed by the peeling has residual degree at most 3, so
    greedy re-insertion never needs a fifth colour.
    """
    tset = set()
    for u, v in t:
        if not h.has_edge(u, v):
            raise PreconditionError(f"({u}, {v}) is not an edge of h")
        tset.add((min(u, v), max(u, v)))
    rest = [e for e in h.edges() if e not in tset]
    comps = _forest_components(h.n, rest)
    if comps is None:
        raise PreconditionError("h - t contains a cycle")
    if not (len(tset) <= 5 or (len(tset) <= 6 and comps >= 2)):
        raise PreconditionError(f"|t| = {len(tset)} with {comps} component(s) is outside the lemma's range")
    return Colouring(peel_colour(h, 4))


def peel_colour(h: Graph, c: int) -> list[int]:
    """Degeneracy colouring: peel vertices of residual degree < c, colour in
    reverse.  Raises ValueError if some residual subgraph has min degree >= c."""
    n = h.n
    deg = [h.degree(v) for v in range(n)]
    alive = h.full_mask
    order = []
    while alive:
        v = min(iter_bits(alive), key=lambda u: (deg[u], u))
        if deg[v] >= c:
            raise ValueError(f"residual subgraph has minimum degree {deg[v]} >= {c}")
        order.append(v)
        alive &= ~(1 << v)
        for u in iter_bits(h.adj[v] & alive):
            deg[u] -= 1
    col = [-1] * n
    for v in reversed(order):
        used = 0
        for u in h.neighbours(v):
            if col[u] >= 0:
                used |= 1 << col[u]
        col[v] = (~used & (used + 1)).bit_length() - 1
    return col


# -- path colouring ------------------------------------------------------------

class StructuredFailure(RuntimeError):
    pass


@dataclass
class BandSpec:
    """Colour constraints for one call of the path colourer."""

    r: int
    k: int
    top: bool
    a_band: tuple[int, ...]
    b_band: tuple[int, ...]
    merge_va: bool  # W+minimal class must also contain vA


def band_spec(r: int, k: int) -> BandSpec:
    half = r // 2
    top_level = half - 1
    if k == top_level:
        return BandSpec(r, k, True, (), (), False)
    if k == 0:
        return BandSpec(r, 0, False, tuple(range(1, half)), tuple(range(half, r - 1)), False)
    return BandSpec(
        r, k, False,
        tuple(range(1, half - k - 1)),
        tuple(range(half - k - 1, r - 2 * k - 3)),
        k == half - 2,
    )


def allowed_pins(r: int, k: int) -> tuple[int, ...]:
    return (r - 1, r) if k == 0 else (r - 3, r - 2, r - 1, r)


@dataclass
class PathColouring:
    colours: dict[int, int]  # vertex -> colour in 1..r
    tier: str  # "structured" or "oracle"
    defects: list[str] = field(default_factory=list)
    unknown: bool = False
    stats: dict = field(default_factory=dict)

    @property
    def num_colours(self) -> int:
        return len(set(self.colours.values()))

    def colouring(self) -> Colouring:
        """Canonical colouring of the path's vertices in increasing id order."""
        return Colouring(self.colours[v] for v in sorted(self.colours))


class _Ctx:
    def __init__(self, r: int, top_level: int, clock: BudgetClock):
        self.r = r
        self.half = r // 2
        self.top_level = top_level
        self.F = (r - 3, r - 2, r - 1, r)
        self.clock = clock
        self.q_stats = {"near_forest": 0, "peel": 0, "exact": 0}

    def m_a(self, k: int) -> int:
        return self.half - 2 - k

    def m_b(self, k: int) -> int:
        return (self.r + 1) // 2 - 2 - k


def _split_runs(layout: Layout, frags: Sequence[Sequence[int]]):
    """Cut fragments (paths inside this level's graph) into runs per copy.

    Returns (runs, traversed): runs[copy index] -> list of child-local runs,
    traversed = set of copy indices entered from one attachment vertex and
    left through the other.
    """
    first = layout.copies[0].offset
    nc = layout.child_n
    runs: dict[int, list[list[int]]] = {}
    traversed: set[int] = set()
    for frag in frags:
        i = 0
        L = len(frag)
        while i < L:
            v = frag[i]
            if v < first:
                i += 1
                continue
            ci = (v - first) // nc
            off = layout.copies[ci].offset
            j = i
            run = []
            while j < L and frag[j] >= first and (frag[j] - first) // nc == ci:
                run.append(frag[j] - off)
                j += 1
            runs.setdefault(ci, []).append(run)
            blk = layout.copies[ci]
            if i > 0 and j < L and {frag[i - 1], frag[j]} == {blk.a_attach, blk.b_attach}:
                traversed.add(ci)
            i = j
    return runs, traversed


def _colour_q(ctx: _Ctx, nodes: list[int], edges: list[tuple[int, int]], breaks: list[tuple[int, int]]) -> dict[int, int]:
    if not nodes:
        return {}
    idx = {v: i for i, v in enumerate(nodes)}
    q = Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in edges])
    col = None
    tq = [(idx[u], idx[v]) for u, v in breaks]
    try:
        col = list(fourcolour_near_forest(q, tq).colours)
        ctx.q_stats["near_forest"] += 1
    except PreconditionError:
        try:
            col = peel_colour(q, 4)
            ctx.q_stats["peel"] += 1
        except ValueError:
            v = k_colouring_raw(q, 4, budget=ctx.clock.remaining())
            if not v.yes:
                raise StructuredFailure(f"quotient graph on {len(nodes)} vertices is not 4-colourable ({v.answer.value})")
            col = v.witness
            ctx.q_stats["exact"] += 1
    return {v: ctx.F[col[idx[v]]] for v in nodes}


def _colour_base(ctx: _Ctx, layout: Layout, tmask: int, a: int, b: int, public: bool) -> dict[int, int]:
    r, half = ctx.r, ctx.half
    if public:
        a_list = list(range(1, half)) + [b]
        t = half
        b_rest = list(range(half + 1, r - 1)) + [a]
    else:
        f1, f2 = sorted(set(ctx.F) - {a, b})
        a_list = list(range(1, half - 1)) + [b, f1]
        t = half - 1
        b_rest = list(range(half, r - 3)) + [a, f2]
    out: dict[int, int] = {}
    ai = bi = 0
    for v in iter_bits(tmask):
        if v < half:
            out[v] = a_list[ai]
            ai += 1
        elif v == half:
            out[v] = t
        else:
            out[v] = b_rest[bi]
            bi += 1
    return out


def _colour_level(ctx: _Ctx, layout: Layout, frags: list[list[int]], a: int, b: int, public: bool) -> dict[int, int]:
    """Colour the vertices of ``frags`` (paths in this level's G) so that an
    apex vA coloured a and an apex vB coloured b could be added."""
    ctx.clock.tick()
    tmask = 0
    for f in frags:
        for v in f:
            tmask |= 1 << v
    k = layout.k
    if k == 0:
        return _colour_base(ctx, layout, tmask, a, b, public)
    top = k == ctx.top_level
    runs, traversed = _split_runs(layout, frags)

    q_nodes = [x for x in layout.xs + layout.ys if (tmask >> x) & 1]
    q_edges, breaks = [], []
    for ci in runs:
        blk = layout.copies[ci]
        if (tmask >> blk.a_attach) & 1 and (tmask >> blk.b_attach) & 1:
            e = (blk.a_attach, blk.b_attach)
            q_edges.append(e)
            if ci not in traversed:
                breaks.append(e)
    qcol = _colour_q(ctx, q_nodes, q_edges, breaks)
    out: dict[int, int] = dict(qcol)

    F = ctx.F
    for ci, piece in runs.items():
        blk = layout.copies[ci]
        pa = qcol.get(blk.a_attach)
        pb = qcol.get(blk.b_attach)
        if pa is None and pb is None:
            pa, pb = F[2], F[3]
        elif pa is None:
            pa = next(f for f in F if f != pb)
        elif pb is None:
            pb = next(f for f in F if f != pa)
        sub = _colour_level(ctx, layout.child, piece, pa, pb, False)
        off = blk.offset
        for u, c in sub.items():
            out[off + u] = c

    kc = k - 1  # level of the copies
    if top:
        one, two = 1, 2
    else:
        one, two = 1, ctx.m_a(kc) + 1  # reserved A colour, and the W+minimal colour
    for v, c in ((layout.ubar, one), (layout.vbar, one), (layout.wbar, two)):
        if v is not None and (tmask >> v) & 1:
            out[v] = c
    if top:
        return out

    ma, mb = ctx.m_a(kc), ctx.m_b(kc)
    t_old = ma + 1
    x = ma
    y = t_old if k == ctx.half - 2 else ma + mb
    swap = {x: b, b: x, y: a, a: y}
    for v, c in out.items():
        if c in swap:
            out[v] = swap[c]
    # relabel the non-F colours into this level's canonical bands
    keep_a = [c for c in range(1, ma + 1) if c != x]
    keep_b = [c for c in range(ma + 1, ma + mb + 1) if c != y]
    rest = [c for c in range(1, ctx.r - 3) if c not in keep_a and c not in keep_b]
    relabel = {c: i for i, c in enumerate(keep_a + keep_b + rest, start=1)}
    for v, c in out.items():
        if c < F[0]:
            out[v] = relabel[c]
    return out


def _validate_request(aux: LabeledConstruction, p: PathWitness, a: int, b: int) -> None:
    if aux.aux_a is None:
        raise ValueError("colour_path_subgraph needs the auxiliary graph (build_aux)")
    if not p.is_valid(aux.g) or p.closed:
        raise ValueError("p is not a path in the auxiliary graph")
    spec = band_spec(aux.r, aux.k)
    if not spec.top:
        allowed = allowed_pins(aux.r, aux.k)
        if a == b or a not in allowed or b not in allowed:
            raise ValueError(f"pins (a, b) must be distinct colours from {allowed}")


def colour_path_subgraph(
    aux: LabeledConstruction,
    p: PathWitness | Sequence[int],
    a: int,
    b: int,
    budget: SolveBudget | None = None,
    tier: str = "auto",
) -> PathColouring:
    """r-colour aux[V(p)] under the band/pin/class constraints of level k.

    ``tier``: "structured", "oracle", or "auto" (structured, falling back to
    the oracle if the structured tier cannot finish; the failure is kept in
    ``defects``).  At the top level only properness and the r-colour bound
    apply, and the apexes are left out.
    """
    p = p if isinstance(p, PathWitness) else PathWitness(p)
    _validate_request(aux, p, a, b)
    if tier not in ("auto", "structured", "oracle"):
        raise ValueError(f"unknown tier {tier!r}")
    defects: list[str] = []
    if tier in ("auto", "structured"):
        clock = BudgetClock(budget)
        try:
            cols, stats = _structured(aux, p, a, b, clock)
            return PathColouring(cols, "structured", defects, stats=stats)
        except StructuredFailure as exc:
            defects.append(str(exc))
            if tier == "structured":
                return PathColouring({}, "structured", defects, unknown=True)
    res = _oracle(aux, p, a, b, budget)
    res.defects = defects + res.defects
    return res


def _structured(aux: LabeledConstruction, p: PathWitness, a: int, b: int, clock: BudgetClock):
    r, k = aux.r, aux.k
    ctx = _Ctx(r, r // 2 - 1, clock)
    apexes = (aux.aux_a, aux.aux_b)
    frags: list[list[int]] = [[]]
    for v in p.verts:
        if v in apexes:
            frags.append([])
        else:
            frags[-1].append(v)
    frags = [f for f in frags if f]
    out = _colour_level(ctx, aux.layout, frags, a, b, public=True)
    if k != ctx.top_level:
        pv = set(p.verts)
        if aux.aux_a in pv:
            out[aux.aux_a] = a
        if aux.aux_b in pv:
            out[aux.aux_b] = b
    return out, {"q": dict(ctx.q_stats)}


def _wmin_mask(aux: LabeledConstruction) -> int:
    return aux.w_mask | aux.layout.min_mask


def _oracle(aux: LabeledConstruction, p: PathWitness, a: int, b: int, budget) -> PathColouring:
    r = aux.r
    spec = band_spec(r, aux.k)
    tmask = p.mask
    if spec.top:
        tmask &= ~((1 << aux.aux_a) | (1 << aux.aux_b))
    h, index = induced_subgraph(aux.g, tmask)
    verts = sorted(index, key=index.get)
    if spec.top:
        v = k_colouring_raw(h, r, budget=budget)
        if v.unknown:
            return PathColouring({}, "oracle", unknown=True)
        if v.no:
            return PathColouring({}, "oracle", ["no proper r-colouring exists"])
        return PathColouring({verts[i]: c + 1 for i, c in enumerate(v.witness)}, "oracle")

    a_mask, b_mask = aux.a_mask, aux.b_mask
    group = tmask & _wmin_mask(aux)
    if spec.merge_va and (tmask >> aux.aux_a) & 1:
        group |= 1 << aux.aux_a
    # new graph: group contracted to one vertex, plus a pinned palette clique
    members = [v for v in verts if not (group >> v) & 1]
    gid = {v: i for i, v in enumerate(members)}
    s = len(members) if group else None
    base = len(members) + (1 if group else 0)
    bld = GraphBuilder(base + r)
    for v in members:
        for u in iter_bits(aux.g.adj[v] & tmask):
            if u in gid and gid[u] > gid[v]:
                bld.add_edge(gid[v], gid[u])
    if group:
        if any(aux.g.adj[v] & group for v in iter_bits(group)):
            return PathColouring({}, "oracle", ["W and minimal vertices on the path are not independent"])
        for v in members:
            bld.add_edge(gid[v], s)
    for i in range(r):
        for j in range(i + 1, r):
            bld.add_edge(base + i, base + j)

    def forbid(node: int, vertex_set: int) -> None:
        for ell in spec.a_band:
            if not (vertex_set & a_mask) == vertex_set:
                bld.add_edge(node, base + ell - 1)
        for ell in spec.b_band:
            if not (vertex_set & b_mask) == vertex_set:
                bld.add_edge(node, base + ell - 1)

    for v in members:
        forbid(gid[v], 1 << v)
    if group:
        forbid(s, group)
    pins = {base + i: i for i in range(r)}
    for apex, col in ((aux.aux_a, a), (aux.aux_b, b)):
        if (tmask >> apex) & 1:
            node = s if (group >> apex) & 1 else gid[apex]
            if node in pins and pins[node] != col - 1:
                return PathColouring({}, "oracle", ["conflicting apex pins"])
            pins[node] = col - 1
    g2 = bld.build(check=False)
    v = k_colouring_raw(g2, r, pins, budget)
    if v.unknown:
        return PathColouring({}, "oracle", unknown=True)
    if v.no:
        return PathColouring({}, "oracle", ["no colouring satisfies the constraints"])
    out = {m: v.witness[gid[m]] + 1 for m in members}
    for m in iter_bits(group):
        out[m] = v.witness[s] + 1
    return PathColouring(out, "oracle")


def audit_path_colouring(
    aux: LabeledConstruction, p: PathWitness | Sequence[int], a: int, b: int, colours: dict[int, int]
) -> Report:
    """Independent check of a path colouring against all constraints."""
    p = p if isinstance(p, PathWitness) else PathWitness(p)
    rep = Report("path_colouring_audit")
    with Timer(rep):
        r = aux.r
        spec = band_spec(r, aux.k)
        tmask = p.mask
        if spec.top:
            tmask &= ~((1 << aux.aux_a) | (1 << aux.aux_b))
        if set(colours) != set(iter_bits(tmask)):
            rep.fail("coloured set differs from the path's vertex set")
            return rep
        for v, c in colours.items():
            if not 1 <= c <= r:
                rep.fail("colour outside 1..r", vertex=v, colour=c)
        for v in colours:
            for u in iter_bits(aux.g.adj[v] & tmask):
                if u > v and colours[u] == colours[v]:
                    rep.fail("monochromatic edge", edge=[v, u], colour=colours[v])
        if spec.top:
            return rep
        for v, c in colours.items():
            if c in spec.a_band and not (aux.a_mask >> v) & 1:
                rep.fail("A-reserved colour on a non-A vertex", vertex=v, colour=c)
            if c in spec.b_band and not (aux.b_mask >> v) & 1:
                rep.fail("B-reserved colour on a non-B vertex", vertex=v, colour=c)
        if aux.aux_a in colours and colours[aux.aux_a] != a:
            rep.fail("vA not coloured a", colour=colours[aux.aux_a], a=a)
        if aux.aux_b in colours and colours[aux.aux_b] != b:
            rep.fail("vB not coloured b", colour=colours[aux.aux_b], b=b)
        group = tmask & _wmin_mask(aux)
        if spec.merge_va and aux.aux_a in colours:
            group |= 1 << aux.aux_a
        if group:
            cols = {colours[v] for v in iter_bits(group)}
            if len(cols) != 1:
                rep.fail("W and minimal vertices do not share one colour", colours=sorted(cols))
            else:
                c = cols.pop()
                others = [v for v, cv in colours.items() if cv == c and not (group >> v) & 1]
                if others:
                    rep.fail("colour class of W and minimal vertices has extra vertices", vertices=others[:5])
        rep.stats["colours"] = len(set(colours.values()))
    return rep
