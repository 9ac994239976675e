"""The recursive construction G^{(r)}_k with full role labels.

Layout of every level ``k >= 1`` graph (ids are dense and deterministic)::

    [ubar] vbar [wbar] x_1..x_m y_1..y_m  (+ copies in (i,j) order) (- copies)

where ``m = r + k - 2`` at level ``k`` and each copy is a relabelled
``G_{k-1}``.  The base level is ``K_r`` with vertices ``v_1..v_r`` at ids
``0..r-1``.  Roles, the A/B/W sets and the order on B minus W are carried
alongside the graph so that checkers never have to rediscover them.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from math import comb
from typing import Optional

from .graph_core import Graph, GraphBuilder, iter_bits, bits_to_list, is_independent
from .report import Report, Status, Timer

MAX_VERTICES = 20_000_000


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class RoleTag:
    partition: Optional[str]  # "A", "B", or None for the auxiliary apexes
    special: Optional[str] = None  # x, y, vbar, ubar, wbar, base, vA, vB
    index: Optional[int] = None  # 1-based index for x(i), y(i), base(i)
    in_w: bool = False
    copy_path: tuple[tuple[int, str, tuple[int, int]], ...] = ()

    def special_label(self) -> Optional[str]:
        if self.special is None:
            return None
        if self.index is not None:
            return f"{self.special}({self.index})"
        return self.special

    def to_json(self) -> dict:
        return {
            "partition": self.partition,
            "special": self.special_label(),
            "inW": self.in_w,
            "copyPath": [[lvl, side, list(pair)] for lvl, side, pair in self.copy_path],
        }


@dataclass
class PartialOrder:
    """A strict order on a vertex set, stored transitively closed.

    ``down[v]`` is the bitset of elements strictly below ``v``.
    """

    elements: int
    down: dict[int, int]
    _up: Optional[dict[int, int]] = field(default=None, repr=False)

    def less(self, u: int, v: int) -> bool:
        return bool((self.down.get(v, 0) >> u) & 1)

    def up(self, v: int) -> int:
        if self._up is None:
            up = {e: 0 for e in self.down}
            for v2, d in self.down.items():
                for u in iter_bits(d):
                    up[u] |= 1 << v2
            self._up = up
        return self._up[v]

    def comparable(self, v: int) -> int:
        return self.down[v] | self.up(v)

    def minimal(self) -> int:
        m = 0
        for v, d in self.down.items():
            if not d:
                m |= 1 << v
        return m

    def maximal(self) -> int:
        m = 0
        for v in self.down:
            if not self.up(v):
                m |= 1 << v
        return m

    def covers_below(self, v: int) -> int:
        """Elements u with u < v and nothing strictly between."""
        d = self.down[v]
        inner = 0
        for w in iter_bits(d):
            inner |= self.down[w]
        return d & ~inner

    def chain_length_range(self) -> dict[int, tuple[int, int]]:
        """For every element, (shortest, longest) saturated chain from a
        minimal element up to it, counted in elements."""
        order = sorted(self.down, key=lambda v: self.down[v].bit_count())
        rng: dict[int, tuple[int, int]] = {}
        for v in order:
            cov = self.covers_below(v)
            if not cov:
                rng[v] = (1, 1)
            else:
                lo = min(rng[u][0] for u in iter_bits(cov))
                hi = max(rng[u][1] for u in iter_bits(cov))
                rng[v] = (lo + 1, hi + 1)
        return rng

    def shifted(self, offset: int) -> "PartialOrder":
        return PartialOrder(self.elements << offset, {v + offset: d << offset for v, d in self.down.items()})


@dataclass(frozen=True)
class CopyBlock:
    side: str  # "+" or "-"
    i: int
    j: int
    offset: int
    a_attach: int  # the x/y vertex complete to this copy's A set
    b_attach: int  # the x/y vertex complete to this copy's B set


@dataclass(frozen=True)
class Layout:
    r: int
    k: int
    n: int
    kind: str  # "G", "H", "H+", "H-"
    child: Optional["Layout"] = None
    ubar: Optional[int] = None
    vbar: Optional[int] = None
    wbar: Optional[int] = None
    xs: tuple[int, ...] = ()
    ys: tuple[int, ...] = ()
    copies: tuple[CopyBlock, ...] = ()
    a_mask: int = 0
    w_mask: int = 0
    min_mask: int = 0  # minimal elements of the order on B minus W

    @property
    def b_mask(self) -> int:
        return ((1 << self.n) - 1) & ~self.a_mask

    @property
    def child_n(self) -> int:
        return self.child.n if self.child else 0

    def copy_of(self, v: int) -> Optional[CopyBlock]:
        """The top-level copy containing vertex v (None for specials)."""
        if not self.copies or v < self.copies[0].offset:
            return None
        idx = (v - self.copies[0].offset) // self.child_n
        return self.copies[idx]


@dataclass
class LabeledConstruction:
    g: Graph
    r: int
    k: int
    roles: tuple[RoleTag, ...]
    poset: PartialOrder
    layout: Layout
    aux_a: Optional[int] = None
    aux_b: Optional[int] = None

    @property
    def kind(self) -> str:
        return "aux" if self.aux_a is not None else self.layout.kind

    @functools.cached_property
    def a_mask(self) -> int:
        return sum(1 << v for v, t in enumerate(self.roles) if t.partition == "A")

    @functools.cached_property
    def b_mask(self) -> int:
        return sum(1 << v for v, t in enumerate(self.roles) if t.partition == "B")

    @functools.cached_property
    def w_mask(self) -> int:
        return sum(1 << v for v, t in enumerate(self.roles) if t.in_w)

    @property
    def base_n(self) -> int:
        """Vertex count without the auxiliary apexes."""
        return self.layout.n

    def find(self, special: str, index: Optional[int] = None, top_level: bool = True) -> int:
        for v, t in enumerate(self.roles):
            if t.special == special and t.index == index and (not top_level or not t.copy_path):
                return v
        raise KeyError((special, index))

    def base_clique(self, which: int = 0) -> list[int]:
        """Vertex ids of one embedded K_r: top-level copy ``which`` (mod the
        number of copies), then the first copy at every deeper level."""
        lay = self.layout
        off = 0
        first = True
        while lay.k > 0:
            blk = lay.copies[which % len(lay.copies)] if first else lay.copies[0]
            off += blk.offset
            lay = lay.child
            first = False
        return list(range(off, off + self.r))


# -- counts ---------------------------------------------------------------

def max_level(r: int) -> int:
    return r // 2 - 1


def count_G(r: int, k: int) -> int:
    n = r
    for lvl in range(1, k + 1):
        n = 2 * count_H(r, lvl, n) + 1
    return n


def count_H(r: int, k1: int, n_child: Optional[int] = None) -> int:
    if n_child is None:
        n_child = count_G(r, k1 - 1)
    m = r + k1 - 2
    return 1 + m + comb(m, 2) * n_child


def _check_params(r: int, k: int, *, layer: bool = False) -> None:
    if not isinstance(r, int) or r < 6:
        raise ConstructionError(f"r must be an integer >= 6, got {r!r}")
    lo = 1 if layer else 0
    if not isinstance(k, int) or not lo <= k <= max_level(r):
        raise ConstructionError(f"level must lie in {lo}..{max_level(r)} for r={r}, got {k!r}")


# -- builders -------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def build_base(r: int) -> LabeledConstruction:
    _check_params(r, 0)
    half = r // 2
    full = (1 << r) - 1
    g = Graph(r, [full & ~(1 << v) for v in range(r)], check=False)
    roles = tuple(RoleTag("A" if v < half else "B", "base", v + 1) for v in range(r))
    down = {v: ((1 << v) - 1) & ~((1 << half) - 1) for v in range(half, r)}
    poset = PartialOrder(full & ~((1 << half) - 1), down)
    a_mask = (1 << half) - 1
    layout = Layout(r, 0, r, "G", a_mask=a_mask, min_mask=1 << half)
    return LabeledConstruction(g, r, 0, roles, poset, layout)


def _layer(r: int, k1: int, kind: str) -> LabeledConstruction:
    _check_params(r, k1, layer=True)
    child = build_G(r, k1 - 1)
    sides = {"G": ("+", "-"), "H": ("+",), "H+": ("+",), "H-": ("-",)}[kind]
    with_u = kind in ("G", "H+", "H-")
    with_w = kind in ("G", "H+")
    m = r + k1 - 2
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    nc = child.g.n
    n = (with_u + 1 + with_w) + m * len(sides) + len(pairs) * len(sides) * nc
    if n > MAX_VERTICES:
        raise ConstructionError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")

    nxt = 0
    ubar = vbar = wbar = None
    if with_u:
        ubar, nxt = nxt, nxt + 1
    vbar, nxt = nxt, nxt + 1
    if with_w:
        wbar, nxt = nxt, nxt + 1
    side_x: dict[str, tuple[int, ...]] = {}
    for s in ("+", "-"):
        if s in sides:
            side_x[s] = tuple(range(nxt, nxt + m))
            nxt += m
    blocks = []
    for s in ("+", "-"):
        if s not in sides:
            continue
        xs = side_x[s]
        for i, j in pairs:
            if (i, j) == (1, m):
                a_att, b_att = xs[m - 1], xs[0]
            else:
                a_att, b_att = xs[i - 1], xs[j - 1]
            blocks.append(CopyBlock(s, i, j, nxt, a_att, b_att))
            nxt += nc
    assert nxt == n

    rows = [0] * n
    child_a = child.a_mask
    child_b = child.b_mask
    a_list = bits_to_list(child_a)
    b_list = bits_to_list(child_b)
    crow = child.g.adj
    for blk in blocks:
        o = blk.offset
        for u in range(nc):
            rows[o + u] = crow[u] << o
        rows[blk.a_attach] |= child_a << o
        rows[blk.b_attach] |= child_b << o
        abit, bbit = 1 << blk.a_attach, 1 << blk.b_attach
        for u in a_list:
            rows[o + u] |= abit
        for u in b_list:
            rows[o + u] |= bbit

    b = GraphBuilder()
    b.rows = rows
    all_x = 0
    for xs in side_x.values():
        for x in xs:
            all_x |= 1 << x
    b.join(vbar, all_x)
    if with_w:
        b.join(wbar, sum(1 << x for x in side_x["+"]) | (1 << ubar))
    if with_u and "-" in sides:
        b.join(ubar, sum(1 << x for x in side_x["-"]))
    g = b.build(check=False)

    # roles
    roles: list[RoleTag] = [None] * n  # type: ignore[list-item]
    if with_u:
        roles[ubar] = RoleTag("A", "ubar")
    roles[vbar] = RoleTag("A", "vbar")
    if with_w:
        roles[wbar] = RoleTag("B", "wbar", in_w=True)
    for s, xs in side_x.items():
        name = "y" if (s == "-" and kind == "G") else "x"
        for idx, x in enumerate(xs, start=1):
            roles[x] = RoleTag("B", name, idx)
    for blk in blocks:
        step = (k1, blk.side, (blk.i, blk.j))
        for u, t in enumerate(child.roles):
            roles[blk.offset + u] = replace(t, copy_path=(step,) + t.copy_path)

    # order on B minus W
    down: dict[int, int] = {}
    elements = 0
    child_elems = child.poset.elements
    for xs in side_x.values():
        for x in xs:
            down[x] = 0
            elements |= 1 << x
    for blk in blocks:
        o = blk.offset
        for u, d in child.poset.down.items():
            down[o + u] = d << o
        elements |= child_elems << o
        down[blk.b_attach] |= child_elems << o
    poset = PartialOrder(elements, down)

    a_mask = sum(1 << v for v, t in enumerate(roles) if t.partition == "A")
    w_mask = sum(1 << v for v, t in enumerate(roles) if t.in_w)
    min_mask = 0
    for blk in blocks:
        min_mask |= child.layout.min_mask << blk.offset
    layout = Layout(
        r, k1, n, kind, child.layout, ubar, vbar, wbar,
        side_x.get("+", ()), side_x.get("-", ()), tuple(blocks),
        a_mask=a_mask, w_mask=w_mask, min_mask=min_mask,
    )
    return LabeledConstruction(g, r, k1, tuple(roles), poset, layout)


def build_H(r: int, k1: int) -> LabeledConstruction:
    """Stage one: vbar, the independent x's and one copy of G_{k1-1} per pair."""
    return _layer(r, k1, "H")


def build_H_plus(r: int, k1: int) -> LabeledConstruction:
    return _layer(r, k1, "H+")


def build_H_minus(r: int, k1: int) -> LabeledConstruction:
    return _layer(r, k1, "H-")


@functools.lru_cache(maxsize=None)
def build_G(r: int, k: int) -> LabeledConstruction:
    _check_params(r, k)
    if k == 0:
        return build_base(r)
    if count_G(r, k) > MAX_VERTICES:
        raise ConstructionError(f"G({r},{k}) exceeds the cap of {MAX_VERTICES} vertices")
    return _layer(r, k, "G")


@functools.lru_cache(maxsize=None)
def build_aux(r: int, k: int) -> LabeledConstruction:
    """G_k plus apexes vA (joined to A) and vB (joined to B), vA ~ vB."""
    base = build_G(r, k)
    n = base.g.n
    va, vb = n, n + 1
    rows = list(base.g.adj) + [0, 0]
    b = GraphBuilder()
    b.rows = rows
    b.join(va, base.a_mask | (1 << vb))
    b.join(vb, base.b_mask)
    roles = base.roles + (RoleTag(None, "vA"), RoleTag(None, "vB"))
    return LabeledConstruction(b.build(check=False), r, k, roles, base.poset, base.layout, va, vb)


# -- consistency ----------------------------------------------------------

def check_role_consistency(lc: LabeledConstruction, max_witnesses: int = 20) -> Report:
    rep = Report("role_consistency")
    with Timer(rep):
        _role_checks(lc, rep, max_witnesses)
    return rep


def _role_checks(lc: LabeledConstruction, rep: Report, cap: int) -> None:
    g, roles = lc.g, lc.roles
    n_base = lc.layout.n

    def bad(reason: str, **kw) -> bool:
        if len(rep.witnesses) < cap:
            rep.fail(reason, **kw)
        else:
            rep.status = Status.FAIL
        return False

    if len(roles) != g.n:
        bad("role array length differs from vertex count", roles=len(roles), n=g.n)
        return
    apexes = {v for v in (lc.aux_a, lc.aux_b) if v is not None}
    if g.n != n_base + len(apexes):
        bad("vertex count differs from layout", n=g.n, layout=n_base)
    if lc.layout.kind == "G" and n_base != count_G(lc.r, lc.k):
        bad("vertex count differs from the recurrence", n=n_base, expected=count_G(lc.r, lc.k))
    for v, t in enumerate(roles):
        if v in apexes:
            if t.partition is not None:
                bad("apex carries an A/B flag", vertex=v)
        elif t.partition not in ("A", "B"):
            bad("vertex outside the A/B partition", vertex=v)
        if t.in_w and t.partition != "B":
            bad("W vertex not in B", vertex=v)
        depth = len(t.copy_path)
        for pos, (lvl, side, (i, j)) in enumerate(t.copy_path):
            m = lc.r + lvl - 2
            if lvl != lc.k - pos or side not in "+-" or not 1 <= i < j <= m:
                bad("malformed copy path", vertex=v, copy_path=t.copy_path)
                break
        level = lc.k - depth
        if t.special in ("x", "y", "vbar", "ubar", "wbar") and level < 1:
            bad("layer special role below level 1", vertex=v, special=t.special_label())
        if t.special == "base" and level != 0:
            bad("base role above level 0", vertex=v)
        if t.special == "wbar" and not t.in_w:
            bad("wbar not flagged in W", vertex=v)

    a_mask, b_mask, w_mask = lc.a_mask, lc.b_mask, lc.w_mask
    if a_mask & b_mask:
        bad("A and B intersect")
    if not is_independent(g, w_mask):
        u = next(v for v in iter_bits(w_mask) if g.adj[v] & w_mask)
        bad("W is not independent", vertex=u)
    nw = 0
    for v in iter_bits(w_mask):
        nw |= g.adj[v]
    nwa = nw & a_mask
    if not is_independent(g, nwa):
        u = next(v for v in iter_bits(nwa) if g.adj[v] & nwa)
        bad("N(W) meets A in a non-independent set", vertex=u)
    if lc.aux_a is not None:
        if g.adj[lc.aux_a] != a_mask | (1 << lc.aux_b):
            bad("N(vA) differs from A + vB", vertex=lc.aux_a)
        if g.adj[lc.aux_b] != b_mask | (1 << lc.aux_a):
            bad("N(vB) differs from B + vA", vertex=lc.aux_b)

    po = lc.poset
    if po.elements != b_mask & ~w_mask:
        bad("order elements differ from B minus W")
    elems = po.elements
    for v, d in po.down.items():
        if (d >> v) & 1:
            bad("order not irreflexive", vertex=v)
        for u in iter_bits(d):
            if po.down[u] & ~d:
                bad("order not transitive", vertex=v, below=u)
                break
        if po.comparable(v) != g.adj[v] & elems:
            bad("comparability differs from adjacency", vertex=v)

    for side in ("+", "-"):
        blocks = [b for b in lc.layout.copies if b.side == side]
        if blocks:
            swapped = sum(1 for b in blocks if b.a_attach > b.b_attach)
            if swapped != 1:
                bad("expected exactly one swapped attachment pair", side=side, swapped=swapped)
    rep.stats["vertices"] = g.n
