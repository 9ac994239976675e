"""Immutable simple graphs stored as Python-int bitset rows, plus colourings
and path witnesses.

Vertices are the dense integers ``0..n-1``.  ``adj[u]`` is an int whose bit
``v`` is set exactly when ``u`` and ``v`` are adjacent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def iter_bits(x: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_to_list(x: int) -> list[int]:
    return list(iter_bits(x))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class GraphError(ValueError):
    pass


class Graph:
    """A simple undirected graph.  Treat instances as immutable."""

    __slots__ = ("n", "adj", "_nbrs", "_m")

    def __init__(self, n: int, adj: Sequence[int], *, check: bool = True):
        if n < 0:
            raise GraphError("negative vertex count")
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        self.n = n
        self.adj: tuple[int, ...] = tuple(adj)
        self._nbrs: tuple[tuple[int, ...], ...] | None = None
        self._m: int | None = None
        if check:
            self.validate()

    def validate(self) -> None:
        full = (1 << self.n) - 1
        adj = self.adj
        for u, row in enumerate(adj):
            if row < 0 or row & ~full:
                raise GraphError(f"row {u} has bits outside 0..{self.n - 1}")
            if (row >> u) & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in iter_bits(row):
                if not (adj[v] >> u) & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        b = GraphBuilder(n)
        for u, v in edges:
            b.add_edge(u, v)
        return b.build()

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n, check=False)

    # -- queries ------------------------------------------------------
    @property
    def m(self) -> int:
        if self._m is None:
            self._m = sum(row.bit_count() for row in self.adj) // 2
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbours(self, v: int) -> tuple[int, ...]:
        if self._nbrs is None:
            self._nbrs = tuple(tuple(iter_bits(row)) for row in self.adj)
        return self._nbrs[v]

    def neighbour_lists(self) -> tuple[tuple[int, ...], ...]:
        if self._nbrs is None:
            self._nbrs = tuple(tuple(iter_bits(row)) for row in self.adj)
        return self._nbrs

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, [full & ~row & ~(1 << u) for u, row in enumerate(self.adj)], check=False)

    def induced(self, s: Iterable[int] | int) -> tuple["Graph", dict[int, int]]:
        return induced_subgraph(self, s)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class GraphBuilder:
    """Mutable single-owner builder; ``build()`` freezes into a Graph."""

    def __init__(self, n: int = 0):
        self.rows = [0] * n

    @property
    def n(self) -> int:
        return len(self.rows)

    def add_vertex(self) -> int:
        self.rows.append(0)
        return len(self.rows) - 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        n = len(self.rows)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def join(self, u: int, mask: int) -> None:
        """Make ``u`` adjacent to every vertex in ``mask``."""
        self.rows[u] |= mask
        for v in iter_bits(mask):
            self.rows[v] |= 1 << u

    def build(self, check: bool = True) -> Graph:
        return Graph(len(self.rows), self.rows, check=check)


@dataclass(frozen=True)
class Colouring:
    """A vertex colouring whose colour ids are compressed to ``0..C-1``.

    Compression preserves the relative order of the input ids, so a colouring
    given with ids 1..r keeps its class order.
    """

    colours: tuple[int, ...]
    num_colours: int = field(init=False)

    def __init__(self, colours: Iterable[int]):
        raw = tuple(colours)
        order = {c: i for i, c in enumerate(sorted(set(raw)))}
        object.__setattr__(self, "colours", tuple(order[c] for c in raw))
        object.__setattr__(self, "num_colours", len(order))

    def __len__(self) -> int:
        return len(self.colours)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_colours)]
        for v, c in enumerate(self.colours):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class PathWitness:
    verts: tuple[int, ...]
    closed: bool = False

    def __init__(self, verts: Iterable[int], closed: bool = False):
        object.__setattr__(self, "verts", tuple(verts))
        object.__setattr__(self, "closed", closed)

    def __len__(self) -> int:
        return len(self.verts)

    @property
    def mask(self) -> int:
        return mask_of(self.verts)

    def is_valid(self, g: Graph) -> bool:
        vs = self.verts
        if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
            return False
        if any(not g.has_edge(a, b) for a, b in zip(vs, vs[1:])):
            return False
        if self.closed:
            return len(vs) >= 3 and g.has_edge(vs[-1], vs[0])
        return True

    def is_maximal(self, g: Graph) -> bool:
        """No unused vertex is adjacent to either endpoint."""
        if not self.verts:
            return g.n == 0
        free = g.full_mask & ~self.mask
        return not (g.adj[self.verts[0]] & free) and not (g.adj[self.verts[-1]] & free)


def _as_mask(s: Iterable[int] | int) -> int:
    return s if isinstance(s, int) else mask_of(s)


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s`` with the order-preserving relabelling old->new."""
    mask = _as_mask(s)
    if mask >> g.n:
        raise GraphError("vertex set exceeds the graph")
    old = bits_to_list(mask)
    index = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = g.adj[v] & mask
        new = 0
        for u in iter_bits(row):
            new |= 1 << index[u]
        rows.append(new)
    return Graph(len(old), rows, check=False), index


def is_proper(g: Graph, c: Colouring | Sequence[int]) -> bool:
    cols = c.colours if isinstance(c, Colouring) else c
    if len(cols) != g.n:
        raise GraphError(f"colouring has length {len(cols)}, graph has {g.n} vertices")
    return all(cols[u] != cols[v] for u, v in g.edges())


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Components as bitsets, ordered by their lowest vertex.

    With ``within`` given, components of the subgraph induced by that mask.
    """
    remaining = g.full_mask if within is None else within
    adj = g.adj
    comps = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(g: Graph, within: int | None = None) -> bool:
    return len(connected_components(g, within)) <= 1


def is_clique(g: Graph, s: Iterable[int] | int) -> bool:
    mask = _as_mask(s)
    return all((g.adj[v] | (1 << v)) & mask == mask for v in iter_bits(mask))


def is_independent(g: Graph, s: Iterable[int] | int) -> bool:
    mask = _as_mask(s)
    return all(not (g.adj[v] & mask) for v in iter_bits(mask))


# -- small named families used by tests, examples and the CLI ------------

def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)], check=False)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,t}: vertex 0 is the centre."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    off = 0
    for g in graphs:
        rows.extend(row << off for row in g.adj)
        off += g.n
    return Graph(off, rows, check=False)


def empty_graph(n: int) -> Graph:
    return Graph.empty(n)
