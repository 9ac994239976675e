"""Vertex connectivity through unit max-flow on the vertex-split network."""
from __future__ import annotations

from collections import deque

from ..graph_core import Graph, is_connected

_INF = 1 << 30


def local_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s-t paths (s, t non-adjacent)."""
    if g.has_edge(s, t):
        raise ValueError("local vertex connectivity needs non-adjacent endpoints")
    n = g.n
    # node 2v is v_in, 2v+1 is v_out
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap[(a, b)] = 0
            cap.setdefault((b, a), 0)
        cap[(a, b)] += c

    for v in range(n):
        arc(2 * v, 2 * v + 1, _INF if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, _INF)
        arc(2 * v + 1, 2 * u, _INF)
    src, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {src: src}
        q = deque([src])
        while q and sink not in parent:
            a = q.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    q.append(b)
        if sink not in parent:
            return flow
        b = sink
        while b != src:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def kappa(g: Graph) -> int:
    """Vertex connectivity; K_n gives n-1 and disconnected graphs give 0."""
    n = g.n
    if n <= 1:
        return 0
    if not is_connected(g):
        return 0
    best = n - 1
    i = 0
    while i <= best and i < n:
        non = g.full_mask & ~g.adj[i] & ~(1 << i)
        j = 0
        while non:
            if non & 1:
                best = min(best, local_connectivity(g, i, j))
            non >>= 1
            j += 1
        i += 1
    return best
