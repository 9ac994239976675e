"""graph6 encoding (short form for n <= 62, long forms above).

The edge bits are the upper triangle read column by column: for j = 1..n-1,
the pairs (0, j), (1, j), ..., (j-1, j).  Six bits per printable byte,
offset 63, zero padded at the end.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from ..graph_core import Graph

HEADER = b">>graph6<<"
_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return b"~" + bytes(((n >> s) & 63) + 63 for s in (12, 6, 0))
    if n <= 68719476735:
        return b"~~" + bytes(((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def _low_bits(x: int, j: int) -> np.ndarray:
    if j == 0:
        return np.zeros(0, dtype=np.uint8)
    raw = np.frombuffer((x & ((1 << j) - 1)).to_bytes((j + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:j]


def emit_graph6(g: Graph, header: bool = False) -> bytes:
    n = g.n
    parts = [_low_bits(g.adj[j], j) for j in range(1, n)]
    bits = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    body = (bits.reshape(-1, 6) @ _WEIGHTS + 63).astype(np.uint8).tobytes() if len(bits) else b""
    return (HEADER if header else b"") + _encode_n(n) + body


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty input", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated long-form length header", len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        if n <= 258047:
            raise Graph6Error("long-form length header used for a small order", 0)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated length header", len(data))
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    if n <= 62:
        raise Graph6Error("long-form length header used for a small order", 0)
    return n, 4


def parse_graph6(line: bytes | str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header and a
    trailing newline are accepted)."""
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(HEADER):
        data = data[len(HEADER):]
        base = len(HEADER)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte value {b} outside the graph6 range", base + i)
    n, pos = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {len(body)}", base + pos + min(len(body), need))
    if need == 0:
        return Graph.empty(n)
    vals = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(vals[:, None], axis=1)[:, 2:].reshape(-1)
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits", base + pos + need - 1)
    adj = [0] * n
    cols = np.repeat(np.arange(n, dtype=np.int64), np.arange(n, dtype=np.int64))
    start = np.concatenate(([0], np.cumsum(np.arange(n, dtype=np.int64))))[:-1]
    rows = np.arange(nbits, dtype=np.int64) - start[cols]
    on = np.nonzero(bits[:nbits])[0]
    for i, j in zip(rows[on].tolist(), cols[on].tolist()):
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, adj, check=False)


def iter_graph6_file(path: str | Path) -> Iterator[Graph]:
    with open(path, "rb") as fh:
        offset = 0
        for lineno, line in enumerate(fh, start=1):
            if line.strip():
                try:
                    yield parse_graph6(line)
                except Graph6Error as exc:
                    raise Graph6Error(f"line {lineno}: {exc}", offset + exc.offset) from None
            offset += len(line)


def read_graph6_file(path: str | Path) -> list[Graph]:
    return list(iter_graph6_file(path))


def write_graph6_file(path: str | Path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(emit_graph6(g) + b"\n")
            count += 1
    return count
