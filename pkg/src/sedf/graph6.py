"""graph6 text codec (the format emitted by the usual graph generators).

A line is a size header followed by the upper triangle of the adjacency
matrix, read column by column, packed into 6-bit groups and offset by 63 into
printable bytes. Sizes below 63 use a single header byte; larger sizes use a
126 marker with 3 or 6 payload bytes.
"""

from __future__ import annotations

from .errors import Graph6Error
from .graphs import Graph

__all__ = ["parse_graph6", "emit_graph6"]

_HEADER = ">>graph6<<"
_MAX_N = 100_000  # sanity cap; adjacency bits are materialized


def _decode_size(data: bytes) -> tuple[int, int]:
    """Vertex count and the offset where the adjacency bits start."""
    if not data:
        raise Graph6Error("empty graph6 line")
    c = data[0]
    if c != 126:
        return c - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated 3-byte size header")
        n = 0
        for i in range(1, 4):
            n = n << 6 | (data[i] - 63)
        return n, 4
    if len(data) < 8:
        raise Graph6Error("truncated 6-byte size header")
    n = 0
    for i in range(2, 8):
        n = n << 6 | (data[i] - 63)
    return n, 8


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` prefix is allowed)."""
    if isinstance(text, str):
        data = text.strip().encode("ascii", errors="replace")
    else:
        data = text.strip()
    if data.startswith(_HEADER.encode()):
        data = data[len(_HEADER):]
    for i, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte} outside the graph6 range 63..126", offset=i)
    n, start = _decode_size(data)
    if n < 0 or n > _MAX_N:
        raise Graph6Error(f"vertex count {n} out of range")
    nbits = n * (n - 1) // 2
    body = data[start:]
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise Graph6Error(
            f"body holds {len(body)} bytes, expected {expected} for n={n}",
            offset=start + min(len(body), expected))
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[bit // 6] - 63
            if byte >> (5 - bit % 6) & 1:
                edges.append((i, j))
            bit += 1
    # padding bits must be zero
    if nbits % 6:
        last = body[-1] - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6Error("nonzero padding bits", offset=start + len(body) - 1)
    return Graph(n, edges)


def emit_graph6(G: Graph) -> str:
    """Encode a graph as one graph6 line (no trailing newline)."""
    n = G.n
    if n > _MAX_N:
        raise Graph6Error(f"vertex count {n} out of range")
    if n < 63:
        head = [n + 63]
    elif n < 1 << 18:
        head = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    else:
        head = [126, 126] + [((n >> (6 * k)) & 63) + 63 for k in range(5, -1, -1)]
    nbits = n * (n - 1) // 2
    buf = bytearray((nbits + 5) // 6)
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if G.has_edge(i, j):
                buf[bit // 6] |= 1 << (5 - bit % 6)
            bit += 1
    return bytes(head).decode("ascii") + bytes(b + 63 for b in buf).decode("ascii")
