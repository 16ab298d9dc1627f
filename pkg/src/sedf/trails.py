"""Trail decompositions and the alternating sign schemes applied along trails.

A trail is a walk that repeats no edge; it is open when its endpoints differ
and closed when they coincide. Every graph decomposes into edge-disjoint
trails: per connected component with 2k > 0 odd-degree vertices, exactly k
open trails whose endpoints are those odd vertices (each once), and per
all-even component with edges a single closed trail.

The decomposition here is deterministic: per component the odd vertices are
paired in sorted order (1st with 2nd, 3rd with 4th, ...), a virtual edge is
added per pair, an Euler circuit is traced from the lowest vertex taking the
lowest-numbered unused edge at every step, and the circuit is split at the
virtual edges.

Sign schemes return partial assignments as plain dicts from edge index to
+1/-1; merging dicts with disjoint domains composes schemes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, components, degree_profile

__all__ = [
    "Trail",
    "TrailDecomposition",
    "trail_decomposition",
    "euler_circuit",
    "good_positions",
    "proper_assignment",
    "proper_assignment_at",
    "alternating_flip_last",
    "alternating_circuit",
]

PartialAssignment = dict[int, int]


@dataclass(frozen=True)
class Trail:
    vertex_seq: tuple[int, ...]
    edge_seq: tuple[int, ...]
    closed: bool

    @property
    def length(self) -> int:
        return len(self.edge_seq)

    def __post_init__(self):
        if len(self.vertex_seq) != len(self.edge_seq) + 1:
            raise ValueError("vertex sequence must be one longer than edge sequence")
        if len(set(self.edge_seq)) != len(self.edge_seq):
            raise ValueError("a trail repeats no edge")
        if self.closed != (self.vertex_seq[0] == self.vertex_seq[-1]):
            raise ValueError("closed flag inconsistent with endpoints")


@dataclass(frozen=True)
class TrailDecomposition:
    graph: Graph
    trails: tuple[Trail, ...]

    @property
    def open_trails(self) -> tuple[Trail, ...]:
        return tuple(t for t in self.trails if not t.closed)


def _euler_walk(n: int, endpoints: list[tuple[int, int]], start: int) -> list[int]:
    """Euler circuit over the (multi)edge list as a sequence of edge slots.

    Assumes all degrees even and the edges reachable from ``start``; takes the
    lowest unused edge slot at every vertex.
    """
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(endpoints):
        inc[u].append(i)
        inc[v].append(i)
    cursor = [0] * n
    used = [False] * len(endpoints)
    stack: list[tuple[int, int]] = [(start, -1)]  # (vertex, edge taken to reach it)
    circuit_edges: list[int] = []
    while stack:
        v, via = stack[-1]
        found = False
        while cursor[v] < len(inc[v]):
            e = inc[v][cursor[v]]
            if used[e]:
                cursor[v] += 1
                continue
            used[e] = True
            a, b = endpoints[e]
            stack.append((b if a == v else a, e))
            found = True
            break
        if not found:
            stack.pop()
            if via >= 0:
                circuit_edges.append(via)
    circuit_edges.reverse()
    return circuit_edges


def _vertex_seq(endpoints: list[tuple[int, int]], edge_seq: list[int],
                start: int) -> list[int]:
    seq = [start]
    cur = start
    for e in edge_seq:
        a, b = endpoints[e]
        cur = b if a == cur else a
        seq.append(cur)
    return seq


def trail_decomposition(G: Graph) -> TrailDecomposition:
    """Deterministic edge-disjoint trail cover of G, per component."""
    trails: list[Trail] = []
    for comp in components(G):
        comp_edges = sorted({e for v in comp for e in G.adjacency[v]})
        if not comp_edges:
            continue
        odd = sorted(v for v in comp if G.degree(v) % 2 == 1)
        endpoints = [G.edges[e] for e in comp_edges]
        k = len(odd) // 2
        virtual_at = len(comp_edges)
        for i in range(k):
            endpoints.append((odd[2 * i], odd[2 * i + 1]))
        start = comp[0]
        walk = _euler_walk(G.n, endpoints, start)
        vseq = _vertex_seq(endpoints, walk, start)
        if k == 0:
            edge_ids = tuple(comp_edges[e] for e in walk)
            trails.append(Trail(tuple(vseq), edge_ids, True))
            continue
        # Split the circuit at the virtual edges. Virtual edges join disjoint
        # vertex pairs, so no two of them are consecutive and every segment
        # between them is a nonempty open trail.
        vpos = [i for i, e in enumerate(walk) if e >= virtual_at]
        L = len(walk)
        for i in range(k):
            lo = vpos[i] + 1
            hi = vpos[(i + 1) % k] if i + 1 < k else vpos[0] + L
            seg = [walk[j % L] for j in range(lo, hi)]
            verts = [vseq[j % L] for j in range(lo, hi + 1)]
            edge_ids = tuple(comp_edges[e] for e in seg)
            trails.append(Trail(tuple(verts), edge_ids, False))
    return TrailDecomposition(G, tuple(trails))


def euler_circuit(G: Graph, start: int) -> Trail:
    """Closed trail through every edge of G exactly once, from ``start``.

    Requires every degree even and every edge in the component of ``start``.
    """
    prof = degree_profile(G)
    if prof.v_odd:
        raise ValueError(f"graph is not eulerian: vertex {prof.odd_vertices[0]} has odd degree")
    if not 0 <= start < max(G.n, 1):
        raise ValueError(f"start vertex {start} out of range")
    comp = next((c for c in components(G) if start in c), (start,))
    reachable = {e for v in comp for e in G.adjacency[v]}
    if len(reachable) != G.m:
        raise ValueError("some edges are not reachable from the start vertex")
    endpoints = list(G.edges)
    walk = _euler_walk(G.n, endpoints, start)
    vseq = _vertex_seq(endpoints, walk, start)
    return Trail(tuple(vseq), tuple(walk), True)


def good_positions(T: Trail) -> list[int]:
    """Interior positions splitting an even open trail into two odd halves.

    These are the odd positions 1..length-1; there are exactly length/2 of
    them. The vertex standing at a returned position is a usable split vertex
    (one vertex may occupy several positions).
    """
    if T.closed:
        raise ValueError("closed trails have no split positions")
    if T.length % 2 == 1 or T.length < 2:
        raise ValueError("split positions exist only on even open trails")
    return [j for j in range(1, T.length) if j % 2 == 1]


def proper_assignment(T: Trail) -> PartialAssignment:
    """Alternate +1,-1 along an odd open trail, starting and ending with +1.

    The signs sum to +1 and every interior visit contributes 0 or +2 to the
    visited vertex, so trail-local weights stay nonnegative.
    """
    if T.closed:
        raise ValueError("expected an open trail")
    if T.length % 2 == 0:
        raise ValueError("even trails need a split position; use proper_assignment_at")
    return {e: (1 if i % 2 == 0 else -1) for i, e in enumerate(T.edge_seq)}


def proper_assignment_at(T: Trail, pos: int) -> PartialAssignment:
    """Alternating signs on the two odd halves of an even open trail.

    Both halves start and end with +1, so the split vertex collects +2 and the
    signs sum to +2 overall.
    """
    if pos not in good_positions(T):
        raise ValueError(f"{pos} does not split the trail into two odd halves")
    out: PartialAssignment = {}
    for i, e in enumerate(T.edge_seq[:pos]):
        out[e] = 1 if i % 2 == 0 else -1
    for i, e in enumerate(T.edge_seq[pos:]):
        out[e] = 1 if i % 2 == 0 else -1
    return out


def alternating_flip_last(T: Trail) -> PartialAssignment:
    """Alternate starting with +1; on even trails force the last edge to +1.

    Sums to +1 on odd trails and +2 on even ones.
    """
    if T.closed:
        raise ValueError("expected an open trail")
    out = {e: (1 if i % 2 == 0 else -1) for i, e in enumerate(T.edge_seq)}
    if T.length and T.length % 2 == 0:
        out[T.edge_seq[-1]] = 1
    return out


def alternating_circuit(T: Trail) -> PartialAssignment:
    """Alternate +1,-1 around a closed trail starting with +1.

    Sums to 0 on even circuits; on odd ones it sums to +1 and the start vertex
    picks up weight 2 while every other visit nets 0.
    """
    if not T.closed:
        raise ValueError("expected a closed trail")
    return {e: (1 if i % 2 == 0 else -1) for i, e in enumerate(T.edge_seq)}
