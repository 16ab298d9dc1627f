"""Immutable simple graphs and the structural probes the constructions dispatch on.

Vertices are dense integers 0..n-1. Edges are unordered pairs, normalized to
u < v and stored lexicographically sorted; an edge's position in that list is
its identity everywhere else in the package (sign vectors index edges the same
way). Instances never mutate after construction, so they are safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "DegreeProfile",
    "BlockDecomposition",
    "StructureProbe",
    "build_graph",
    "degree_profile",
    "components",
    "block_decomposition",
    "structure_probe",
    "induced_subgraph",
    "delete_edges",
    "with_extra_edges",
    "complete_bipartite",
    "complete_graph",
    "cycle_graph",
]


class Graph:
    """Simple undirected graph with a canonical edge ordering.

    ``adjacency[v]`` lists the indices of the edges incident to v, ascending.
    ``edge_u``/``edge_v`` are the endpoint arrays used by the numeric kernels.
    """

    __slots__ = ("n", "edges", "adjacency", "degrees", "edge_u", "edge_v",
                 "edge_index", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in edges:
            u = int(u)
            v = int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed in a simple graph")
            canon.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(canon))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append(i)
            adj[v].append(i)
        self.adjacency = tuple(tuple(a) for a in adj)
        self.degrees = np.array([len(a) for a in adj], dtype=np.int32)
        self.edge_u = np.array([e[0] for e in self.edges], dtype=np.int32)
        self.edge_v = np.array([e[1] for e in self.edges], dtype=np.int32)
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_index

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = []
        for e in self.adjacency[v]:
            a, b = self.edges[e]
            out.append(b if a == v else a)
        return tuple(sorted(out))

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, raw_edges: Iterable[tuple[int, int]]) -> Graph:
    """Canonical graph from a raw pair list: pairs normalized, duplicates collapsed."""
    return Graph(n, raw_edges)


@dataclass(frozen=True)
class DegreeProfile:
    v_odd: int
    v_even: int
    odd_vertices: tuple[int, ...]
    even_vertices: tuple[int, ...]
    min_degree: int


def degree_profile(G: Graph) -> DegreeProfile:
    """Counts and sorted id lists of odd and even degree vertices."""
    odd = tuple(v for v in range(G.n) if G.degree(v) % 2 == 1)
    even = tuple(v for v in range(G.n) if G.degree(v) % 2 == 0)
    mindeg = int(G.degrees.min()) if G.n else 0
    return DegreeProfile(len(odd), len(even), odd, even, mindeg)


def components(G: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by minimum id."""
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        comp = [s]
        while stack:
            x = stack.pop()
            for e in G.adjacency[x]:
                y = G.other_end(e, x)
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
                    comp.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: tuple[int, ...]


def block_decomposition(G: Graph) -> BlockDecomposition:
    """Biconnected components (maximal 2-connected subgraphs and bridges).

    Each block is reported as its sorted vertex set; blocks partition the edge
    set and pairwise intersect in at most one vertex, always a cut vertex.
    Requires a connected graph.
    """
    if G.n > 1 and len(components(G)) != 1:
        raise ValueError("graph is disconnected; split it with components() first")
    disc = [-1] * G.n
    low = [0] * G.n
    blocks: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    if G.n == 0:
        return BlockDecomposition((), ())
    timer = 0
    edge_stack: list[int] = []
    # Iterative Hopcroft-Tarjan; frame = (vertex, parent edge, adjacency cursor).
    root = 0
    disc[root] = low[root] = timer
    timer += 1
    frames: list[list[int]] = [[root, -1, 0]]
    root_children = 0
    while frames:
        v, pe, ci = frames[-1]
        if ci < len(G.adjacency[v]):
            frames[-1][2] += 1
            e = G.adjacency[v][ci]
            if e == pe:
                continue
            w = G.other_end(e, v)
            if disc[w] == -1:
                edge_stack.append(e)
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                frames.append([w, e, 0])
            elif disc[w] < disc[v]:
                edge_stack.append(e)
                low[v] = min(low[v], disc[w])
        else:
            frames.pop()
            if not frames:
                break
            p = frames[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= disc[p]:
                verts: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    a, b = G.edges[e]
                    verts.add(a)
                    verts.add(b)
                    if e == pe:
                        break
                blocks.append(tuple(sorted(verts)))
                if p != root or root_children > 1:
                    cuts.add(p)
    blocks.sort()
    return BlockDecomposition(tuple(blocks), tuple(sorted(cuts)))


@dataclass(frozen=True)
class StructureProbe:
    is_connected: bool
    is_two_connected: bool
    degree_two_vertices: tuple[int, ...]
    is_eulerian: bool


def structure_probe(G: Graph) -> StructureProbe:
    """Connectivity flags and the degree-2 vertex list used for dispatching."""
    connected = G.n <= 1 or len(components(G)) == 1
    two_connected = False
    if connected and G.n >= 3:
        two_connected = not block_decomposition(G).cut_vertices
    deg2 = tuple(v for v in range(G.n) if G.degree(v) == 2)
    eulerian = connected and degree_profile(G).v_odd == 0
    return StructureProbe(connected, two_connected, deg2, eulerian)


def induced_subgraph(G: Graph, vertices: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices`` with dense relabeling.

    Returns the subgraph and the old-id list: new vertex i corresponds to
    ``old_ids[i]`` (old ids in ascending order).
    """
    old_ids = tuple(sorted(set(vertices)))
    pos = {u: i for i, u in enumerate(old_ids)}
    sub_edges = [(pos[u], pos[v]) for (u, v) in G.edges if u in pos and v in pos]
    return Graph(len(old_ids), sub_edges), old_ids


def delete_edges(G: Graph, edge_ids: Iterable[int]) -> Graph:
    """Same vertex set with the given edge indices removed."""
    drop = set(edge_ids)
    return Graph(G.n, [e for i, e in enumerate(G.edges) if i not in drop])


def with_extra_edges(G: Graph, extra: Iterable[tuple[int, int]]) -> Graph:
    return Graph(G.n, list(G.edges) + list(extra))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with side A on vertices 0..a-1 and side B on a..a+b-1."""
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])
