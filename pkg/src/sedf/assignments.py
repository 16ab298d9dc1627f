"""Sign assignments on edges, vertex weights, and the two verification levels.

An assignment maps every edge to +1 or -1. ``verify`` checks two conditions:

* domination: for every edge e = uv, the signs over the closed edge
  neighborhood N[e] (all edges touching u or v, e included) sum to >= 1;
* the stricter nonnegative class: every vertex weight f(v) >= 0, and
  f(u) + f(v) >= 2 for every +1 edge uv. Membership in the stricter class
  implies domination.

The module also carries the composition tools the constructions rely on:
gluing assignments of two subgraphs that meet in a single cut vertex, lifting
an assignment over a suppressed degree-2 vertex (with or without a chord
between its neighbors), and flipping selected edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graphs import Graph, induced_subgraph

__all__ = [
    "SignAssignment",
    "WeightReport",
    "Violation",
    "VerificationVerdict",
    "weights",
    "closed_neighborhood_sum",
    "verify",
    "glue",
    "chord_reduction",
    "nochord_reduction",
    "lift_deg2_chord",
    "lift_deg2_nochord",
    "flip_edges",
]


class SignAssignment:
    """Total map from edge indices to {+1, -1}, tied to its graph."""

    __slots__ = ("graph", "signs", "_weights")

    def __init__(self, graph: Graph, signs):
        arr = np.asarray(signs, dtype=np.int8).copy()
        if arr.shape != (graph.m,):
            raise ValueError(f"expected {graph.m} signs, got shape {arr.shape}")
        if arr.size and not np.all(np.abs(arr) == 1):
            raise ValueError("signs must be +1 or -1")
        arr.setflags(write=False)
        self.graph = graph
        self.signs = arr
        self._weights = None

    @classmethod
    def from_mapping(cls, graph: Graph, mapping: Mapping[int, int]) -> "SignAssignment":
        if len(mapping) != graph.m or set(mapping) != set(range(graph.m)):
            raise ValueError("mapping must cover every edge index exactly once")
        arr = np.empty(graph.m, dtype=np.int8)
        for e, s in mapping.items():
            arr[e] = s
        return cls(graph, arr)

    @property
    def total(self) -> int:
        return int(self.signs.sum())

    def sign(self, e: int) -> int:
        return int(self.signs[e])

    def weight_array(self) -> np.ndarray:
        """Per-vertex weights f(v) = sum of signs on edges at v (cached)."""
        if self._weights is None:
            w = np.zeros(self.graph.n, dtype=np.int32)
            np.add.at(w, self.graph.edge_u, self.signs)
            np.add.at(w, self.graph.edge_v, self.signs)
            w.setflags(write=False)
            self._weights = w
        return self._weights

    def as_mapping(self) -> dict[int, int]:
        return {e: int(s) for e, s in enumerate(self.signs)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, SignAssignment)
                and self.graph == other.graph
                and np.array_equal(self.signs, other.signs))

    def __repr__(self) -> str:
        return f"SignAssignment({self.graph!r}, total={self.total})"


@dataclass(frozen=True)
class WeightReport:
    vertex_weights: tuple[int, ...]
    zero_set: tuple[int, ...]
    total: int


def weights(f: SignAssignment) -> WeightReport:
    w = f.weight_array()
    return WeightReport(tuple(int(x) for x in w),
                        tuple(int(v) for v in np.flatnonzero(w == 0)),
                        f.total)


def closed_neighborhood_sum(f: SignAssignment, e: int) -> int:
    """Sum of signs over N[e] via the identity f(u) + f(v) - f(e)."""
    u, v = f.graph.edges[e]
    w = f.weight_array()
    return int(w[u]) + int(w[v]) - f.sign(e)


def _direct_neighborhood_sums(f: SignAssignment) -> np.ndarray:
    """Definitional N[e] sums, summing each neighborhood edge set explicitly."""
    G = f.graph
    out = np.empty(G.m, dtype=np.int64)
    for e, (u, v) in enumerate(G.edges):
        nbr = set(G.adjacency[u]) | set(G.adjacency[v])
        out[e] = sum(int(f.signs[x]) for x in nbr)
    return out


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge" or "vertex"
    index: int
    rule: str
    observed: int


@dataclass(frozen=True)
class VerificationVerdict:
    is_sedf: bool
    is_sedf0: bool
    violations: tuple[Violation, ...]


def verify(f: SignAssignment) -> VerificationVerdict:
    """Check both conditions, reporting every violation rather than failing fast."""
    G = f.graph
    w = f.weight_array()
    viol: list[Violation] = []
    nsum = w[G.edge_u].astype(np.int64) + w[G.edge_v] - f.signs
    if __debug__ and G.m:
        # The shortcut identity and the definitional sum are independent paths;
        # they must agree on every edge.
        assert np.array_equal(nsum, _direct_neighborhood_sums(f))
    for e in np.flatnonzero(nsum < 1):
        viol.append(Violation("edge", int(e), "neighborhood-sum", int(nsum[e])))
    is_sedf = not viol
    n_viol = len(viol)
    for v in np.flatnonzero(w < 0):
        viol.append(Violation("vertex", int(v), "vertex-weight", int(w[v])))
    pos = np.flatnonzero(f.signs == 1)
    endsum = w[G.edge_u[pos]].astype(np.int64) + w[G.edge_v[pos]]
    for k in np.flatnonzero(endsum < 2):
        viol.append(Violation("edge", int(pos[k]), "positive-endpoints", int(endsum[k])))
    is_sedf0 = len(viol) == n_viol
    return VerificationVerdict(is_sedf, is_sedf0, tuple(viol))


def glue(G: Graph, v0: int, part1: Sequence[int], part2: Sequence[int],
         f1: SignAssignment, f2: SignAssignment) -> SignAssignment:
    """Combine assignments of two subgraphs meeting exactly in the cut vertex v0.

    ``part1`` and ``part2`` are vertex sets with union V(G) and intersection
    {v0}; ``f1`` and ``f2`` live on the induced subgraphs (as produced by
    :func:`induced_subgraph`) and must both belong to the stricter class. The
    result keeps that membership and its total is the sum of the two totals.
    """
    s1, s2 = set(part1), set(part2)
    if s1 & s2 != {v0}:
        raise ValueError("parts must intersect exactly in the cut vertex")
    if s1 | s2 != set(range(G.n)):
        raise ValueError("parts must cover every vertex")
    sub1, ids1 = induced_subgraph(G, part1)
    sub2, ids2 = induced_subgraph(G, part2)
    if f1.graph != sub1 or f2.graph != sub2:
        raise ValueError("assignments do not match the induced subgraphs")
    for f, name in ((f1, "first"), (f2, "second")):
        if not verify(f).is_sedf0:
            raise ValueError(f"{name} assignment is not in the nonnegative class")
    pos1 = {u: i for i, u in enumerate(ids1)}
    pos2 = {u: i for i, u in enumerate(ids2)}
    out = np.empty(G.m, dtype=np.int8)
    for e, (u, v) in enumerate(G.edges):
        if u in pos1 and v in pos1:
            out[e] = f1.signs[sub1.edge_index[(pos1[u], pos1[v])]]
        elif u in pos2 and v in pos2:
            out[e] = f2.signs[sub2.edge_index[(pos2[u], pos2[v])]]
        else:
            raise ValueError(f"edge {(u, v)} lies in neither part")
    return SignAssignment(G, out)


def _degree_two_neighbors(G: Graph, v0: int) -> tuple[int, int]:
    if G.degree(v0) != 2:
        raise ValueError(f"vertex {v0} has degree {G.degree(v0)}, need 2")
    u1, u2 = G.neighbors(v0)
    return u1, u2


def chord_reduction(G: Graph, v0: int) -> tuple[Graph, tuple[int, ...]]:
    """Remove a degree-2 vertex whose neighbors are adjacent, and their chord.

    Returns the reduced graph (dense relabeling) plus the old-id table.
    """
    u1, u2 = _degree_two_neighbors(G, v0)
    if not G.has_edge(u1, u2):
        raise ValueError(f"neighbors {u1},{u2} of {v0} are not adjacent")
    keep = [v for v in range(G.n) if v != v0]
    old_ids = tuple(keep)
    pos = {u: i for i, u in enumerate(keep)}
    edges = [(pos[a], pos[b]) for (a, b) in G.edges
             if v0 not in (a, b) and {a, b} != {u1, u2}]
    return Graph(G.n - 1, edges), old_ids


def nochord_reduction(G: Graph, v0: int) -> tuple[Graph, tuple[int, ...]]:
    """Suppress a degree-2 vertex whose neighbors are not adjacent, joining them."""
    u1, u2 = _degree_two_neighbors(G, v0)
    if G.has_edge(u1, u2):
        raise ValueError(f"neighbors {u1},{u2} of {v0} are adjacent")
    keep = [v for v in range(G.n) if v != v0]
    old_ids = tuple(keep)
    pos = {u: i for i, u in enumerate(keep)}
    edges = [(pos[a], pos[b]) for (a, b) in G.edges if v0 not in (a, b)]
    edges.append((pos[u1], pos[u2]))
    return Graph(G.n - 1, edges), old_ids


def _require_reduction_match(g: SignAssignment, expected: Graph) -> None:
    if g.graph != expected:
        raise ValueError("assignment does not live on the reduced graph")
    if not verify(g).is_sedf0:
        raise ValueError("reduced assignment is not in the nonnegative class")


def lift_deg2_chord(G: Graph, v0: int, g: SignAssignment) -> SignAssignment:
    """Extend an assignment over a removed degree-2 vertex with adjacent neighbors.

    The two edges at v0 get +1 and the restored chord gets -1; everything else
    copies ``g``. Keeps the nonnegative class and raises the total by one.
    """
    u1, u2 = _degree_two_neighbors(G, v0)
    reduced, old_ids = chord_reduction(G, v0)
    _require_reduction_match(g, reduced)
    pos = {u: i for i, u in enumerate(old_ids)}
    out = np.empty(G.m, dtype=np.int8)
    for e, (a, b) in enumerate(G.edges):
        if v0 in (a, b):
            out[e] = 1
        elif {a, b} == {u1, u2}:
            out[e] = -1
        else:
            out[e] = g.signs[reduced.edge_index[(pos[a], pos[b])]]
    return SignAssignment(G, out)


def lift_deg2_nochord(G: Graph, v0: int, g: SignAssignment) -> SignAssignment:
    """Extend an assignment over a suppressed degree-2 vertex (no chord case).

    The edge v0-u1 gets +1 and v0-u2 inherits the sign the shortcut edge u1-u2
    carried in the reduced graph. Keeps the nonnegative class; total rises by 1.
    """
    u1, u2 = _degree_two_neighbors(G, v0)
    reduced, old_ids = nochord_reduction(G, v0)
    _require_reduction_match(g, reduced)
    pos = {u: i for i, u in enumerate(old_ids)}
    shortcut = g.signs[reduced.edge_index[tuple(sorted((pos[u1], pos[u2])))]]
    out = np.empty(G.m, dtype=np.int8)
    for e, (a, b) in enumerate(G.edges):
        if {a, b} == {v0, u1}:
            out[e] = 1
        elif {a, b} == {v0, u2}:
            out[e] = shortcut
        else:
            out[e] = g.signs[reduced.edge_index[(pos[a], pos[b])]]
    return SignAssignment(G, out)


def flip_edges(f: SignAssignment, edge_ids: Iterable[int]) -> SignAssignment:
    """Negate the signs on the given edge indices."""
    out = f.signs.copy()
    idx = list(edge_ids)
    if idx:
        out[idx] = -out[idx]
    return SignAssignment(f.graph, out)
