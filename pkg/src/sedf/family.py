"""A family of graphs where the conjectured 2n-m lower bound is tight.

Starting from a Hamiltonian graph with minimum degree 3 and one of its
Hamiltonian cycles, every non-cycle edge uv is expanded into a triangle u-x-v
through a fresh vertex x while the cycle edges stay. The derived graph has m
vertices and 3m-2n edges, is 2-connected, and has no two adjacent degree-2
vertices. Keeping +1 on all original edges and -1 on the new triangle legs
yields a dominating assignment of total 2n-m, i.e. exactly twice the new
order minus the new size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .assignments import SignAssignment
from .graphs import Graph, degree_profile

__all__ = ["TriangulationFamilyInstance", "triangulate_family", "find_hamiltonian_cycle"]


@dataclass(frozen=True)
class TriangulationFamilyInstance:
    base: Graph
    cycle: tuple[int, ...]
    derived: Graph
    assignment: SignAssignment

    @property
    def total(self) -> int:
        return self.assignment.total


def _validate_cycle(G: Graph, cycle: Sequence[int]) -> tuple[int, ...]:
    cyc = tuple(int(v) for v in cycle)
    if len(cyc) != G.n or sorted(cyc) != list(range(G.n)):
        raise ValueError("cycle must visit every vertex exactly once")
    for i, u in enumerate(cyc):
        v = cyc[(i + 1) % len(cyc)]
        if not G.has_edge(u, v):
            raise ValueError(f"cycle step {u}-{v} is not an edge")
    return cyc


def triangulate_family(G: Graph, cycle: Sequence[int]) -> TriangulationFamilyInstance:
    """Expand the non-cycle edges of a Hamiltonian graph into triangles.

    Requires minimum degree 3 and a valid Hamiltonian cycle of G.
    """
    if G.n and degree_profile(G).min_degree < 3:
        raise ValueError("minimum degree must be at least 3")
    cyc = _validate_cycle(G, cycle)
    cycle_edges = set()
    for i, u in enumerate(cyc):
        v = cyc[(i + 1) % len(cyc)]
        cycle_edges.add(G.edge_index[(u, v) if u < v else (v, u)])
    new_edges: list[tuple[int, int]] = list(G.edges)
    fresh = G.n
    spokes: list[tuple[int, int]] = []
    for e, (u, v) in enumerate(G.edges):
        if e in cycle_edges:
            continue
        spokes.append((u, fresh))
        spokes.append((fresh, v))
        fresh += 1
    derived = Graph(fresh, new_edges + spokes)
    signs = np.empty(derived.m, dtype=np.int8)
    original = {(u, v) for (u, v) in G.edges}
    for e, (u, v) in enumerate(derived.edges):
        signs[e] = 1 if (u, v) in original else -1
    return TriangulationFamilyInstance(G, cyc, derived, SignAssignment(derived, signs))


def find_hamiltonian_cycle(G: Graph) -> tuple[int, ...] | None:
    """Backtracking search for a Hamiltonian cycle (desk scale)."""
    if G.n < 3:
        return None
    path = [0]
    seen = {0}

    def extend() -> bool:
        if len(path) == G.n:
            return G.has_edge(path[-1], 0)
        for u in G.neighbors(path[-1]):
            if u not in seen:
                path.append(u)
                seen.add(u)
                if extend():
                    return True
                seen.discard(path.pop())
        return False

    return tuple(path) if extend() else None
