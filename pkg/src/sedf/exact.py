"""Exact solvers and the closed-form bound table.

``gamma_exact`` minimizes the total over all dominating sign assignments by
exhaustive branch and bound (see :mod:`sedf.kernels` for the engines);
``gamma_sedf0_exact`` does the same over the stricter nonnegative class.
Both are capped by an edge-count capacity since the search space is 2^m.

All bound-table arithmetic is exact: rational bounds are stored as
``fractions.Fraction`` and never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from . import kernels
from .assignments import SignAssignment, verify
from .errors import CapacityError
from .graphs import Graph, block_decomposition, components, degree_profile

__all__ = [
    "DEFAULT_EXACT_CAPACITY",
    "ExactResult",
    "gamma_exact",
    "gamma_sedf0_exact",
    "max_matching_size",
    "BoundEntry",
    "BoundTable",
    "bound_table",
    "conjecture3_premises",
]

DEFAULT_EXACT_CAPACITY = 26


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: SignAssignment
    nodes_explored: int


def _check_capacity(G: Graph, capacity: int, what: str) -> None:
    if G.m > capacity:
        raise CapacityError(
            f"{what} needs {G.m} edges but the capacity is {capacity}")


def gamma_exact(G: Graph, *, capacity: int = DEFAULT_EXACT_CAPACITY,
                backend: str | None = None) -> ExactResult:
    """Exact signed edge domination number with an optimal witness."""
    _check_capacity(G, capacity, "exact search")
    value, signs, nodes = kernels.min_sedf(G, backend=backend)
    return ExactResult(value, SignAssignment(G, signs), nodes)


def gamma_sedf0_exact(G: Graph, *, capacity: int = DEFAULT_EXACT_CAPACITY,
                      target: int | None = None,
                      backend: str | None = None) -> ExactResult:
    """Exact minimum over the stricter nonnegative class.

    With ``target`` the search stops at the first assignment whose total is
    <= target (the result is then a witness of that threshold, not the
    minimum).
    """
    _check_capacity(G, capacity, "exact search")
    value, signs, nodes = kernels.min_sedf0(G, target=target, backend=backend)
    return ExactResult(value, SignAssignment(G, signs), nodes)


# ---------------------------------------------------------------------------
# maximum matching


def _two_coloring(G: Graph) -> list[int] | None:
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for e in G.adjacency[x]:
                y = G.other_end(e, x)
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def _bipartite_matching(G: Graph, color: list[int]) -> int:
    left = [v for v in range(G.n) if color[v] == 0]
    match: dict[int, int] = {}

    def try_augment(u: int, seen: set[int]) -> bool:
        for w in G.neighbors(u):
            if w in seen:
                continue
            seen.add(w)
            if w not in match or try_augment(match[w], seen):
                match[w] = u
                return True
        return False

    size = 0
    for u in left:
        if try_augment(u, set()):
            size += 1
    return size


def _matching_exhaustive(G: Graph) -> int:
    # Branch on the lowest vertex that still has a neighbor: leave it
    # unmatched, or match it to each neighbor in turn.
    memo: dict[int, int] = {}

    def rec(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        v = -1
        for x in range(G.n):
            if mask >> x & 1 and any(mask >> G.other_end(e, x) & 1
                                     for e in G.adjacency[x]):
                v = x
                break
        if v == -1:
            memo[mask] = 0
            return 0
        best = rec(mask & ~(1 << v))
        for e in G.adjacency[v]:
            u = G.other_end(e, v)
            if mask >> u & 1:
                best = max(best, 1 + rec(mask & ~(1 << v) & ~(1 << u)))
        memo[mask] = best
        return best

    return rec((1 << G.n) - 1)


def max_matching_size(G: Graph, *, capacity: int = DEFAULT_EXACT_CAPACITY) -> int:
    """Size of a largest matching; augmenting paths when bipartite, else
    exhaustive branching (desk scale)."""
    _check_capacity(G, capacity, "matching")
    color = _two_coloring(G)
    if color is not None:
        return _bipartite_matching(G, color)
    return _matching_exhaustive(G)


# ---------------------------------------------------------------------------
# bound table


@dataclass(frozen=True)
class BoundEntry:
    label: str
    kind: str  # "lower", "upper" or "exact"
    value: Fraction
    conjectured: bool = False


@dataclass(frozen=True)
class BoundTable:
    entries: tuple[BoundEntry, ...]

    def get(self, label: str) -> BoundEntry | None:
        for e in self.entries:
            if e.label == label:
                return e
        return None

    def lowers(self, include_conjectured: bool = False) -> tuple[BoundEntry, ...]:
        return tuple(e for e in self.entries if e.kind == "lower"
                     and (include_conjectured or not e.conjectured))

    def uppers(self, include_conjectured: bool = False) -> tuple[BoundEntry, ...]:
        return tuple(e for e in self.entries if e.kind == "upper"
                     and (include_conjectured or not e.conjectured))


def conjecture3_premises(G: Graph) -> bool:
    """2-connected and no two adjacent degree-2 vertices."""
    if G.n < 3 or len(components(G)) != 1:
        return False
    if block_decomposition(G).cut_vertices:
        return False
    return not any(G.degree(u) == 2 and G.degree(v) == 2 for u, v in G.edges)


def _complete_bipartite_sides(G: Graph) -> tuple[int, int] | None:
    if G.n < 2 or G.m == 0 or len(components(G)) != 1:
        return None
    color = _two_coloring(G)
    if color is None:
        return None
    a = sum(1 for c in color if c == 0)
    b = G.n - a
    if G.m != a * b:
        return None
    return (min(a, b), max(a, b))


def bound_table(G: Graph, *, matching_capacity: int = DEFAULT_EXACT_CAPACITY
                ) -> BoundTable:
    """Every applicable closed-form bound with its formula as the label.

    The matching-based lower bound is omitted when the matching capacity is
    exceeded; conjectured entries are flagged and never treated as theorems.
    """
    n, m = G.n, G.m
    prof = degree_profile(G)
    entries: list[BoundEntry] = []
    entries.append(BoundEntry("-n^2/16", "lower", Fraction(-n * n, 16)))
    if n >= 1 and prof.min_degree >= 1:
        entries.append(BoundEntry("n-m", "lower", Fraction(n - m)))
    if m <= matching_capacity:
        alpha = max_matching_size(G, capacity=matching_capacity)
        entries.append(BoundEntry("(2*matching-m)/3", "lower",
                                  Fraction(2 * alpha - m, 3)))
    entries.append(BoundEntry("n+odd/2", "upper", Fraction(n + prof.v_odd // 2)))
    if prof.v_even > 0:
        entries.append(BoundEntry("n-2+even", "upper", Fraction(n - 2 + prof.v_even)))
    if n >= 1:
        entries.append(BoundEntry("(4n-2)/3", "upper", Fraction(4 * n - 2, 3)))
        entries.append(BoundEntry("11n/6-1", "upper", Fraction(11 * n - 6, 6)))
        entries.append(BoundEntry("ceil(3n/2)", "upper", Fraction(ceil(Fraction(3 * n, 2)))))
        entries.append(BoundEntry("n-1", "upper", Fraction(n - 1), conjectured=True))
    if conjecture3_premises(G):
        entries.append(BoundEntry("2n-m", "lower", Fraction(2 * n - m),
                                  conjectured=True))
    sides = _complete_bipartite_sides(G)
    if sides is not None:
        from .constructors import kmn_value

        entries.append(BoundEntry("complete-bipartite", "exact",
                                  Fraction(kmn_value(*sides))))
    return BoundTable(tuple(entries))
