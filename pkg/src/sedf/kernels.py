"""Search engines for exact sign optimization over a graph's edges.

Two interchangeable backends compute the same results:

* ``numba``: a depth-first branch and bound compiled with ``@njit``. Edges are
  decided in index order, +1 before -1 (for the zero-two search -1 before +1),
  with incremental feasibility pruning and an admissible bound on the
  remaining total. Default whenever numba imports.
* ``numpy``: a vectorized sweep over all 2^m sign vectors in chunks, visiting
  leaves in exactly the order the depth-first search would. Values, witnesses
  and early exits therefore agree with the compiled backend bit for bit, which
  makes this path double as the no-pruning reference oracle in the tests.

The process-wide default comes from the SEDF_BACKEND environment variable
("numba" or "numpy"); every entry point also takes a per-call override.

Branch-and-bound notes. Totals share the parity of m, so an assignment only
improves the incumbent when it is smaller by at least 2; the bound cut uses
that. For the plain domination search the per-edge state is the decided part
of each closed-neighborhood sum plus its undecided count: a constraint is dead
as soon as sum + undecided < 1. The nonnegative-weight searches track decided
vertex weights and undecided incident counts the same way.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ConstructionError
from .graphs import Graph, components

__all__ = [
    "available_backends",
    "resolve_backend",
    "min_sedf",
    "min_sedf0",
    "find_zero_two",
]

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def resolve_backend(backend: str | None = None) -> str:
    """Pick the backend: explicit argument, then SEDF_BACKEND, then default."""
    choice = backend or os.environ.get("SEDF_BACKEND", "").strip().lower() or None
    if choice is None:
        return "numba" if _HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r}; expected 'numba' or 'numpy'")
    if choice == "numba" and not _HAVE_NUMBA:
        raise ValueError("backend 'numba' requested but numba is not installed")
    return choice


# ---------------------------------------------------------------------------
# shared array builders


def _edge_neighbor_csr(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    """CSR over edges: for each edge, the edges sharing an endpoint, itself included."""
    lists = []
    for e, (u, v) in enumerate(G.edges):
        nbr = set(G.adjacency[u]) | set(G.adjacency[v])
        lists.append(sorted(nbr))
    ptr = np.zeros(G.m + 1, dtype=np.int64)
    for e, lst in enumerate(lists):
        ptr[e + 1] = ptr[e] + len(lst)
    flat = np.array([x for lst in lists for x in lst] or [0], dtype=np.int64)
    if ptr[-1] == 0:
        flat = np.zeros(0, dtype=np.int64)
    return ptr, flat


def _incidence_csr(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(G.n + 1, dtype=np.int64)
    for v in range(G.n):
        ptr[v + 1] = ptr[v] + len(G.adjacency[v])
    flat = np.array([e for v in range(G.n) for e in G.adjacency[v]] or [0],
                    dtype=np.int64)
    if ptr[-1] == 0:
        flat = np.zeros(0, dtype=np.int64)
    return ptr, flat


# ---------------------------------------------------------------------------
# numba backend


@njit(cache=True)
def _sedf_dfs(m, eptr, enbr, target):
    sign = np.zeros(m, dtype=np.int8)
    tried = np.zeros(m, dtype=np.int8)
    cur = np.zeros(m, dtype=np.int64)
    und = np.empty(m, dtype=np.int64)
    for e in range(m):
        und[e] = eptr[e + 1] - eptr[e]
    best = np.int64(m + 2)
    best_sign = np.ones(m, dtype=np.int8)
    nodes = np.int64(0)
    ptotal = np.int64(0)
    depth = 0
    while depth >= 0:
        if depth == m:
            if ptotal < best:
                best = ptotal
                for i in range(m):
                    best_sign[i] = sign[i]
                if best <= target:
                    break
            depth -= 1
            s = sign[depth]
            ptotal -= s
            for idx in range(eptr[depth], eptr[depth + 1]):
                e2 = enbr[idx]
                cur[e2] -= s
                und[e2] += 1
            continue
        if tried[depth] == 2:
            tried[depth] = 0
            depth -= 1
            if depth >= 0:
                s = sign[depth]
                ptotal -= s
                for idx in range(eptr[depth], eptr[depth + 1]):
                    e2 = enbr[idx]
                    cur[e2] -= s
                    und[e2] += 1
            continue
        s = np.int64(1) if tried[depth] == 0 else np.int64(-1)
        tried[depth] += 1
        rem = m - depth - 1
        if ptotal + s - rem > best - 2:
            continue
        nodes += 1
        ok = True
        for idx in range(eptr[depth], eptr[depth + 1]):
            e2 = enbr[idx]
            cur[e2] += s
            und[e2] -= 1
        for idx in range(eptr[depth], eptr[depth + 1]):
            e2 = enbr[idx]
            if cur[e2] + und[e2] < 1:
                ok = False
                break
        if ok:
            sign[depth] = np.int8(s)
            ptotal += s
            depth += 1
        else:
            for idx in range(eptr[depth], eptr[depth + 1]):
                e2 = enbr[idx]
                cur[e2] -= s
                und[e2] += 1
    return best, best_sign, nodes


@njit(cache=True)
def _sedf0_check(j, s, w, undv, sign, eu, ev, vptr, vinc):
    a = eu[j]
    b = ev[j]
    if w[a] + undv[a] < 0 or w[b] + undv[b] < 0:
        return False
    if s == 1 and w[a] + w[b] + undv[a] + undv[b] < 2:
        return False
    for t in range(2):
        x = a if t == 0 else b
        for idx in range(vptr[x], vptr[x + 1]):
            e2 = vinc[idx]
            if e2 < j and sign[e2] == 1:
                u2 = eu[e2]
                v2 = ev[e2]
                if w[u2] + w[v2] + undv[u2] + undv[v2] < 2:
                    return False
    return True


@njit(cache=True)
def _sedf0_dfs(m, eu, ev, vptr, vinc, target):
    n = vptr.shape[0] - 1
    sign = np.zeros(m, dtype=np.int8)
    tried = np.zeros(m, dtype=np.int8)
    w = np.zeros(n, dtype=np.int64)
    undv = np.empty(n, dtype=np.int64)
    for v in range(n):
        undv[v] = vptr[v + 1] - vptr[v]
    best = np.int64(m + 2)
    best_sign = np.ones(m, dtype=np.int8)
    nodes = np.int64(0)
    ptotal = np.int64(0)
    depth = 0
    while depth >= 0:
        if depth == m:
            if ptotal < best:
                best = ptotal
                for i in range(m):
                    best_sign[i] = sign[i]
                if best <= target:
                    break
            depth -= 1
            s = sign[depth]
            ptotal -= s
            w[eu[depth]] -= s
            w[ev[depth]] -= s
            undv[eu[depth]] += 1
            undv[ev[depth]] += 1
            continue
        if tried[depth] == 2:
            tried[depth] = 0
            depth -= 1
            if depth >= 0:
                s = sign[depth]
                ptotal -= s
                w[eu[depth]] -= s
                w[ev[depth]] -= s
                undv[eu[depth]] += 1
                undv[ev[depth]] += 1
            continue
        s = np.int64(1) if tried[depth] == 0 else np.int64(-1)
        tried[depth] += 1
        rem = m - depth - 1
        if ptotal + s - rem > best - 2:
            continue
        nodes += 1
        w[eu[depth]] += s
        w[ev[depth]] += s
        undv[eu[depth]] -= 1
        undv[ev[depth]] -= 1
        if _sedf0_check(depth, s, w, undv, sign, eu, ev, vptr, vinc):
            sign[depth] = np.int8(s)
            ptotal += s
            depth += 1
        else:
            w[eu[depth]] -= s
            w[ev[depth]] -= s
            undv[eu[depth]] += 1
            undv[ev[depth]] += 1
    return best, best_sign, nodes


@njit(cache=True)
def _zero_two_apply(j, s, w, undv, zerocap, comp, eu, ev):
    # Returns the number of zero-capability losses so undo can mirror them.
    a = eu[j]
    b = ev[j]
    w[a] += s
    w[b] += s
    undv[a] -= 1
    undv[b] -= 1
    if s == 1:
        for t in range(2):
            x = a if t == 0 else b
            d = w[x] - undv[x]
            if d == 1 or d == 2:
                zerocap[comp[x]] -= 1


@njit(cache=True)
def _zero_two_undo(j, s, w, undv, zerocap, comp, eu, ev):
    a = eu[j]
    b = ev[j]
    if s == 1:
        for t in range(2):
            x = a if t == 0 else b
            d = w[x] - undv[x]
            if d == 1 or d == 2:
                zerocap[comp[x]] += 1
    w[a] -= s
    w[b] -= s
    undv[a] += 1
    undv[b] += 1


@njit(cache=True)
def _zero_two_check(j, s, w, undv, zerocap, comp, needzero, sign, eu, ev, vptr, vinc):
    a = eu[j]
    b = ev[j]
    for t in range(2):
        x = a if t == 0 else b
        if w[x] + undv[x] < 0 or w[x] - undv[x] > 2:
            return False
        c = comp[x]
        if needzero[c] and zerocap[c] == 0:
            return False
    if s == 1:
        ca = w[a] + undv[a]
        cb = w[b] + undv[b]
        if min(ca, np.int64(2)) + min(cb, np.int64(2)) < 2:
            return False
        for t in range(2):
            x = a if t == 0 else b
            for idx in range(vptr[x], vptr[x + 1]):
                e2 = vinc[idx]
                if e2 < j and sign[e2] == 1:
                    u2 = eu[e2]
                    v2 = ev[e2]
                    cu = w[u2] + undv[u2]
                    cv = w[v2] + undv[v2]
                    if min(cu, np.int64(2)) + min(cv, np.int64(2)) < 2:
                        return False
    return True


@njit(cache=True)
def _zero_two_dfs(m, eu, ev, vptr, vinc, comp, needzero, ncomp):
    n = vptr.shape[0] - 1
    sign = np.zeros(m, dtype=np.int8)
    tried = np.zeros(m, dtype=np.int8)
    w = np.zeros(n, dtype=np.int64)
    undv = np.empty(n, dtype=np.int64)
    zerocap = np.zeros(ncomp, dtype=np.int64)
    for v in range(n):
        undv[v] = vptr[v + 1] - vptr[v]
        zerocap[comp[v]] += 1
    nodes = np.int64(0)
    depth = 0
    found = False
    while depth >= 0:
        if depth == m:
            found = True
            break
        if tried[depth] == 2:
            tried[depth] = 0
            depth -= 1
            if depth >= 0:
                _zero_two_undo(depth, np.int64(sign[depth]), w, undv, zerocap, comp, eu, ev)
            continue
        # -1 first: completed assignments then appear in ascending-total bias.
        s = np.int64(-1) if tried[depth] == 0 else np.int64(1)
        tried[depth] += 1
        nodes += 1
        _zero_two_apply(depth, s, w, undv, zerocap, comp, eu, ev)
        if _zero_two_check(depth, s, w, undv, zerocap, comp, needzero, sign, eu, ev, vptr, vinc):
            sign[depth] = np.int8(s)
            depth += 1
        else:
            _zero_two_undo(depth, s, w, undv, zerocap, comp, eu, ev)
    return found, sign, nodes


# ---------------------------------------------------------------------------
# numpy backend

_CHUNK = 1 << 15


def _sign_chunks(m: int, flip: bool):
    """Yield (start_index, sign_matrix) over all 2^m rows in search-leaf order.

    Row k assigns edge i from bit (m-1-i) of k; bit 0 means +1, matching a
    +1-first depth-first search. With ``flip`` bit 0 means -1 instead
    (-1-first search order).
    """
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    total = 1 << m
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        ks = np.arange(lo, hi, dtype=np.int64)
        bits = ((ks[:, None] >> shifts[None, :]) & 1).astype(np.int8)
        signs = (2 * bits - 1) if flip else (1 - 2 * bits)
        yield lo, signs


def _vertex_weights(signs: np.ndarray, G: Graph) -> np.ndarray:
    W = np.zeros((signs.shape[0], G.n), dtype=np.int32)
    for v in range(G.n):
        inc = G.adjacency[v]
        if inc:
            W[:, v] = signs[:, np.array(inc)].sum(axis=1, dtype=np.int32)
    return W


def _np_min(G: Graph, sedf0: bool, target: int) -> tuple[int, np.ndarray, int]:
    m = G.m
    eu, ev = G.edge_u, G.edge_v
    best = m + 2
    best_sign = np.ones(m, dtype=np.int8)
    nodes = 0
    for lo, signs in _sign_chunks(m, flip=False):
        W = _vertex_weights(signs, G)
        if sedf0:
            feas = (W >= 0).all(axis=1)
            pos_ok = ((W[:, eu] + W[:, ev] >= 2) | (signs == -1)).all(axis=1)
            feas &= pos_ok
        else:
            nsum = W[:, eu] + W[:, ev] - signs
            feas = (nsum >= 1).all(axis=1)
        totals = signs.sum(axis=1, dtype=np.int32)
        hits = feas & (totals <= target)
        if hits.any():
            first = int(np.argmax(hits))
            nodes += first + 1
            return int(totals[first]), signs[first].copy(), nodes
        nodes += signs.shape[0]
        if feas.any():
            ft = np.where(feas, totals, np.int32(m + 2))
            mn = int(ft.min())
            if mn < best:
                best = mn
                best_sign = signs[int(np.argmax(ft == mn))].copy()
    return best, best_sign, nodes


def _np_zero_two(G: Graph, comp: np.ndarray, needzero: np.ndarray
                 ) -> tuple[bool, np.ndarray, int]:
    m = G.m
    eu, ev = G.edge_u, G.edge_v
    comp_vertices = [np.flatnonzero(comp == c) for c in range(len(needzero))]
    nodes = 0
    for lo, signs in _sign_chunks(m, flip=True):
        W = _vertex_weights(signs, G)
        feas = ((W == 0) | (W == 2)).all(axis=1)
        feas &= ((W[:, eu] + W[:, ev] >= 2) | (signs == -1)).all(axis=1)
        for c, vs in enumerate(comp_vertices):
            if needzero[c]:
                feas &= (W[:, vs] == 0).any(axis=1)
        if feas.any():
            first = int(np.argmax(feas))
            nodes += first + 1
            return True, signs[first].copy(), nodes
        nodes += signs.shape[0]
    return False, np.ones(m, dtype=np.int8), nodes


# ---------------------------------------------------------------------------
# public entry points


def min_sedf(G: Graph, *, target: int | None = None,
             backend: str | None = None) -> tuple[int, np.ndarray, int]:
    """Minimum total over sign vectors whose closed-neighborhood sums are all >= 1.

    Returns (value, witness signs, nodes explored). With ``target`` the search
    stops at the first assignment, in leaf order, whose total is <= target.
    """
    m = G.m
    if m == 0:
        return 0, np.zeros(0, dtype=np.int8), 1
    tgt = -(m + 2) if target is None else int(target)
    if resolve_backend(backend) == "numba":
        eptr, enbr = _edge_neighbor_csr(G)
        best, sign, nodes = _sedf_dfs(m, eptr, enbr, np.int64(tgt))
        return int(best), np.asarray(sign, dtype=np.int8), int(nodes)
    best, sign, nodes = _np_min(G, sedf0=False, target=tgt)
    return int(best), sign, int(nodes)


def min_sedf0(G: Graph, *, target: int | None = None,
              backend: str | None = None) -> tuple[int, np.ndarray, int]:
    """Like :func:`min_sedf` for the stricter class: every vertex weight >= 0
    and endpoint weights summing to >= 2 on every +1 edge."""
    m = G.m
    if m == 0:
        return 0, np.zeros(0, dtype=np.int8), 1
    tgt = -(m + 2) if target is None else int(target)
    if resolve_backend(backend) == "numba":
        vptr, vinc = _incidence_csr(G)
        best, sign, nodes = _sedf0_dfs(m, np.asarray(G.edge_u, dtype=np.int64),
                                       np.asarray(G.edge_v, dtype=np.int64),
                                       vptr, vinc, np.int64(tgt))
        return int(best), np.asarray(sign, dtype=np.int8), int(nodes)
    best, sign, nodes = _np_min(G, sedf0=True, target=tgt)
    return int(best), sign, int(nodes)


def find_zero_two(G: Graph, *, backend: str | None = None
                  ) -> tuple[np.ndarray, int]:
    """First assignment (in -1-first leaf order) of the stricter class whose
    vertex weights all land in {0, 2}, with a weight-0 vertex in every
    connected component that has edges. Raises if none exists."""
    m = G.m
    if m == 0:
        return np.zeros(0, dtype=np.int8), 1
    comp = np.zeros(G.n, dtype=np.int64)
    comps = components(G)
    needzero = np.zeros(len(comps), dtype=np.bool_)
    for c, verts in enumerate(comps):
        for v in verts:
            comp[v] = c
        needzero[c] = any(G.adjacency[v] for v in verts)
    if resolve_backend(backend) == "numba":
        vptr, vinc = _incidence_csr(G)
        found, sign, nodes = _zero_two_dfs(m, np.asarray(G.edge_u, dtype=np.int64),
                                           np.asarray(G.edge_v, dtype=np.int64),
                                           vptr, vinc, comp, needzero,
                                           len(comps))
        found = bool(found)
        sign = np.asarray(sign, dtype=np.int8)
    else:
        found, sign, nodes = _np_zero_two(G, comp, needzero)
    if not found:
        raise ConstructionError("no assignment with all vertex weights in {0,2} found")
    return sign, int(nodes)
