"""Streamed conjecture checking over graph6 input.

Three checks are supported, keyed by conjecture id:

1. the exact optimum is at most n-1 for every graph;
2. the exact optimum over the nonnegative class is at most n-1;
3. on 2-connected graphs without two adjacent degree-2 vertices, the exact
   optimum is at least 2n-m.

Graphs above the edge capacity are skipped and counted, never dropped
silently. Results are reported in input order regardless of the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .errors import Graph6Error
from .exact import (DEFAULT_EXACT_CAPACITY, conjecture3_premises, gamma_exact,
                    gamma_sedf0_exact)
from .graph6 import parse_graph6

__all__ = ["ScanReport", "CounterExample", "TightInstance", "scan_lines"]


@dataclass(frozen=True)
class CounterExample:
    graph6: str
    conjecture: int
    value: int
    bound: int


@dataclass(frozen=True)
class TightInstance:
    graph6: str
    conjecture: int
    value: int
    bound: int


@dataclass(frozen=True)
class ScanReport:
    conjecture: int
    graphs_processed: int
    skipped_capacity: int
    parse_failures: tuple[tuple[int, str], ...]
    counterexamples: tuple[CounterExample, ...]
    tight_instances: tuple[TightInstance, ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _evaluate(args: tuple[str, int, str | None]
              ) -> tuple[str, int, int, int] | None:
    """(graph6, value, bound, tight-flag placeholderless) or None when filtered."""
    line, conjecture, backend = args
    G = parse_graph6(line)
    if conjecture == 1:
        value = gamma_exact(G, capacity=10 ** 9, backend=backend).value
        return line, value, G.n - 1, int(value > G.n - 1)
    if conjecture == 2:
        value = gamma_sedf0_exact(G, capacity=10 ** 9, backend=backend).value
        return line, value, G.n - 1, int(value > G.n - 1)
    if not conjecture3_premises(G):
        return None
    value = gamma_exact(G, capacity=10 ** 9, backend=backend).value
    return line, value, 2 * G.n - G.m, int(value < 2 * G.n - G.m)


def scan_lines(lines: Iterable[str], conjecture: int, *,
               capacity: int = DEFAULT_EXACT_CAPACITY, workers: int = 1,
               backend: str | None = None) -> ScanReport:
    """Scan a graph6 stream against one conjecture.

    Parse failures are recorded per line and the scan continues. ``workers``
    bounds a process pool; the report is assembled in input order either way.
    """
    if conjecture not in (1, 2, 3):
        raise ValueError("conjecture must be 1, 2 or 3")
    start = time.perf_counter()
    parse_failures: list[tuple[int, str]] = []
    skipped = 0
    work: list[tuple[str, int, str | None]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            G = parse_graph6(line)
        except Graph6Error as exc:
            parse_failures.append((lineno, str(exc)))
            continue
        if G.m > capacity:
            skipped += 1
            continue
        work.append((line, conjecture, backend))
    if workers > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, work, chunksize=16))
    else:
        results = [_evaluate(item) for item in work]
    counter: list[CounterExample] = []
    tight: list[TightInstance] = []
    processed = 0
    for res in results:
        if res is None:
            continue
        processed += 1
        line, value, bound, bad = res
        if bad:
            counter.append(CounterExample(line, conjecture, value, bound))
        elif value == bound:
            tight.append(TightInstance(line, conjecture, value, bound))
    return ScanReport(conjecture, processed, skipped, tuple(parse_failures),
                      tuple(counter), tuple(tight),
                      time.perf_counter() - start)
