"""Reference heuristics: first-fit over a stream, and its offline variant.

The naive matcher takes each streamed edge whose vertices are all still
free, which yields a maximal matching of the stream.  The greedy matcher
is exactly the naive matcher fed the edges in descending weight order
(ties by id), giving the classic ``1/d`` guarantee at the cost of holding
and sorting the whole instance.
"""

from __future__ import annotations

import time
from typing import Optional

from .core import Hypergraph, Matching, RunMetrics, check_stream
from .ingest import StreamOrder, order_stream


def run_naive(hg: Hypergraph, stream: list[int]) -> tuple[Matching, RunMetrics]:
    """First-fit matching over ``stream`` (a permutation of the edge ids)."""
    check_stream(hg, stream)
    metrics = RunMetrics()
    start = time.perf_counter_ns()
    matching = _first_fit(hg, stream)
    metrics.runtime_ns = time.perf_counter_ns() - start
    metrics.matching_weight = matching.weight
    metrics.cardinality = matching.cardinality
    return matching, metrics


def run_greedy(hg: Hypergraph) -> tuple[Matching, RunMetrics]:
    """First-fit over edges sorted by descending weight, ties by id.

    Sorting is part of the measured runtime.  The result is identical to
    ``run_naive(hg, order_stream(hg, StreamOrder.DESCENDING))``.
    """
    metrics = RunMetrics()
    start = time.perf_counter_ns()
    stream = order_stream(hg, StreamOrder.DESCENDING)
    matching = _first_fit(hg, stream)
    metrics.runtime_ns = time.perf_counter_ns() - start
    metrics.matching_weight = matching.weight
    metrics.cardinality = matching.cardinality
    return matching, metrics


def _first_fit(hg: Hypergraph, stream: list[int]) -> Matching:
    owner: list[Optional[int]] = [None] * hg.n
    chosen: list[int] = []
    for eid in stream:
        edge = hg.edges[eid]
        if all(owner[v] is None for v in edge.vertices):
            for v in edge.vertices:
                owner[v] = eid
            chosen.append(eid)
    return Matching.from_edge_ids(hg, chosen)
