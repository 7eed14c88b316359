"""One-pass matcher that keeps a matching live and swaps on improvement.

Each vertex holds a reference to the matched edge covering it (or none).
An arriving edge collects the distinct matched edges it touches; it takes
their place exactly when its weight is at least ``(1 + alpha)`` times
their combined weight.  Memory is one edge reference per vertex, so the
live state never exceeds the vertex count regardless of stream length.

For ``alpha > 0`` the final matching is within ``swapset_ratio(alpha, d)``
of optimal on instances of maximum edge size ``d``; :func:`optimal_alpha`
gives the ratio-maximising choice.  With ``alpha = 0`` equal-weight swaps
fire and no ratio is guaranteed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

from .core import Hyperedge, Hypergraph, InvalidInput, Matching, RunMetrics, check_stream


@dataclass
class SwapState:
    """Per-vertex reference to the covering matched edge, plus alpha."""

    hg: Hypergraph
    best: list[Optional[int]]
    alpha: float

    @classmethod
    def empty(cls, hg: Hypergraph, alpha: float) -> "SwapState":
        if alpha < 0:
            raise InvalidInput(f"alpha must be non-negative, got {alpha}")
        return cls(hg, [None] * hg.n, alpha)

    def matched_ids(self) -> list[int]:
        """Distinct ids of the currently matched edges, ascending."""
        return sorted({eid for eid in self.best if eid is not None})


def conflict_set(state: SwapState, edge: Hyperedge) -> list[int]:
    """Ids of the distinct matched edges sharing a vertex with ``edge``.

    Deduplicated and sorted ascending, so the caller's iteration order and
    any weight accumulation over the set are deterministic.
    """
    return sorted(
        {state.best[v] for v in edge.vertices if state.best[v] is not None}
    )


def try_swap(state: SwapState, edge: Hyperedge) -> bool:
    """Swap ``edge`` in if it outweighs its conflicts by ``1 + alpha``.

    Fires when ``W(e) >= (1 + alpha) * W(conflicts)``, so an edge touching
    only free vertices always enters.  On a swap the conflicting edges are
    cleared in ascending id order before the new edge claims its vertices.
    Returns whether the swap fired.
    """
    conflicts = conflict_set(state, edge)
    conflict_weight = 0.0
    for eid in conflicts:
        conflict_weight += state.hg.edges[eid].weight
    if edge.weight < (1.0 + state.alpha) * conflict_weight:
        return False
    for eid in conflicts:
        for v in state.hg.edges[eid].vertices:
            state.best[v] = None
    for v in edge.vertices:
        state.best[v] = edge.id
    return True


def run_swapset(
    hg: Hypergraph, stream: list[int], alpha: float
) -> tuple[Matching, RunMetrics]:
    """Run the swap matcher over ``stream``.

    ``stream`` must be a permutation of the edge ids and ``alpha``
    non-negative.  ``metrics.swaps`` counts evicted edges.
    """
    check_stream(hg, stream)
    state = SwapState.empty(hg, alpha)
    metrics = RunMetrics()

    start = time.perf_counter_ns()
    for eid in stream:
        edge = hg.edges[eid]
        conflicts = conflict_set(state, edge)
        if try_swap(state, edge):
            metrics.swaps += len(conflicts)
    matched = state.matched_ids()
    metrics.runtime_ns = time.perf_counter_ns() - start

    matching = Matching.from_edge_ids(hg, matched)
    metrics.matching_weight = matching.weight
    metrics.cardinality = matching.cardinality
    return matching, metrics


def optimal_alpha(d: int) -> float:
    """The swap threshold that maximises the guarantee for edge size d.

    Equals ``sqrt((d - 1) / d)``; degenerates to 0 at ``d = 1``, where any
    threshold already keeps the heaviest edge per vertex.
    """
    if d < 1:
        raise InvalidInput(f"edge size must be at least 1, got {d}")
    return math.sqrt((d - 1) / d)


def swapset_ratio(alpha: float, d: int) -> float:
    """Worst-case fraction of the optimum the swap matcher retains.

    ``1 / ((1 + alpha) * ((d - 1) / alpha + d))`` for edges of size at most
    ``d``.  Requires ``alpha > 0``: at zero the swap rule admits equal
    trades and the ratio collapses.  At the :func:`optimal_alpha` threshold
    this simplifies to ``1 / ((2d - 1) + 2 * sqrt(d * (d - 1)))``.
    """
    if alpha <= 0:
        raise InvalidInput(f"alpha must be positive, got {alpha}")
    if d < 1:
        raise InvalidInput(f"edge size must be at least 1, got {d}")
    return 1.0 / ((1.0 + alpha) * ((d - 1) / alpha + d))
