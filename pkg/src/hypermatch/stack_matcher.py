"""One-pass stack matcher with per-vertex dual potentials.

Every vertex carries a potential, initially zero.  An arriving edge is
admitted when its weight is at least ``(1 + epsilon)`` times the current
potential sum over its vertices; admitted edges are pushed on a stack and
raise the potentials of their vertices.  After the stream ends the stack is
unwound last-in-first-out, taking each popped edge whose vertices are all
still free.

Two update rules are supported.  GUARANTEE adds the full surplus
``W(e) - sum`` to every endpoint, which makes the scaled potentials a
certificate: ``(1 + epsilon) * total potential`` bounds the weight of every
matching, so the result is within ``1 / (d * (1 + epsilon))`` of optimal
for instances of maximum edge size d.  LENIENT spreads the surplus evenly
across the endpoints (``(W(e) - sum) / |e|``), admitting more edges at the
price of that certificate.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from .core import Hyperedge, Hypergraph, InvalidInput, Matching, RunMetrics, check_stream


class UpdateRule(enum.Enum):
    GUARANTEE = "guarantee"
    LENIENT = "lenient"


@dataclass
class DualState:
    """Per-vertex potentials plus the admission slack epsilon."""

    potentials: list[float]
    epsilon: float

    @classmethod
    def zeros(cls, n: int, epsilon: float) -> "DualState":
        if epsilon < 0:
            raise InvalidInput(f"epsilon must be non-negative, got {epsilon}")
        return cls([0.0] * n, epsilon)


class CandidateStack:
    """LIFO of admitted edges with high-water marks for edges and pins."""

    def __init__(self) -> None:
        self._entries: list[Hyperedge] = []
        self._pins = 0
        self.peak_edges = 0
        self.peak_pins = 0

    def __len__(self) -> int:
        return len(self._entries)

    def push(self, edge: Hyperedge) -> None:
        self._entries.append(edge)
        self._pins += edge.size
        if len(self._entries) > self.peak_edges:
            self.peak_edges = len(self._entries)
        if self._pins > self.peak_pins:
            self.peak_pins = self._pins

    def pop(self) -> Hyperedge:
        edge = self._entries.pop()
        self._pins -= edge.size
        return edge


def edge_dual_sum(dual: DualState, edge: Hyperedge) -> float:
    """Sum of the potentials of the edge's vertices.

    Always accumulated left to right over the sorted vertex tuple, so the
    floating-point result is reproducible.
    """
    total = 0.0
    for v in edge.vertices:
        total += dual.potentials[v]
    return total


def admit(dual: DualState, edge: Hyperedge) -> bool:
    """Whether the edge clears the admission threshold; equality admits."""
    return edge.weight >= (1.0 + dual.epsilon) * edge_dual_sum(dual, edge)


def apply_update(dual: DualState, edge: Hyperedge, rule: UpdateRule) -> None:
    """Raise the potentials of the edge's vertices for an admitted edge.

    The covered sum is recomputed here with the same summation order as
    :func:`admit`, so both see bit-identical values.  GUARANTEE adds the
    full surplus to every endpoint; LENIENT divides it by the edge size.
    Admitted edges have non-negative surplus, so potentials never decrease.
    """
    surplus = edge.weight - edge_dual_sum(dual, edge)
    if rule is UpdateRule.LENIENT:
        surplus /= edge.size
    for v in edge.vertices:
        dual.potentials[v] += surplus


def run_stack_stream(
    hg: Hypergraph,
    stream: list[int],
    epsilon: float,
    rule: UpdateRule = UpdateRule.GUARANTEE,
) -> tuple[Matching, DualState, RunMetrics]:
    """Run the stack matcher over ``stream`` and unwind to a matching.

    ``stream`` must be a permutation of the edge ids.  Returns the matching,
    the final dual state, and the run counters (pushes, pops, stack peaks,
    the maximum number of pushes touching any one vertex, and runtime).
    """
    check_stream(hg, stream)
    dual = DualState.zeros(hg.n, epsilon)
    stack = CandidateStack()
    pushes_per_vertex = [0] * hg.n
    metrics = RunMetrics()

    start = time.perf_counter_ns()
    for eid in stream:
        edge = hg.edges[eid]
        if not admit(dual, edge):
            continue
        stack.push(edge)
        apply_update(dual, edge, rule)
        metrics.pushes += 1
        for v in edge.vertices:
            pushes_per_vertex[v] += 1

    owner: list[int | None] = [None] * hg.n
    chosen: list[int] = []
    while len(stack):
        edge = stack.pop()
        metrics.pops += 1
        if all(owner[v] is None for v in edge.vertices):
            for v in edge.vertices:
                owner[v] = edge.id
            chosen.append(edge.id)
    metrics.runtime_ns = time.perf_counter_ns() - start

    matching = Matching.from_edge_ids(hg, chosen)
    metrics.matching_weight = matching.weight
    metrics.cardinality = matching.cardinality
    metrics.peak_stack_edges = stack.peak_edges
    metrics.peak_stack_pins = stack.peak_pins
    metrics.vertex_push_max = max(pushes_per_vertex, default=0)
    return matching, dual, metrics


def dual_feasible(hg: Hypergraph, dual: DualState) -> bool:
    """Whether the scaled potentials cover every edge's weight.

    Checks ``(1 + epsilon) * edge_dual_sum(e) >= W(e)`` for every edge,
    with a relative slack of ``1e-9 * W(e)`` for floating-point noise.
    A run with the GUARANTEE rule always ends in a feasible state.
    """
    scale = 1.0 + dual.epsilon
    for edge in hg.edges:
        if scale * edge_dual_sum(dual, edge) < edge.weight - 1e-9 * edge.weight:
            return False
    return True


def dual_upper_bound(dual: DualState) -> float:
    """``(1 + epsilon)`` times the total potential.

    When :func:`dual_feasible` holds, no matching of the instance weighs
    more than this value.
    """
    total = 0.0
    for p in dual.potentials:
        total += p
    return (1.0 + dual.epsilon) * total
