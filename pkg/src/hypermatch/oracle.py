"""Exact maximum-weight matching for desk-scale instances.

The primary solver is a depth-first branch-and-bound over include/exclude
decisions.  Edges are visited in descending weight order (ties by id) with
the heavier include-branch explored first, so a strong incumbent appears
early; a subtree is pruned when the weight collected so far plus the total
weight remaining below it cannot beat the incumbent.  Among equal-weight
optima the solver returns the one whose sorted edge-id tuple is
lexicographically smallest, which keeps results reproducible.

A separate brute-force enumerator walks all 2^m edge subsets with the same
tie-break.  It exists to check the branch-and-bound, not to be fast.

Both solvers refuse instances beyond :class:`OracleLimits` by raising
:class:`TooLarge` — exact matching is NP-hard, so there is no graceful way
to handle large inputs here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Hypergraph, Matching


class TooLarge(RuntimeError):
    """Instance exceeds the oracle's configured limits."""


@dataclass(frozen=True)
class OracleLimits:
    """Hard caps for the exact solvers.

    ``max_edges`` bounds the search space up front; ``max_nodes_expanded``
    is a safety valve on the number of branch-and-bound nodes actually
    visited, for adversarial instances (e.g. all weights equal) where
    pruning is powerless.
    """

    max_edges: int = 24
    max_nodes_expanded: int = 1 << 25


def exact_max_weight_matching(hg: Hypergraph, limits: OracleLimits | None = None) -> Matching:
    """Maximum-weight matching by branch-and-bound.

    Raises TooLarge when the instance has more than ``limits.max_edges``
    edges or the search would visit more than ``limits.max_nodes_expanded``
    nodes.  Equal-weight optima are resolved toward the lexicographically
    smallest sorted edge-id tuple.
    """
    limits = limits or OracleLimits()
    if hg.m > limits.max_edges:
        raise TooLarge(f"{hg.m} edges exceeds the oracle cap of {limits.max_edges}")

    order = sorted(range(hg.m), key=lambda i: (-hg.edges[i].weight, i))
    vertex_masks = [_vertex_mask(hg, eid) for eid in order]
    weights = [hg.edges[eid].weight for eid in order]
    # suffix[i] = total weight of order[i:], the best any subtree below i can add
    suffix = [0.0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]

    best_weight = 0.0
    best_ids: tuple[int, ...] = ()
    expanded = 0
    chosen: list[int] = []

    def visit(i: int, used: int, current: float) -> None:
        nonlocal best_weight, best_ids, expanded
        expanded += 1
        if expanded > limits.max_nodes_expanded:
            raise TooLarge(
                f"search exceeded {limits.max_nodes_expanded} node expansions"
            )
        if i == len(order):
            ids = tuple(sorted(chosen))
            if current > best_weight or (current == best_weight and ids < best_ids):
                best_weight = current
                best_ids = ids
            return
        # Equal bound stays alive: a tie may still win on the id tie-break.
        if current + suffix[i] < best_weight:
            return
        if not used & vertex_masks[i]:
            chosen.append(order[i])
            visit(i + 1, used | vertex_masks[i], current + weights[i])
            chosen.pop()
        visit(i + 1, used, current)

    visit(0, 0, 0.0)
    return Matching.from_edge_ids(hg, best_ids)


def exhaustive_max_weight_matching(hg: Hypergraph, max_edges: int = 20) -> Matching:
    """Maximum-weight matching by enumerating every edge subset.

    Same tie-break as :func:`exact_max_weight_matching`.  O(2^m * m); the
    ``max_edges`` cap (TooLarge beyond it) keeps that honest.
    """
    if hg.m > max_edges:
        raise TooLarge(f"{hg.m} edges exceeds the enumeration cap of {max_edges}")
    masks = [_vertex_mask(hg, eid) for eid in range(hg.m)]

    best_weight = 0.0
    best_ids: tuple[int, ...] = ()
    for subset in range(1 << hg.m):
        used = 0
        weight = 0.0
        ok = True
        for eid in range(hg.m):
            if not subset >> eid & 1:
                continue
            if used & masks[eid]:
                ok = False
                break
            used |= masks[eid]
            weight += hg.edges[eid].weight
        if not ok:
            continue
        ids = tuple(eid for eid in range(hg.m) if subset >> eid & 1)
        if weight > best_weight or (weight == best_weight and ids < best_ids):
            best_weight = weight
            best_ids = ids
    return Matching.from_edge_ids(hg, best_ids)


def is_maximal(hg: Hypergraph, matching: Matching) -> bool:
    """Whether no unselected edge could be added without a conflict."""
    for edge in hg.edges:
        if edge.id in matching.edge_ids:
            continue
        if all(matching.owner[v] is None for v in edge.vertices):
            return False
    return True


def _vertex_mask(hg: Hypergraph, eid: int) -> int:
    mask = 0
    for v in hg.edges[eid].vertices:
        mask |= 1 << v
    return mask
