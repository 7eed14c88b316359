from __future__ import annotations

import dataclasses

import pytest

from hypermatch.core import Hypergraph, InvalidInput, validate_matching
from hypermatch.ingest import StreamOrder, order_stream
from hypermatch.oracle import exact_max_weight_matching
from hypermatch.stack_matcher import (
    CandidateStack,
    DualState,
    UpdateRule,
    admit,
    apply_update,
    dual_feasible,
    dual_upper_bound,
    edge_dual_sum,
    run_stack_stream,
)

from conftest import random_instances


def two_edge_path() -> Hypergraph:
    return Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 3.0)])


def test_edge_dual_sum() -> None:
    hg = two_edge_path()
    dual = DualState.zeros(3, 0.0)
    assert edge_dual_sum(dual, hg.edges[0]) == 0.0
    dual.potentials = [0.5, 0.5, 0.0]
    assert edge_dual_sum(dual, hg.edges[0]) == 1.0


def test_admit_equality_admits() -> None:
    hg = two_edge_path()
    dual = DualState.zeros(3, 0.0)
    dual.potentials = [0.5, 0.5, 0.0]
    assert admit(dual, hg.edges[0])  # 1.0 >= 1.0


def test_admit_epsilon_scales_threshold() -> None:
    hg = Hypergraph.build(2, [((0, 1), 1.0), ((0, 1), 1.1)])
    dual = DualState.zeros(2, 0.1)
    dual.potentials = [0.5, 0.5]
    assert not admit(dual, hg.edges[0])  # 1.0 < 1.1 * 1.0
    assert admit(dual, hg.edges[1])  # 1.1 >= 1.1


def test_apply_update_guarantee_adds_full_surplus() -> None:
    hg = two_edge_path()
    dual = DualState.zeros(3, 0.0)
    apply_update(dual, hg.edges[0], UpdateRule.GUARANTEE)
    assert dual.potentials == [1.0, 1.0, 0.0]


def test_apply_update_lenient_divides_by_size() -> None:
    hg = two_edge_path()
    dual = DualState.zeros(3, 0.0)
    apply_update(dual, hg.edges[0], UpdateRule.LENIENT)
    assert dual.potentials == [0.5, 0.5, 0.0]


def test_apply_update_zero_surplus_is_noop() -> None:
    hg = two_edge_path()
    dual = DualState.zeros(3, 0.0)
    dual.potentials = [0.5, 0.5, 0.0]
    apply_update(dual, hg.edges[0], UpdateRule.GUARANTEE)
    assert dual.potentials == [0.5, 0.5, 0.0]


def test_run_trace_two_edge_path() -> None:
    hg = two_edge_path()
    matching, dual, metrics = run_stack_stream(hg, [0, 1], 0.0, UpdateRule.GUARANTEE)
    assert dual.potentials == [1.0, 3.0, 2.0]
    assert matching.edge_ids == frozenset({1})
    assert matching.weight == 3.0
    assert metrics.matching_weight == 3.0
    assert metrics.cardinality == 1
    assert metrics.pushes == 2
    assert metrics.pops == 2
    assert metrics.peak_stack_edges == 2
    assert metrics.peak_stack_pins == 4
    assert metrics.vertex_push_max == 2
    assert dual_upper_bound(dual) == 6.0
    assert dual_feasible(hg, dual)


def test_run_trace_unwind_takes_disjoint_pair() -> None:
    hg = Hypergraph.build(4, [((1, 2), 2.0), ((0, 1), 5.0), ((2, 3), 5.0)])
    matching, dual, metrics = run_stack_stream(hg, [0, 1, 2], 0.0, UpdateRule.GUARANTEE)
    assert dual.potentials == [3.0, 5.0, 5.0, 3.0]
    assert matching.edge_ids == frozenset({1, 2})
    assert matching.weight == 10.0
    assert metrics.pushes == 3
    assert metrics.vertex_push_max == 2


def test_run_epsilon_blocks_marginal_improvements() -> None:
    hg = two_edge_path()
    # with epsilon=3 the second edge needs weight >= 4 * 1 and is skipped
    matching, _, metrics = run_stack_stream(hg, [0, 1], 3.0, UpdateRule.GUARANTEE)
    assert matching.edge_ids == frozenset({0})
    assert metrics.pushes == 1


def test_run_empty_hypergraph() -> None:
    hg = Hypergraph(4, ())
    matching, dual, metrics = run_stack_stream(hg, [], 0.5, UpdateRule.GUARANTEE)
    assert matching.edge_ids == frozenset()
    assert matching.weight == 0.0
    assert dual.potentials == [0.0] * 4
    assert metrics.pushes == 0
    assert metrics.vertex_push_max == 0
    assert dual_upper_bound(dual) == 0.0
    assert dual_feasible(hg, dual)


def test_run_rejects_bad_stream() -> None:
    hg = two_edge_path()
    with pytest.raises(InvalidInput):
        run_stack_stream(hg, [0], 0.0)
    with pytest.raises(InvalidInput):
        run_stack_stream(hg, [0, 0], 0.0)


def test_negative_epsilon_rejected() -> None:
    hg = two_edge_path()
    with pytest.raises(InvalidInput):
        run_stack_stream(hg, [0, 1], -0.1)


def test_lenient_admits_more_than_guarantee() -> None:
    hg = Hypergraph.build(3, [((0, 1), 2.0), ((1, 2), 2.1)])
    _, _, strict = run_stack_stream(hg, [0, 1], 0.1, UpdateRule.GUARANTEE)
    _, _, lenient = run_stack_stream(hg, [0, 1], 0.1, UpdateRule.LENIENT)
    assert strict.pushes == 1  # 2.1 < 1.1 * 2.0 after the full update
    assert lenient.pushes == 2  # 2.1 >= 1.1 * 1.0 after the halved update


def test_dual_feasible_counterexample() -> None:
    hg = two_edge_path()
    assert not dual_feasible(hg, DualState.zeros(3, 0.0))


def test_dual_upper_bound_scales_with_epsilon() -> None:
    dual = DualState([1.0, 3.0, 2.0], 1.0)
    assert dual_upper_bound(dual) == 12.0


def test_candidate_stack_tracks_peaks() -> None:
    hg = Hypergraph.build(5, [((0, 1, 2), 1.0), ((3, 4), 1.0)])
    stack = CandidateStack()
    stack.push(hg.edges[0])
    stack.push(hg.edges[1])
    assert len(stack) == 2
    assert stack.pop() is hg.edges[1]
    assert stack.pop() is hg.edges[0]
    assert len(stack) == 0
    assert stack.peak_edges == 2
    assert stack.peak_pins == 5


def test_stream_phase_only_grows_the_stack() -> None:
    for hg in random_instances(40, meta_seed=201):
        _, _, metrics = run_stack_stream(
            hg, order_stream(hg, StreamOrder.ORIGINAL), 0.3, UpdateRule.GUARANTEE
        )
        assert metrics.peak_stack_edges == metrics.pushes
        assert metrics.pops == metrics.pushes
        if metrics.peak_stack_edges > 0:
            assert metrics.peak_stack_pins >= metrics.peak_stack_edges
        assert metrics.vertex_push_max <= metrics.pushes


def test_outputs_are_valid_matchings() -> None:
    for hg in random_instances(100, meta_seed=202):
        for rule in UpdateRule:
            for epsilon in (0.0, 0.3, 1.0):
                stream = order_stream(hg, StreamOrder.RANDOM, seed=11)
                matching, _, _ = run_stack_stream(hg, stream, epsilon, rule)
                assert validate_matching(hg, matching)


def test_guarantee_rule_duals_are_always_feasible() -> None:
    for hg in random_instances(150, meta_seed=203):
        for epsilon in (0.0, 0.1, 1.0):
            stream = order_stream(hg, StreamOrder.RANDOM, seed=13)
            _, dual, _ = run_stack_stream(hg, stream, epsilon, UpdateRule.GUARANTEE)
            assert dual_feasible(hg, dual)


def test_dual_bound_dominates_exact_optimum() -> None:
    for hg in random_instances(80, meta_seed=204):
        opt = exact_max_weight_matching(hg).weight
        for epsilon in (0.0, 1.0):
            _, dual, _ = run_stack_stream(
                hg, order_stream(hg, StreamOrder.ORIGINAL), epsilon, UpdateRule.GUARANTEE
            )
            assert opt <= dual_upper_bound(dual) + 1e-9 * opt


def test_potentials_never_decrease() -> None:
    # step through the stream by hand, snapshotting potentials at each edge
    for hg in random_instances(40, meta_seed=205):
        for rule in UpdateRule:
            dual = DualState.zeros(hg.n, 0.2)
            for edge in hg.edges:
                before = dual.potentials[:]
                if admit(dual, edge):
                    apply_update(dual, edge, rule)
                    for old, new in zip(before, dual.potentials):
                        assert new >= old


def test_runs_are_deterministic() -> None:
    for hg in random_instances(30, meta_seed=206):
        stream = order_stream(hg, StreamOrder.RANDOM, seed=17)
        results = [
            run_stack_stream(hg, stream, 0.1, UpdateRule.LENIENT) for _ in range(3)
        ]
        for matching, dual, metrics in results[1:]:
            assert matching == results[0][0]
            assert dual.potentials == results[0][1].potentials
            assert dataclasses.replace(metrics, runtime_ns=0) == dataclasses.replace(
                results[0][2], runtime_ns=0
            )
