from __future__ import annotations

import math
import random

import pytest

from hypermatch.core import (
    Hyperedge,
    Hypergraph,
    InvalidInput,
    Matching,
    RunMetrics,
    check_stream,
    matching_weight,
    validate_matching,
)


def test_hyperedge_normalizes_vertices() -> None:
    edge = Hyperedge(0, (3, 1, 3, 2), 2.0)
    assert edge.vertices == (1, 2, 3)
    assert edge.size == 3
    assert edge.weight == 2.0


def test_hyperedge_single_vertex_is_legal() -> None:
    edge = Hyperedge(5, (7,), 1.0)
    assert edge.size == 1


@pytest.mark.parametrize(
    "vertices,weight",
    [
        ((), 1.0),
        ((0,), 0.0),
        ((0,), -2.0),
        ((0,), math.inf),
        ((0,), math.nan),
        ((-1, 2), 1.0),
    ],
)
def test_hyperedge_rejects_bad_values(vertices, weight) -> None:
    with pytest.raises(InvalidInput):
        Hyperedge(0, vertices, weight)


def test_hyperedge_rejects_negative_id() -> None:
    with pytest.raises(InvalidInput):
        Hyperedge(-1, (0,), 1.0)


def test_hypergraph_derived_fields() -> None:
    hg = Hypergraph.build(4, [((0, 1), 1.0), ((1, 2, 3), 2.0)])
    assert hg.m == 2
    assert hg.d == 3
    assert hg.total_pins == 5
    assert [e.id for e in hg.edges] == [0, 1]


def test_hypergraph_empty() -> None:
    hg = Hypergraph(3, ())
    assert hg.m == 0
    assert hg.d == 0
    assert hg.total_pins == 0


def test_hypergraph_rejects_vertex_out_of_range() -> None:
    with pytest.raises(InvalidInput):
        Hypergraph.build(2, [((0, 2), 1.0)])


def test_hypergraph_rejects_id_position_mismatch() -> None:
    with pytest.raises(InvalidInput):
        Hypergraph(3, (Hyperedge(1, (0, 1), 1.0),))


def test_hypergraph_rejects_negative_n() -> None:
    with pytest.raises(InvalidInput):
        Hypergraph(-1, ())


def test_with_weights_replaces_weights() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 2.0)])
    hg2 = hg.with_weights([5.0, 7.0])
    assert [e.weight for e in hg2.edges] == [5.0, 7.0]
    assert [e.vertices for e in hg2.edges] == [(0, 1), (1, 2)]
    with pytest.raises(InvalidInput):
        hg.with_weights([1.0])


def test_matching_from_edge_ids() -> None:
    hg = Hypergraph.build(4, [((0, 1), 3.0), ((2, 3), 3.0), ((1, 2), 5.0)])
    m = Matching.from_edge_ids(hg, [0, 1])
    assert m.edge_ids == frozenset({0, 1})
    assert m.owner == (0, 0, 1, 1)
    assert m.weight == 6.0
    assert m.cardinality == 2


def test_matching_from_edge_ids_rejects_conflicts() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 1.0)])
    with pytest.raises(InvalidInput):
        Matching.from_edge_ids(hg, [0, 1])
    with pytest.raises(InvalidInput):
        Matching.from_edge_ids(hg, [2])


def test_validate_matching_accepts_consistent() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 3.0)])
    m = Matching.from_edge_ids(hg, [1])
    assert validate_matching(hg, m)


def test_validate_matching_rejects_overlap() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 3.0)])
    broken = Matching(frozenset({0, 1}), (0, 0, 1), 4.0)
    assert not validate_matching(hg, broken)


def test_validate_matching_rejects_stale_weight_cache() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 3.0)])
    stale = Matching(frozenset({1}), (None, 1, 1), 4.0)
    assert not validate_matching(hg, stale)


def test_validate_matching_rejects_wrong_owner_map() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0), ((1, 2), 3.0)])
    wrong = Matching(frozenset({1}), (1, 1, None), 3.0)
    assert not validate_matching(hg, wrong)


def test_validate_matching_unknown_id_raises() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1.0)])
    with pytest.raises(InvalidInput):
        validate_matching(hg, Matching(frozenset({9}), (None, None, None), 1.0))


def test_validate_matching_weight_tolerance_is_relative() -> None:
    hg = Hypergraph.build(3, [((0, 1), 1e9), ((1, 2), 3.0)])
    m = Matching.from_edge_ids(hg, [0])
    nudged = Matching(m.edge_ids, m.owner, m.weight * (1 + 1e-13))
    assert validate_matching(hg, nudged)


def test_matching_weight_examples() -> None:
    hg = Hypergraph.build(4, [((0, 1), 3.0), ((2, 3), 3.0), ((1, 2), 5.0)])
    assert matching_weight(hg, [0, 1]) == 6.0
    assert matching_weight(hg, []) == 0.0
    with pytest.raises(InvalidInput):
        matching_weight(hg, [3])


def test_matching_weight_permutation_invariant() -> None:
    rng = random.Random(7)
    hg = Hypergraph.build(
        20, [((i % 20, (i * 3 + 1) % 20), rng.uniform(0.1, 9)) for i in range(15)]
    )
    ids = [1, 4, 7, 9, 13]
    base = matching_weight(hg, ids)
    for _ in range(20):
        shuffled = ids[:]
        rng.shuffle(shuffled)
        assert matching_weight(hg, shuffled) == base


def test_check_stream() -> None:
    hg = Hypergraph.build(3, [((0,), 1.0), ((1,), 1.0), ((2,), 1.0)])
    check_stream(hg, [2, 0, 1])
    with pytest.raises(InvalidInput):
        check_stream(hg, [0, 1])
    with pytest.raises(InvalidInput):
        check_stream(hg, [0, 1, 1])
    with pytest.raises(InvalidInput):
        check_stream(hg, [0, 1, 3])


def test_run_metrics_defaults() -> None:
    metrics = RunMetrics()
    assert metrics.matching_weight == 0.0
    assert metrics.cardinality == 0
    assert metrics.pushes == 0
    assert metrics.runtime_ns == 0
