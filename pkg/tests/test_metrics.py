"""Network property formulas against closed forms and brute-force oracles."""

import json
import math
import random

import pytest

import oracles
from builders import (
    barbell_edges,
    complete_edges,
    make_graph,
    path_edges,
    petersen_edges,
    star_edges,
    two_triangle_edges,
)
from convograph.errors import UndefinedMetricError
from convograph.metrics import (
    REPORT_FIELDS,
    MetricsReport,
    average_degree,
    average_path_length,
    compute_all,
    connected_components,
    density,
    diameter,
    reachability,
    shortest_path_lengths,
)


def test_path_graph_closed_forms():
    g = make_graph(4, path_edges(4))
    assert density(g) == pytest.approx(0.5)
    assert diameter(g) == 3
    assert average_path_length(g) == pytest.approx(5 / 3)
    assert average_degree(g) == pytest.approx(1.5)
    assert reachability(g) == pytest.approx(0.75)
    assert connected_components(g)[0] == 1


def test_clique_closed_forms():
    g = make_graph(4, complete_edges(4))
    assert density(g) == pytest.approx(1.0)
    assert diameter(g) == 1
    assert average_path_length(g) == pytest.approx(1.0)
    assert average_degree(g) == pytest.approx(3.0)


def test_star_closed_forms():
    g = make_graph(5, star_edges(5))
    assert density(g) == pytest.approx(0.4)
    assert diameter(g) == 2
    assert average_path_length(g) == pytest.approx(1.6)
    assert average_degree(g) == pytest.approx(1.6)


def test_two_triangles_closed_forms():
    g = make_graph(6, two_triangle_edges())
    assert connected_components(g) == (2, [0, 0, 0, 1, 1, 1])
    # diameter is the largest finite distance, unreachable pairs excluded
    assert diameter(g) == 1
    assert average_path_length(g) == pytest.approx(1.0)
    assert reachability(g) == pytest.approx(6 / 18)


def test_petersen_closed_forms():
    g = make_graph(10, petersen_edges())
    assert diameter(g) == 2
    assert average_path_length(g) == pytest.approx(5 / 3)
    assert average_degree(g) == pytest.approx(3.0)
    assert reachability(g) == pytest.approx(0.9)


def test_barbell_closed_forms():
    g = make_graph(8, barbell_edges())
    assert diameter(g) == 3
    assert average_path_length(g) == pytest.approx(13 / 7)


def test_connected_reachability_identity():
    # every connected graph sits exactly at (n-1)/n
    for n, edges in ((4, path_edges(4)), (7, star_edges(7)), (10, petersen_edges())):
        g = make_graph(n, edges)
        assert reachability(g) == pytest.approx((n - 1) / n)


def test_component_labels_follow_lowest_member():
    g = make_graph(5, [(1, 3)])
    count, labels = connected_components(g)
    assert count == 4
    assert labels == [0, 1, 2, 1, 3]


def test_shortest_path_lengths_vector():
    g = make_graph(4, path_edges(4))
    assert shortest_path_lengths(g, 0).tolist() == [0, 1, 2, 3]
    g2 = make_graph(6, two_triangle_edges())
    assert shortest_path_lengths(g2, 0).tolist() == [0, 1, 1, -1, -1, -1]
    with pytest.raises(IndexError):
        shortest_path_lengths(g, 9)


def test_undefined_metrics_raise():
    solo = make_graph(1, [])
    with pytest.raises(UndefinedMetricError):
        density(solo)
    with pytest.raises(UndefinedMetricError):
        diameter(solo)
    with pytest.raises(UndefinedMetricError):
        average_path_length(make_graph(3, []))
    with pytest.raises(UndefinedMetricError):
        connected_components(make_graph(0, []))


def test_report_fields_and_soft_none():
    g = make_graph(1, [])
    report = compute_all(g)
    data = report.to_dict()
    assert list(data) == list(REPORT_FIELDS)
    assert data["size"] == 1
    assert data["density"] is None
    assert data["diameter"] is None
    assert data["reachability"] == 0.0
    assert data["connected_components"] == 1


def test_empty_graph_report_is_all_none():
    report = compute_all(make_graph(0, []))
    data = report.to_dict()
    assert data["size"] == 0
    assert all(data[k] is None for k in REPORT_FIELDS if k not in ("size", "edges"))


def test_report_text_uses_na_for_undefined():
    text = compute_all(make_graph(1, [])).to_text()
    assert "density: n/a" in text
    assert "diameter: n/a" in text
    assert text.splitlines()[0] == "size: 1"


def test_report_json_roundtrip():
    g = make_graph(10, petersen_edges())
    report = compute_all(g)
    clone = MetricsReport.from_json(report.to_json())
    assert clone.to_dict() == report.to_dict()
    payload = json.loads(report.to_json())
    assert list(payload) == list(REPORT_FIELDS)


def test_sampled_estimates_are_flagged():
    g = make_graph(10, path_edges(10))
    report = compute_all(g, exact_node_limit=5, sample_sources=4, seed=1)
    assert report.estimated
    text = report.to_text()
    assert "(estimate)" in text
    exact = compute_all(g)
    assert not exact.estimated
    # a sampled sweep can only underestimate the diameter
    assert report.to_dict()["diameter"] <= exact.to_dict()["diameter"]


def test_sampling_is_seed_deterministic():
    g = make_graph(30, path_edges(30))
    a = compute_all(g, exact_node_limit=10, sample_sources=8, seed=3)
    b = compute_all(g, exact_node_limit=10, sample_sources=8, seed=3)
    assert a.to_dict() == b.to_dict()


def test_worker_count_does_not_change_results():
    g = make_graph(10, petersen_edges())
    assert diameter(g, workers=1) == diameter(g, workers=3)
    assert average_path_length(g, workers=1) == average_path_length(g, workers=3)


def test_random_graphs_match_oracles():
    rng = random.Random(2024)
    for _ in range(60):
        n, edges = oracles.random_graph(rng, 7)
        g = make_graph(n, edges)
        dist = oracles.floyd_warshall(n, edges)
        labels = oracles.component_labels(n, edges)

        count, got_labels = connected_components(g)
        assert got_labels == labels
        assert count == len(set(labels))
        assert reachability(g) == pytest.approx(oracles.reachability_of(n, labels), abs=1e-9)
        if edges:
            assert diameter(g) == oracles.diameter_of(dist)
            expected_apl = oracles.average_path_length_of(dist)
            assert average_path_length(g) == pytest.approx(expected_apl, abs=1e-9)
        if n >= 2:
            assert density(g) == pytest.approx(2 * len(edges) / (n * (n - 1)), abs=1e-12)
        assert average_degree(g) == pytest.approx(2 * len(edges) / n, abs=1e-12)


def test_density_montonic_in_edges():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(3, 9)
        full = [(i, j) for i in range(n) for j in range(i + 1, n)]
        rng.shuffle(full)
        cut = rng.randint(1, len(full) - 1)
        sparse = make_graph(n, full[:cut])
        dense = make_graph(n, full)
        assert density(sparse) < density(dense) or math.isclose(density(sparse), density(dense))
        assert density(dense) == pytest.approx(1.0)
