"""Acceptance gate: nine go/no-go checks, one test per criterion.

Run with -v to get one pass/fail line per criterion. Tolerances and
time budgets are asserted inside each test, so a pass line certifies
both correctness and runtime.
"""

import json
import math
import random
import subprocess
import sys
import time

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
from convograph import cli
from convograph.classify import TOY_CORPUS, predict, train
from convograph.community import Partition, detect_communities, modularity
from convograph.evaluate import (
    ConfusionMatrix,
    evaluate,
    format_percentages,
    sentiment_percentages,
)
from convograph.graph import Graph
from convograph.metrics import (
    average_degree,
    average_path_length,
    connected_components,
    density,
    diameter,
    reachability,
)
from convograph.textprep import load_pipeline_config

# (nodes, edges, printed average degree, printed density) for four
# observed conversation networks used as reproduction anchors
NETWORK_ANCHORS = (
    (3478, 3160, 1.817, 0.00049),
    (6495, 5749, 1.770, 0.00025),
    (5682, 5711, 2.010, 0.00033),
    (4531, 4772, 2.106, 0.00044),
)

# (positive count, negative count, printed percentage pair)
SENTIMENT_ANCHORS = (
    (509, 905, "36.00", "64.00"),
    (720, 801, "47.37", "52.63"),
    (818, 702, "53.82", "46.18"),
    (1119, 423, "72.57", "27.43"),
)

NAMED_FIXTURES = (
    (4, path_edges(4)),
    (7, path_edges(7)),
    (4, complete_edges(4)),
    (6, complete_edges(6)),
    (5, star_edges(5)),
    (9, star_edges(9)),
    (6, two_triangle_edges()),
    (10, petersen_edges()),
    (8, barbell_edges()),
)


def anchored_graph(n, l):
    """Simple graph with exactly n nodes and l edges."""
    handles = [f"u{i}" for i in range(n)]
    edges = [(handles[i], handles[i + 1]) for i in range(min(l, n - 1))]
    extra = l - len(edges)
    assert extra <= n - 2
    edges += [(handles[i], handles[i + 2]) for i in range(extra)]
    return Graph.from_edges(handles, edges)


def test_criterion_01_average_degree_reproduction():
    graphs = [(anchored_graph(n, l), printed) for n, l, printed, _ in NETWORK_ANCHORS]
    start = time.perf_counter()
    results = [(round(average_degree(g), 3), printed) for g, printed in graphs]
    elapsed = time.perf_counter() - start
    for got, printed in results:
        assert got == printed
    assert elapsed < 0.001


def test_criterion_02_density_plausibility():
    for n, l, _, printed in NETWORK_ANCHORS:
        got = density(anchored_graph(n, l))
        assert abs(got - printed) <= 0.10 * printed, (
            f"density for ({n}, {l}) is {got:.6g}, outside 10% of {printed}"
        )


def test_criterion_03_sentiment_percentage_reproduction():
    failures = []
    for pos, neg, want_pos, want_neg in SENTIMENT_ANCHORS:
        got = format_percentages(sentiment_percentages(pos, neg)[0])
        if got != (want_pos, want_neg):
            failures.append(f"{pos}/{neg}: got {got[0]}/{got[1]}, printed {want_pos}/{want_neg}")
    assert not failures, "; ".join(failures)


def test_criterion_04_metrics_against_oracles():
    start = time.perf_counter()
    rng = random.Random(1404)
    cases = list(NAMED_FIXTURES) + [oracles.random_graph(rng, 7) for _ in range(500)]
    for n, edges in cases:
        g = make_graph(n, edges)
        dist = oracles.floyd_warshall(n, edges)
        labels = oracles.component_labels(n, edges)
        count, got_labels = connected_components(g)
        assert got_labels == labels
        assert count == len(set(labels))
        assert abs(reachability(g) - oracles.reachability_of(n, labels)) <= 1e-9
        if edges:
            assert diameter(g) == oracles.diameter_of(dist)
            assert abs(average_path_length(g) - oracles.average_path_length_of(dist)) <= 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0


def test_criterion_05_modularity_against_exhaustive_search():
    start = time.perf_counter()
    rng = random.Random(1405)
    cases = [(n, edges) for n, edges in NAMED_FIXTURES]
    while len(cases) < len(NAMED_FIXTURES) + 100:
        n, edges = oracles.random_graph(rng, 8)
        if edges:
            cases.append((n, edges))

    optimal_hits = 0
    for n, edges in cases:
        g = make_graph(n, edges)
        labels = [rng.randrange(3) for _ in range(n)]
        direct = oracles.modularity_pairwise(n, edges, labels)
        assert abs(modularity(g, Partition.from_labels(labels)) - direct) <= 1e-12

        found = detect_communities(g, seed=7)
        q_found = modularity(g, found)
        q_single = modularity(g, Partition.singletons(n))
        assert q_found >= q_single - 1e-12
        q_best, _ = oracles.best_partition(n, edges)
        assert q_found <= q_best + 1e-9
        if q_found >= q_best - 1e-9:
            optimal_hits += 1

    assert optimal_hits >= 0.90 * len(cases), f"{optimal_hits}/{len(cases)} optimal"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0


def test_criterion_06_naive_bayes_hand_oracle():
    cfg = load_pipeline_config()
    model = train(TOY_CORPUS, cfg, alpha=1.0)
    pred = predict(model, "mudah", cfg)
    assert pred.label == "positive"
    posteriors = {c: math.exp(s) for c, s in pred.log_scores.items()}
    assert posteriors["positive"] == pytest.approx(2 / 9, abs=1e-12)
    assert posteriors["negative"] == pytest.approx(1 / 21, abs=1e-12)
    assert abs(pred.confidence - 0.8235) <= 1e-4

    rng = random.Random(1406)
    vocabulary = ["bagus", "mudah", "cepat", "gagal", "error", "asing", "lain"]
    for _ in range(5):
        text = " ".join(rng.choice(vocabulary) for _ in range(10_000))
        long_pred = predict(model, text, cfg)
        assert all(math.isfinite(s) for s in long_pred.log_scores.values())
        assert 0.0 <= long_pred.confidence <= 1.0


def test_criterion_07_kappa_hand_oracle():
    report = evaluate(ConfusionMatrix(tp=50, fn=10, fp=5, tn=35))
    assert abs(report.kappa - 0.6939) <= 1e-4

    perfect = evaluate(ConfusionMatrix(tp=12, fp=0, fn=0, tn=9))
    assert perfect.kappa == 1.0

    constant = evaluate(ConfusionMatrix(tp=40, fp=60, fn=0, tn=0))
    assert abs(constant.kappa) <= 1e-12

    rng = random.Random(1407)
    checked = 0
    while checked < 1000:
        tp, fp, fn, tn = (rng.randint(0, 50) for _ in range(4))
        if tp + fp + fn + tn == 0:
            continue
        base = evaluate(ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)).kappa
        swapped = evaluate(ConfusionMatrix(tp=tn, fp=fn, fn=fp, tn=tp)).kappa
        if base is None:
            assert swapped is None
        else:
            assert abs(base - swapped) <= 1e-12
        checked += 1


def test_criterion_08_compare_is_byte_deterministic(brand_workspace):
    command = [
        sys.executable,
        "-m",
        "convograph.cli",
        "compare",
        "--config",
        str(brand_workspace / "config.ini"),
        "--format",
        "json",
    ]
    start = time.perf_counter()
    first = subprocess.run(command, capture_output=True, check=True)
    second = subprocess.run(command, capture_output=True, check=True)
    elapsed = time.perf_counter() - start
    assert first.stdout == second.stdout
    assert len(first.stdout) > 100
    payload = json.loads(first.stdout)
    assert payload["brands"] == ["alfa", "beta", "gama", "delta"]
    assert elapsed < 30.0


def test_criterion_09_scale_check(tmp_path):
    rng = random.Random(1409)
    n = 10_000
    edges = set()
    while len(edges) < 15_000:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))

    records = tmp_path / "big.jsonl"
    with records.open("w", encoding="utf-8") as fp:
        for i in range(n):
            fp.write(json.dumps({"id": str(i), "author": f"u{i}", "text": "halo", "created_at": "t"}) + "\n")
        for k, (a, b) in enumerate(sorted(edges)):
            fp.write(
                json.dumps(
                    {"id": str(n + k), "author": f"u{a}", "text": f"cc @u{b}", "created_at": "t"}
                )
                + "\n"
            )

    out = tmp_path / "report.json"
    start = time.perf_counter()
    code = cli.main(
        ["graph", "metrics", str(records), "--format", "json", "--workers", "2", "--out", str(out)]
    )
    elapsed = time.perf_counter() - start
    assert code == 0
    assert elapsed < 60.0

    report = json.loads(out.read_text())
    assert report["size"] == n
    assert report["edges"] == 15_000
    assert report["diameter"] >= 1
    assert report["avg_path_length"] > 1.0
    assert report["connected_components"] >= 1
    assert report["modularity"] is not None
