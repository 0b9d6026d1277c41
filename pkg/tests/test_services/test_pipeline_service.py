from builtins import float, int, len, list, max, min, range, sorted, str, tuple
from fractions import Fraction
from time import perf_counter

import numpy as np
import pytest

from app.models.graph_model import Clustering, WeightAssignment, build_graph
from app.services.clustering_service import ClusteringService
from app.services.cvwap_service import cvwap_value
from app.services.objective_service import normalized_modularity, objective
from app.services.oracle_service import exact_opt
from app.services.pipeline_service import (
    MERGE_EPSILON, Q0_RATIO, QLAMBDA_RATIO, closest_to_target, greedy_agglomerative, nmod_guarantee, run_q0_stages,
    solve_best_of, solve_q0, solve_qlambda, sweep_lambda, tune_lambda_for_ncut,
)
from app.utils.edge_list import parse_edge_list, write_edge_list
from app.utils.errors import InvalidTrialsError, LambdaOutOfRangeError
from app.utils.rng import make_rng, trial_rng


# --- Single-shot pipeline ---
def test_edgeless_graph_gives_singletons(edgeless):
    clustering = solve_qlambda(edgeless, WeightAssignment.unit(3), 0.5, make_rng(0))
    assert clustering == Clustering.singletons(3)


def test_lambda_one_never_below_singletons(triangle):
    w = WeightAssignment.degree(triangle)
    for seed in range(20):
        clustering = solve_qlambda(triangle, w, 1.0, make_rng(seed))
        assert objective(triangle, w, clustering, 1.0) >= 3.0


def test_lambda_one_on_edgeless_graph_keeps_every_vertex():
    graph = build_graph([], 5)
    w = WeightAssignment.unit(5)
    clustering = solve_qlambda(graph, w, 1.0, make_rng(0))
    assert clustering == Clustering.singletons(5)
    assert objective(graph, w, clustering, 1, exact=True) == 5


def test_lambda_zero_is_the_q0_candidate(graph_factory):
    for seed in range(20):
        graph = graph_factory(seed, 10)
        w = WeightAssignment.degree(graph)
        assert solve_qlambda(graph, w, 0.0, make_rng(seed)) == solve_q0(graph, w, make_rng(seed))


def test_triangle_mean_clears_q0_ratio(triangle):
    w = WeightAssignment.degree(triangle)
    values = [objective(triangle, w, solve_q0(triangle, w, make_rng(seed)), 0) for seed in range(1000)]
    assert np.mean(values) >= Q0_RATIO


@pytest.mark.parametrize("lam", [-0.1, 1.5, 2.0])
def test_lambda_outside_unit_interval_rejected(triangle, lam):
    with pytest.raises(LambdaOutOfRangeError):
        solve_qlambda(triangle, WeightAssignment.degree(triangle), lam, make_rng(0))


def test_same_seed_same_clustering(graph_factory):
    graph = graph_factory(4, 12)
    w = WeightAssignment.degree(graph)
    assert solve_q0(graph, w, make_rng(9)) == solve_q0(graph, w, make_rng(9))


def test_stages_are_consistent(graph_factory):
    for seed in range(30):
        graph = graph_factory(seed, 10)
        w = WeightAssignment.degree(graph)
        stages = run_q0_stages(graph, w, make_rng(seed))
        assert stages.assignment.violations(stages.instance) == []
        v = cvwap_value(stages.instance, stages.assignment, exact=True)
        q0_partial = objective(graph, w, stages.partial, 0, exact=True)
        assert v <= q0_partial <= 3 * v
        assert objective(graph, w, stages.clustering, 0, exact=True) == q0_partial
        assert stages.clustering.k == stages.partial.k + int((stages.partial.assignment < 0).sum())


# --- Best of several trials ---
def test_best_of_needs_a_trial(triangle):
    with pytest.raises(InvalidTrialsError):
        solve_best_of(triangle, WeightAssignment.degree(triangle), 0.0, 0, 1)


def test_best_of_one_is_plain_seeded_run(graph_factory):
    for seed in range(20):
        graph = graph_factory(seed, 9)
        w = WeightAssignment.degree(graph)
        for lam in (0.0, 0.3):
            assert solve_best_of(graph, w, lam, 1, seed) == solve_qlambda(graph, w, lam, make_rng(seed))


def test_fifty_trials_reach_half_the_triangle_optimum(triangle):
    w = WeightAssignment.degree(triangle)
    for seed in range(10):
        assert objective(triangle, w, solve_best_of(triangle, w, 0.0, 50, seed), 0) >= 0.5


def test_best_of_is_deterministic_and_monotone_in_trials(graph_factory):
    graph = graph_factory(21, 12)
    w = WeightAssignment.degree(graph)
    first = solve_best_of(graph, w, 0.0, 5, 3)
    assert first == solve_best_of(graph, w, 0.0, 5, 3)
    values = [objective(graph, w, solve_best_of(graph, w, 0.0, trials, 3), 0) for trials in (1, 3, 5, 10)]
    assert values == sorted(values)
    for i in range(5):
        single = solve_qlambda(graph, w, 0.0, trial_rng(3, i))
        assert objective(graph, w, first, 0) >= objective(graph, w, single, 0)


# --- Agglomerative baseline ---
def test_agglomerative_keeps_singletons_at_lambda_one(triangle):
    assert greedy_agglomerative(triangle, WeightAssignment.degree(triangle), 1.0) == Clustering.singletons(3)


def test_agglomerative_finds_two_triangles(two_triangles):
    w = WeightAssignment.degree(two_triangles)
    clustering = greedy_agglomerative(two_triangles, w, 0.0)
    assert clustering.blocks() == [[0, 1, 2], [3, 4, 5]]
    assert objective(two_triangles, w, clustering, 0, exact=True) == 2


def test_agglomerative_merges_path(path3):
    assert greedy_agglomerative(path3, WeightAssignment.degree(path3), 0.0) == Clustering.single(3)


def test_agglomerative_on_edgeless(edgeless):
    assert greedy_agglomerative(edgeless, WeightAssignment.unit(3), 0.0).k == 3


def _rescan_agglomerative(graph, w, lam):
    """Recomputes every adjacent pair's gain before each merge."""
    weights = w.weights.tolist()
    label = list(range(graph.n))
    while True:
        inside, weight, between = {}, {}, {}
        for v in range(graph.n):
            weight[label[v]] = weight.get(label[v], 0.0) + weights[v]
        for u, v in graph.edges.tolist():
            a, b = sorted((label[u], label[v]))
            if a == b:
                inside[a] = inside.get(a, 0) + 1
            else:
                between[(a, b)] = between.get((a, b), 0) + 1
        gains = {}
        for (a, b), shared in between.items():
            ia, ib = inside.get(a, 0), inside.get(b, 0)
            merged = 2.0 * (ia + ib + shared) / (weight[a] + weight[b])
            gains[(a, b)] = merged - 2.0 * ia / weight[a] - 2.0 * ib / weight[b] - lam
        positive = {pair: g for pair, g in gains.items() if g > MERGE_EPSILON}
        if not positive:
            break
        top = max(positive.values())
        a, b = min(pair for pair, g in positive.items() if g >= top - MERGE_EPSILON)
        label = [a if x == b else x for x in label]
    return Clustering.from_labels(label)


def test_agglomerative_matches_full_rescan(graph_factory):
    for seed in range(25):
        graph = graph_factory(seed, 14, p=0.3)
        w = WeightAssignment.degree(graph)
        for lam in (0.0, 0.2):
            assert greedy_agglomerative(graph, w, lam) == _rescan_agglomerative(graph, w, lam)


def test_agglomerative_never_below_singletons(graph_factory):
    for seed in range(20):
        graph = graph_factory(seed, 12)
        w = WeightAssignment.degree(graph)
        for lam in (0.0, 0.25, 1.0):
            clustering = greedy_agglomerative(graph, w, lam)
            assert objective(graph, w, clustering, lam) >= graph.n * lam - 1e-9


# --- Normalized modularity ---
def _triangles(count, bridges=()):
    edges = []
    for t in range(count):
        a = 3 * t
        edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
    return build_graph(edges + list(bridges), 3 * count)


def test_nmod_guarantee_from_component_witness():
    graph = _triangles(3)
    witness = Clustering.from_blocks(9, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    # eps = 3/2 - 1 at alpha = 1
    assert nmod_guarantee(graph, witness, 1.0) == pytest.approx(1 / 3)
    assert nmod_guarantee(graph, witness, 0.5) is None


def test_nmod_guarantee_needs_positive_optimum(two_triangles):
    witness = Clustering.from_blocks(6, [[0, 1, 2], [3, 4, 5]])
    assert normalized_modularity(two_triangles, witness) == pytest.approx(0.0)
    assert nmod_guarantee(two_triangles, witness, 1.0) is None


def test_nmod_guarantee_vanishes_for_weak_witness(triangle):
    assert nmod_guarantee(triangle, Clustering.single(3), Q0_RATIO) is None


@pytest.mark.slow
def test_nmod_guarantee_holds_against_oracle(graph_factory):
    rng = np.random.default_rng(13)
    checked = 0
    graphs = [graph_factory(seed, int(rng.integers(4, 9))) for seed in range(10)]
    for _ in range(6):
        bridges = {(int(rng.integers(0, 3)), int(rng.integers(3, 6))), (int(rng.integers(3, 6)), int(rng.integers(6, 9)))}
        graphs.append(_triangles(3, sorted(bridges)))
    for graph in graphs:
        w = WeightAssignment.degree(graph)
        optimum, best = exact_opt(graph, w)
        candidates = [optimum, greedy_agglomerative(graph, w, 0.0)]
        candidates += [solve_q0(graph, w, make_rng(seed)) for seed in range(5)]
        for clustering in candidates:
            alpha = float(objective(graph, w, clustering, 0, exact=True) / best)
            guarantee = nmod_guarantee(graph, optimum, alpha)
            if guarantee is None:
                continue
            checked += 1
            floor = guarantee * normalized_modularity(graph, optimum)
            assert normalized_modularity(graph, clustering) >= floor - 1e-9
    assert checked > 0


# --- Lambda sweep ---
def test_sweep_trades_clusters_for_cut(two_triangles):
    points = sweep_lambda(two_triangles, WeightAssignment.degree(two_triangles), [0, 0.5, 1])
    assert [p.k for p in points] == [2, 6, 6]
    assert points[0].ncut == pytest.approx(0.0)
    assert points[2].ncut == pytest.approx(6.0)
    assert points[0].q0 == pytest.approx(2.0)


def test_sweep_without_degree_weights_has_no_ncut(two_triangles):
    points = sweep_lambda(two_triangles, WeightAssignment.unit(6), [0.0])
    assert points[0].ncut is None


def test_sweep_with_pipeline(two_triangles):
    points = sweep_lambda(two_triangles, WeightAssignment.degree(two_triangles), [0, 1], algo="pipeline", trials=3)
    assert len(points) == 2
    assert points[1].q_lambda >= 6.0


def test_sweep_rejects_unknown_algorithm(triangle):
    with pytest.raises(ValueError):
        sweep_lambda(triangle, WeightAssignment.degree(triangle), [0.0], algo="oracle")


def test_tune_lambda_hits_target(two_triangles):
    point = tune_lambda_for_ncut(two_triangles, 2, [0, 0.5, 1])
    assert point.lam == 0.0
    assert point.k == 2


def test_closest_to_target_needs_points():
    with pytest.raises(ValueError):
        closest_to_target([], 3)


# --- Expectation and scale ---
@pytest.mark.slow
@pytest.mark.parametrize("lam, ratio", [(0, Q0_RATIO), (0.5, QLAMBDA_RATIO), (1, QLAMBDA_RATIO)])
def test_expected_value_meets_ratio(graph_factory, lam, ratio):
    rng = np.random.default_rng(31)
    seeds = 2000
    for case in range(20):
        n = int(rng.integers(3, 9))
        graph = graph_factory(500 + case, n)
        w = WeightAssignment.degree(graph)
        _, optimum = exact_opt(graph, w, Fraction(lam))
        values = np.array([objective(graph, w, solve_qlambda(graph, w, lam, make_rng(s)), lam) for s in range(seeds)])
        margin = 3.0 * values.std() / np.sqrt(seeds)
        assert values.mean() >= ratio * float(optimum) - margin


@pytest.mark.slow
def test_million_edge_graph_within_a_minute():
    rng = np.random.default_rng(0)
    n = 200_000
    pairs = rng.integers(0, n, size=(1_200_000, 2))
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    pairs.sort(axis=1)
    keys = np.unique(pairs[:, 0] * n + pairs[:, 1])[:1_000_000]
    graph = build_graph(np.stack([keys // n, keys % n], axis=1), n)
    assert graph.m == 1_000_000
    text = write_edge_list(graph)

    start = perf_counter()
    parsed = parse_edge_list(text)
    report = ClusteringService.report(parsed, WeightAssignment.unit(n), "pipeline", seed=1, with_bounds=True)
    assert perf_counter() - start < 60.0

    clustered = [token for cluster in report.clusters for token in cluster]
    assert len(clustered) == n
    assert sorted(clustered) == sorted(str(v) for v in range(n))
    assert report.k == len(report.clusters)
    assert report.metrics.q0 >= 0
    assert report.bounds is not None
