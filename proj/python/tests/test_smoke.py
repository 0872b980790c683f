import math

import numpy as np
import pytest

import axiomlab


def line(*values):
    return np.array(values, dtype=float).reshape(-1, 1)


def test_kmeans_on_four_points():
    x = line(0, 1, 10, 11)
    best = axiomlab.kmeans_ideal(x, 2)
    assert best["clusters"] == [[0, 1], [2, 3]]
    assert best["q"] == pytest.approx(1.0)
    lloyd = axiomlab.kmeans(x, 2, restarts=5, seed=3)
    assert lloyd["clusters"] == [[0, 1], [2, 3]]
    assert axiomlab.is_local_min(x, [[0, 1], [2, 3]])
    assert not axiomlab.is_local_min(x, [[0, 2], [1, 3]])


def test_partition_counts():
    assert len(axiomlab.enumerate_partitions(4)) == 15
    assert len(axiomlab.enumerate_partitions(4, 2)) == 7
    with pytest.raises(axiomlab.EnumerationCapExceeded):
        axiomlab.enumerate_partitions(13)


def test_transforms_and_certificate():
    x = np.array([[0, 0], [1, 0], [0, 1], [10, 0], [11, 0], [10, 1]], dtype=float)
    clusters = [[0, 1, 2], [3, 4, 5]]
    y = axiomlab.centric_transform(x, clusters, 0, 0.5)
    # Pulling (0, 0) towards its centroid brings it closer to the other cluster.
    assert not axiomlab.is_gamma_transform(axiomlab.distance_matrix(x), axiomlab.distance_matrix(y), clusters)
    assert axiomlab.kmeans_ideal(y, 2)["clusters"] == clusters
    cert = axiomlab.certify(x, clusters)
    assert cert["nice_ball"]


def test_bounds():
    assert axiomlab.motion_gap_bound(100, 1.0, 100, 1.0) == pytest.approx(math.sqrt(3) - 1)
    q, restarts = axiomlab.seeding_success(0.5, 2)
    assert q == pytest.approx(0.5)
    assert restarts == 5


def test_non_euclidean_table():
    d = np.array([[0, 10, 2.236], [10, 0, 6.708], [2.236, 6.708, 0]])
    report = axiomlab.embeddability_check(d)
    assert not report["embeddable"]
    assert report["imaginary_axes"] >= 1


def test_threshold_clustering():
    assert axiomlab.threshold_clustering(line(0, 0.01, 1)) == [[0, 1], [2]]


def test_suite_and_grid():
    report = axiomlab.run_suite("interference")
    assert report["passed"]
    assert report["seed"] == 42
    grid = axiomlab.reproduce_table3()
    assert len(grid["cells"]) == 15
