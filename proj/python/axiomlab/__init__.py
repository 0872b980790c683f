"""k-means against the clustering axioms.

Points are NumPy arrays with one point per row; partitions are lists of
clusters, each a list of point indices.
"""

import json

from . import _core
from ._core import (
    EnumerationCapExceeded,
    centric_transform,
    distance_matrix,
    embeddability_check,
    enumerate_partitions,
    is_gamma_transform,
    is_local_min,
    kmeans,
    kmeans_ideal,
    krich_line,
    motion_gap_bound,
    objective_q,
    seeding_success,
    suite_names,
    threshold_clustering,
)


def certify(points, clusters):
    return json.loads(_core.certify(points, clusters))


def run_suite(name, seed=42, trials=0):
    return json.loads(_core.run_suite(name, seed, trials))


def reproduce_table3(seed=42):
    return json.loads(_core.reproduce_table3(seed))


__all__ = [
    "EnumerationCapExceeded",
    "centric_transform",
    "certify",
    "distance_matrix",
    "embeddability_check",
    "enumerate_partitions",
    "is_gamma_transform",
    "is_local_min",
    "kmeans",
    "kmeans_ideal",
    "krich_line",
    "motion_gap_bound",
    "objective_q",
    "reproduce_table3",
    "run_suite",
    "seeding_success",
    "suite_names",
    "threshold_clustering",
]
