#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "axiomlab/core.hpp"

namespace axiomlab {

enum class Seeding { uniform_random, plus_plus, explicit_centers };

Seeding parse_seeding(const std::string& name);
std::string to_string(Seeding seeding);

struct KMeansConfig {
    std::size_t k = 2;
    Seeding seeding = Seeding::plus_plus;
    std::size_t restarts = 1;
    std::size_t max_iterations = 300;
    std::uint64_t rng_seed = 0;
    std::optional<Eigen::MatrixXd> initial_centers;  // k x m, for explicit_centers

    void validate(std::size_t n) const;
};

struct ClusteringResult {
    Partition partition;
    Eigen::MatrixXd centers;  // row c is the mean of partition.cluster(c)
    double objective = 0.0;
    std::size_t iterations = 0;
    double explained_variance = 0.0;
    bool converged = false;
    bool empty_cluster_event = false;
    std::vector<double> objective_trace;  // objective after each center update

    std::string to_json() const;
};

/// Per-cluster means, row c for cluster c.
Eigen::MatrixXd cluster_means(const Dataset& dataset, const Partition& partition);

/// Centroid form of the k-means objective.
double objective_q_centroid(const Dataset& dataset, const Partition& partition);
/// Sum over clusters of (1/n_j) times the sum over unordered member pairs of
/// squared distances.
double objective_q_pairwise(const Dataset& dataset, const Partition& partition);
/// Centroid form, cross-checked against the pairwise form (relative 1e-9);
/// a mismatch throws std::logic_error.
double objective_q(const Dataset& dataset, const Partition& partition);

double total_sum_of_squares(const Dataset& dataset);
/// 1 - q / total_SS, clamped to [0, 1]; 1 when all points coincide.
double explained_variance(const Dataset& dataset, double q);
double explained_variance(const Dataset& dataset, const ClusteringResult& result);

/// k initial centers. uniform_random draws k distinct points; plus_plus draws
/// the first uniformly and each next one with probability proportional to the
/// squared distance to the nearest chosen center.
Eigen::MatrixXd seed(const Dataset& dataset, std::size_t k, Seeding strategy, std::mt19937_64& rng);

/// Lloyd iteration from the given centers until memberships stop changing or
/// max_iterations center updates have been made. Assignment ties go to the
/// lowest center index. A cluster that empties is re-seeded with the point
/// farthest from its current center (taken from a cluster of size >= 2).
/// The observer, if set, sees the raw center index of every point after
/// each assignment step.
using AssignmentObserver = std::function<void(const std::vector<std::size_t>& assignment)>;

ClusteringResult lloyd(const Dataset& dataset, const Eigen::MatrixXd& initial_centers,
                       std::size_t max_iterations = 300, const AssignmentObserver& observer = {});

/// Best of config.restarts Lloyd runs; restart r draws from mt19937_64(rng_seed + r).
ClusteringResult kmeans(const Dataset& dataset, const KMeansConfig& config);

/// Exhaustive minimiser over every k-partition. Ties keep the earliest
/// partition in canonical enumeration order.
ClusteringResult kmeans_ideal(const Dataset& dataset, std::size_t k);

/// All k-partitions whose objective lies within relative `tolerance` of the minimum.
std::vector<Partition> ideal_minimizers(const Dataset& dataset, std::size_t k,
                                        double tolerance = 1e-9);

/// Change of V(C) = sum ||x - mu_C||^2 when x leaves C (|C| = n >= 2) or joins C.
double removal_decrease(double n, double squared_distance_to_mean);
double insertion_increase(double n, double squared_distance_to_mean);

struct ImprovingMove {
    std::size_t point;
    std::size_t from;
    std::size_t to;
    double removal;    // decrease of the source cluster scatter
    double insertion;  // increase of the target cluster scatter
    double gain() const { return removal - insertion; }
};

struct LocalMinReport {
    bool local_min = true;
    std::optional<ImprovingMove> witness;  // the most improving move when not a local minimum
    double identity_error = 0.0;           // worst relative error of the update identities
};

/// Single-point move test. Moves out of singleton clusters are skipped.
LocalMinReport is_local_min(const Dataset& dataset, const Partition& partition,
                            bool verify_identities = true);

}  // namespace axiomlab
