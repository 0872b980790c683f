#pragma once

#include <functional>
#include <random>
#include <vector>

#include "axiomlab/core.hpp"

namespace axiomlab {

struct LabelledDataset {
    Dataset dataset;
    Partition target;
};

/// Clusters laid left to right on a line in non-increasing size order, each
/// spanning a unit interval, separated widely enough that the intended
/// partition is the k-means optimum. Points are numbered left to right.
LabelledDataset krich_line(std::vector<std::size_t> cluster_sizes);

/// Gap between the last element of cluster i and the first of cluster i+1
/// (0-based i) for sizes already sorted non-increasingly.
std::vector<double> krich_gaps(const std::vector<std::size_t>& sorted_sizes);

inline constexpr double kKrichMinimumGap = 3.0;

/// Four segments from A(1,0,0) to B(33,32,0), C(33,-32,0) and from D(-1,0,0)
/// to E(-33,0,-32), F(-33,0,32). Sampled with the same uniform parameters, so
/// point i of the rotated and unrotated sets correspond.
Dataset rotated_segments(bool rotated, std::size_t points_per_segment, std::mt19937_64& rng);

struct RotatedPair {
    Dataset original;
    Dataset rotated;
    Partition partition;  // {AB u AC, DE u DF}
};

RotatedPair rotated_segments_pair(std::size_t points_per_segment, std::uint64_t seed);

/// Angle in degrees between the rotated segments and the x axis.
inline constexpr double kRotationDegrees = 1.0;

struct GaussianComponent {
    Eigen::RowVectorXd mean;
    Eigen::MatrixXd covariance;
    std::size_t count = 0;
};

/// Samples each component in turn; covariance must be symmetric positive
/// semidefinite. Points of component c occupy a contiguous block.
Dataset gaussian_mixture(const std::vector<GaussianComponent>& components, std::mt19937_64& rng);

/// Five isotropic unit-variance components in the plane, 200 points each.
std::vector<GaussianComponent> default_mixture();

/// Component labels for a dataset drawn from `components`.
Partition mixture_partition(const std::vector<GaussianComponent>& components);

struct FixtureTables {
    DistanceMatrix distances;              // the non-embeddable 6-point table A..F
    ComplexCoordinates embedding;          // its printed complex embedding
    Eigen::MatrixXd printed_centers;       // two centers as printed (rounded)
    Eigen::MatrixXd exact_centers;         // the same centers before rounding
    std::vector<std::string> names;        // "A".."F"
};

FixtureTables fixture_tables();

/// Ten planar points used for the non-incrementality demonstration.
Dataset table4_points();

/// Places the clusters of `partition` in shrunken balls far apart, giving a
/// Euclidean dataset whose distances are a Gamma-transform of d.
Dataset embed_partition(const DistanceMatrix& d, const Partition& partition, std::size_t m);

/// Links i and j when, in every dimension with nonzero spread, their
/// coordinate difference is strictly below spread / (n + 1); clusters are the
/// connected components. In two or more dimensions the largest max-coordinate
/// distance must be attained by a unique pair, otherwise std::domain_error.
Partition threshold_clustering(const Dataset& dataset);

using PartitionQuality = std::function<double(const Dataset&, const Partition&)>;

struct PrefixOptimum {
    std::size_t prefix;  // number of leading points considered
    Partition best;
    double quality;
    bool extends_previous;  // previous optimum equals this one restricted to prefix - 1
};

/// For every prefix length 2..n, the partition minimising `quality` (ties keep
/// the first partition in canonical order). If `k` is set only k-partitions are searched.
std::vector<PrefixOptimum> exhaustive_best_partition(const Dataset& dataset, const PartitionQuality& quality,
                                                     std::optional<std::size_t> k = std::nullopt);

/// A deliberately erratic score: for every pair, q = round(1000 d). A
/// within-cluster pair scores 1 when q is odd, a cross pair scores 1 when q is
/// divisible by 3. Lower is better.
double parity_quality(const Dataset& dataset, const Partition& partition);

}  // namespace axiomlab
