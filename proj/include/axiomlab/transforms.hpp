#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axiomlab/core.hpp"

namespace axiomlab {

DistanceMatrix scale(const DistanceMatrix& d, double alpha);
Dataset scale(const Dataset& dataset, double alpha);

struct GammaViolation {
    std::size_t i;
    std::size_t j;
    bool same_cluster;
    double before;
    double after;
};

struct GammaCheck {
    bool valid = true;
    std::vector<GammaViolation> violations;
};

inline constexpr double kGammaRelativeTolerance = 1e-12;

/// d2 is a Gamma-transform of d when no within-cluster distance grows and no
/// cross-cluster distance shrinks, up to relative_tolerance times the largest
/// distance in either table.
GammaCheck is_gamma_transform(const DistanceMatrix& d, const DistanceMatrix& d2,
                              const Partition& partition,
                              double relative_tolerance = kGammaRelativeTolerance);

/// x' = mu_c + lambda (x - mu_c) on the members of one cluster.
Dataset centric_transform(const Dataset& dataset, const Partition& partition, std::size_t cluster,
                          double lambda);

struct MotionResult {
    Dataset dataset;
    bool centers_nondecreasing = true;
    bool balls_disjoint = true;
    bool legal() const { return centers_nondecreasing && balls_disjoint; }
};

/// Enclosing ball used for the overlap test: center = cluster mean, radius =
/// max member distance to it. Two balls are disjoint when the center
/// distance is at least the sum of the radii.
bool enclosing_balls_disjoint(const Dataset& dataset, const Partition& partition);

MotionResult motion_transform(const Dataset& dataset, const Partition& partition, std::size_t cluster,
                              const Eigen::RowVectorXd& v);

Dataset inner_proportional_transform(const Dataset& dataset, const Partition& partition,
                                     std::span<const double> lambdas);

struct DiscreteConsistencyResult {
    Dataset dataset;
    GammaCheck check;
    bool gamma_valid() const { return check.valid; }
};

/// Per-cluster shrink then per-cluster translation (motions is k x m).
DiscreteConsistencyResult discrete_consistency_transform(const Dataset& dataset,
                                                         const Partition& partition,
                                                         const Eigen::MatrixXd& motions,
                                                         std::span<const double> lambdas);

enum class TransformKind { scale, kleinberg_gamma, centric, motion, inner_proportional, composite };

std::string to_string(TransformKind kind);
TransformKind parse_transform_kind(const std::string& name);

struct TransformRecord {
    TransformKind kind = TransformKind::scale;
    std::optional<std::size_t> cluster;
    std::optional<double> alpha;
    std::vector<double> lambdas;  // one entry for centric, one per cluster otherwise
    std::vector<double> vector;

    void validate() const;
    std::string to_json() const;
    static TransformRecord from_json(const std::string& text);
};

/// Four collinear points whose Gamma-transform, once rescaled, brings two
/// clusters closer than they were originally.
struct InterferenceWitness {
    std::vector<double> before_positions;
    std::vector<double> after_positions;
    Partition partition;
    double alpha;
    std::size_t i;
    std::size_t j;
    double original;  // d1(i, j)
    double rescaled;  // alpha * d3(i, j)
    bool gamma_valid;
};

/// Builds the witness and throws std::logic_error if any asserted property fails.
InterferenceWitness interference_witness();

}  // namespace axiomlab
