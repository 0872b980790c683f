#pragma once

#include <optional>
#include <string>
#include <vector>

#include "axiomlab/core.hpp"

namespace axiomlab {

struct BallSummary {
    Eigen::RowVectorXd center;
    double radius = 0.0;  // max member distance to the center
    std::size_t count = 0;
};

std::vector<BallSummary> ball_summaries(const Dataset& dataset, const Partition& partition);

struct AbsoluteGapBound {
    double pair_case = 0.0;     // max over cluster pairs
    double balance_case = 0.0;  // driven by the largest / smallest cluster sizes
    double bound() const { return std::max(pair_case, balance_case); }
};

/// Sufficient gap for the ball partition to be the global k-means minimum.
AbsoluteGapBound absolute_gap_bound(const std::vector<BallSummary>& summaries, std::size_t k,
                                    std::size_t n);

struct PairSeparation {
    std::size_t a;
    std::size_t b;
    double center_distance;
    double rho;          // max(r_a, r_b)
    double core_gap;     // center_distance - 2 rho
    double core_radius;  // core_gap / 2
    double ball_gap;     // center_distance - r_a - r_b
    bool nice;           // center_distance >= 4 rho
};

struct SeparationCertificate {
    std::vector<BallSummary> balls;
    std::vector<PairSeparation> pairs;
    Eigen::MatrixXd center_distances;
    double rho = 0.0;  // max radius over all clusters
    bool nice_ball = false;
    bool perfect_ball = false;
    bool core = false;
    AbsoluteGapBound absolute_bound;
    double min_ball_gap = 0.0;
    bool absolute = false;

    std::string to_json() const;
};

SeparationCertificate certify(const Dataset& dataset, const Partition& partition);

/// r2 sqrt(2 (1 + n2 / (2 n1))) - r1, floored at 0.
double motion_gap_bound(double n1, double r1, double n2, double r2);

/// Change of the objective when cluster 1 (n1, r1) takes over n21 points of
/// cluster 2 (n2, r2) whose centre sits r21 from cluster 2's centre on the
/// line towards cluster 1, with gap g between the enclosing balls. Negative
/// means the takeover pays off.
double takeover_gain(double n1, double r1, double n2, double r2, double n21, double r21, double g);

/// Gap at which takeover_gain is exactly zero.
double takeover_root(double n1, double r1, double n2, double r2, double n21, double r21);

/// Largest fraction of a cluster that may lie outside its core.
double off_core_fraction_bound(double g, double rho, double n_core, double n);

enum class SeedingModel { random, plus_plus };

struct SeedingSuccess {
    double q = 0.0;             // probability one seeding hits every cluster
    std::size_t restarts = 1;   // runs needed for the target confidence
};

SeedingSuccess seeding_success(double p, std::size_t k, SeedingModel model,
                               std::optional<double> rho = std::nullopt,
                               double target_confidence = 0.95);

/// k! / k^k.
double krich_hit_probability(std::size_t k);

}  // namespace axiomlab
