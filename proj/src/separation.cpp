#include "axiomlab/separation.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace axiomlab {

namespace {

constexpr double kRel = 1e-12;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

}  // namespace

std::vector<BallSummary> ball_summaries(const Dataset& dataset, const Partition& partition) {
    if (partition.size() != dataset.size()) throw std::invalid_argument("partition does not cover the dataset");
    std::vector<BallSummary> out;
    for (const auto& members : partition.clusters()) {
        BallSummary b;
        b.count = members.size();
        b.center = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(dataset.dim()));
        for (std::size_t i : members) b.center += dataset.point(i);
        b.center /= double(b.count);
        for (std::size_t i : members) b.radius = std::max(b.radius, (dataset.point(i) - b.center).norm());
        out.push_back(std::move(b));
    }
    return out;
}

AbsoluteGapBound absolute_gap_bound(const std::vector<BallSummary>& s, std::size_t k, std::size_t n) {
    if (s.size() < 2) throw std::invalid_argument("absolute_gap_bound needs at least two clusters");
    double weighted = 0.0;
    std::size_t big = 0;
    std::size_t small = static_cast<std::size_t>(-1);
    double rmax = 0.0;
    for (const auto& b : s) {
        if (b.count == 0) throw std::invalid_argument("cluster with zero members");
        weighted += double(b.count) * b.radius * b.radius;
        big = std::max(big, b.count);
        small = std::min(small, b.count);
        rmax = std::max(rmax, b.radius);
    }
    const double kk = double(k);
    const double nn = double(n);
    AbsoluteGapBound out;
    for (std::size_t p = 0; p < s.size(); ++p) {
        for (std::size_t q = p + 1; q < s.size(); ++q) {
            const double np = double(s[p].count);
            const double nq = double(s[q].count);
            out.pair_case = std::max(out.pair_case, kk * std::sqrt(np + nq + nn) * std::sqrt(weighted / (np * nq)));
        }
    }
    out.balance_case = rmax * std::sqrt(kk * (double(big) + nn) / double(small));
    return out;
}

SeparationCertificate certify(const Dataset& dataset, const Partition& partition) {
    SeparationCertificate c;
    c.balls = ball_summaries(dataset, partition);
    const std::size_t k = c.balls.size();
    c.center_distances = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (const auto& b : c.balls) c.rho = std::max(c.rho, b.radius);
    c.nice_ball = c.perfect_ball = c.core = true;
    c.min_ball_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            PairSeparation p{};
            p.a = a;
            p.b = b;
            p.center_distance = (c.balls[a].center - c.balls[b].center).norm();
            c.center_distances(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = p.center_distance;
            c.center_distances(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = p.center_distance;
            p.rho = std::max(c.balls[a].radius, c.balls[b].radius);
            p.core_gap = p.center_distance - 2.0 * p.rho;
            p.core_radius = p.core_gap / 2.0;
            p.ball_gap = p.center_distance - c.balls[a].radius - c.balls[b].radius;
            p.nice = p.center_distance >= 4.0 * p.rho * (1.0 - kRel);
            c.nice_ball = c.nice_ball && p.nice;
            c.perfect_ball = c.perfect_ball && p.center_distance >= 4.0 * c.rho * (1.0 - kRel);
            c.core = c.core && p.core_gap > 0.0;
            c.min_ball_gap = std::min(c.min_ball_gap, p.ball_gap);
            c.pairs.push_back(p);
        }
    }
    if (k >= 2) {
        c.absolute_bound = absolute_gap_bound(c.balls, k, dataset.size());
        c.absolute = c.min_ball_gap >= c.absolute_bound.bound() * (1.0 - kRel);
    } else {
        c.min_ball_gap = 0.0;
        c.core = false;
    }
    return c;
}

std::string SeparationCertificate::to_json() const {
    nlohmann::json pairs_json = nlohmann::json::array();
    for (const auto& p : pairs) {
        pairs_json.push_back({{"a", p.a},
                              {"b", p.b},
                              {"center_distance", p.center_distance},
                              {"rho", p.rho},
                              {"core_gap", p.core_gap},
                              {"core_radius", p.core_radius},
                              {"ball_gap", p.ball_gap},
                              {"nice", p.nice}});
    }
    nlohmann::json balls_json = nlohmann::json::array();
    for (const auto& b : balls) {
        balls_json.push_back({{"center", std::vector<double>(b.center.data(), b.center.data() + b.center.size())},
                              {"radius", b.radius},
                              {"count", b.count}});
    }
    nlohmann::json j{{"nice_ball", nice_ball},
                     {"perfect_ball", perfect_ball},
                     {"rho", rho},
                     {"core", core},
                     {"absolute", absolute},
                     {"absolute_bound",
                      {{"pair_case", absolute_bound.pair_case},
                       {"balance_case", absolute_bound.balance_case},
                       {"bound", absolute_bound.bound()},
                       {"min_ball_gap", min_ball_gap}}},
                     {"balls", balls_json},
                     {"pairs", pairs_json}};
    return j.dump();
}

double motion_gap_bound(double n1, double r1, double n2, double r2) {
    require_positive(n1, "n1");
    require_positive(n2, "n2");
    require_positive(r1, "r1");
    require_positive(r2, "r2");
    return std::max(0.0, r2 * std::sqrt(2.0 * (1.0 + 0.5 * n2 / n1)) - r1);
}

double takeover_gain(double n1, double r1, double n2, double r2, double n21, double r21, double g) {
    if (!(n21 > 0.0 && n21 < n2)) throw std::invalid_argument("need 0 < n21 < n2");
    const double n22 = n2 - n21;
    const double r22 = n21 * r21 / n22;
    const double lost = n21 * r21 * r21 + n22 * r22 * r22;
    const double reach = r1 + r2 + g - r21;
    const double added = n1 * n21 / (n1 + n21) * reach * reach;
    return added - lost;
}

double takeover_root(double n1, double r1, double n2, double r2, double n21, double r21) {
    if (!(n21 > 0.0 && n21 < n2)) throw std::invalid_argument("need 0 < n21 < n2");
    return r21 * std::sqrt(n2 / n1 * (n1 + n21) / (n2 - n21)) - r1 - r2 + r21;
}

double off_core_fraction_bound(double g, double rho, double n_core, double n) {
    require_positive(g, "g");
    require_positive(rho, "rho");
    require_positive(n_core, "n_core");
    require_positive(n, "n");
    if (n_core > n) throw std::invalid_argument("core count exceeds the cluster size");
    const double q = g / (2.0 * rho);
    const double value = q * n_core / (q * n_core - q * (n - n_core) + n);
    return std::clamp(value, 0.0, 1.0);
}

SeedingSuccess seeding_success(double p, std::size_t k, SeedingModel model, std::optional<double> rho,
                               double target_confidence) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(p > 0.0) || p > 1.0 / double(k) * (1.0 + 1e-12)) {
        throw std::invalid_argument("smallest cluster share must lie in (0, 1/k]");
    }
    if (!(target_confidence > 0.0 && target_confidence < 1.0)) {
        throw std::invalid_argument("target confidence must lie in (0, 1)");
    }
    const double r = rho.value_or(1.0);
    require_positive(r, "rho");
    SeedingSuccess out;
    out.q = 1.0;
    for (std::size_t j = 1; j < k; ++j) {
        const double share = std::min(1.0, double(k - j) * p);
        if (model == SeedingModel::random) {
            out.q *= 1.0 - share;
        } else {
            const double hit = 9.0 * r * r * share;
            out.q *= hit / (hit + 4.0 * r * r * (1.0 - share));
        }
    }
    // Fewest restarts m with 1 - (1 - q)^m >= target.
    if (out.q >= 1.0) {
        out.restarts = 1;
    } else if (out.q <= 0.0) {
        throw std::domain_error("seeding can never succeed for these parameters");
    } else {
        out.restarts = static_cast<std::size_t>(
            std::max(1.0, std::ceil(std::log1p(-target_confidence) / std::log1p(-out.q) - 1e-9)));
        while (1.0 - std::pow(1.0 - out.q, double(out.restarts)) < target_confidence) ++out.restarts;
        while (out.restarts > 1 && 1.0 - std::pow(1.0 - out.q, double(out.restarts - 1)) >= target_confidence) {
            --out.restarts;
        }
    }
    return out;
}

double krich_hit_probability(std::size_t k) {
    double v = 1.0;
    for (std::size_t i = 1; i <= k; ++i) v *= double(i) / double(k);
    return v;
}

}  // namespace axiomlab
