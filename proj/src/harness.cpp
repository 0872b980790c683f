#include "axiomlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "axiomlab/constructions.hpp"
#include "axiomlab/kmeans.hpp"
#include "axiomlab/separation.hpp"
#include "axiomlab/transforms.hpp"
#include "json.hpp"

namespace axiomlab {

namespace {

using json = nlohmann::json;
using Rng = std::mt19937_64;

// Distinct streams per suite and per check so that adding a check never
// perturbs the draws of another.
Rng stream(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{seed, salt};
    return Rng(seq);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

json rows_json(const Dataset& x) {
    json rows = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        rows.push_back(std::vector<double>(x.point(i).begin(), x.point(i).end()));
    }
    return rows;
}

Dataset uniform_dataset(Rng& rng, std::size_t n, std::size_t m, double lo = 0.0, double hi = 10.0) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index a = 0; a < x.cols(); ++a) x(i, a) = uniform(rng, lo, hi);
    }
    return Dataset(std::move(x));
}

Dataset clustered_dataset(Rng& rng, std::size_t n, std::size_t m, std::size_t groups) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Eigen::RowVectorXd> centers;
    std::vector<double> spreads;
    for (std::size_t g = 0; g < groups; ++g) {
        Eigen::RowVectorXd c(static_cast<Eigen::Index>(m));
        for (auto& v : c) v = uniform(rng, 0.0, 10.0);
        centers.push_back(c);
        spreads.push_back(uniform(rng, 0.3, 1.5));
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const std::size_t g = uniform_index(rng, 0, groups - 1);
        for (Eigen::Index a = 0; a < x.cols(); ++a) x(i, a) = centers[g](a) + spreads[g] * normal(rng);
    }
    return Dataset(std::move(x));
}

Eigen::RowVectorXd random_direction(Rng& rng, std::size_t m) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::RowVectorXd v(static_cast<Eigen::Index>(m));
    do {
        for (auto& e : v) e = normal(rng);
    } while (v.norm() < 1e-9);
    return v.normalized();
}

// Points drawn uniformly inside a ball of the given radius, then recentred so
// that their mean is exactly the origin.
Eigen::MatrixXd ball_cloud(Rng& rng, std::size_t count, std::size_t m, double radius) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / double(m));
        x.row(i) = r * random_direction(rng, m);
    }
    x.rowwise() -= x.colwise().mean();
    return x;
}

double max_row_norm(const Eigen::MatrixXd& x) { return x.rowwise().norm().maxCoeff(); }

// Random 1-D instance for the threshold clustering checks.
Dataset line_instance(Rng& rng) {
    const std::size_t n = uniform_index(rng, 5, 20);
    const std::size_t groups = uniform_index(rng, 1, 4);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> centers, spreads;
    for (std::size_t g = 0; g < groups; ++g) {
        centers.push_back(uniform(rng, 0.0, 100.0));
        spreads.push_back(uniform(rng, 0.5, 5.0));
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 1);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const std::size_t g = uniform_index(rng, 0, groups - 1);
        x(i, 0) = centers[g] + spreads[g] * normal(rng);
    }
    return Dataset(std::move(x));
}

struct Tally {
    CheckResult result;

    explicit Tally(std::string name) { result.name = std::move(name); }
    void trial() { ++result.trials; }
    void violation(const json& witness) {
        if (result.violations == 0) result.witness = witness.dump();
        ++result.violations;
        result.passed = false;
    }
    CheckResult done(std::string detail) {
        result.detail = std::move(detail);
        return result;
    }
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

std::size_t pick(std::size_t configured, std::size_t fallback) { return configured ? configured : fallback; }

// Move single points along improving moves until none is left.
Partition descend_to_local_min(const Dataset& x, Partition p) {
    for (;;) {
        const auto report = is_local_min(x, p, false);
        if (report.local_min) return p;
        auto labels = p.labels();
        labels[report.witness->point] = report.witness->to;
        p = Partition::from_labels(labels);
    }
}

bool contains(const std::vector<Partition>& set, const Partition& p) {
    return std::find(set.begin(), set.end(), p) != set.end();
}

// -------------------------------------------------------------------------
// Threshold clustering properties (scale invariance, centric consistency)

CheckResult threshold_scale_check(std::uint64_t seed, std::size_t instances) {
    Rng rng = stream(seed, 101);
    Tally t("threshold-scale-invariance");
    for (std::size_t s = 0; s < instances; ++s) {
        const Dataset x = line_instance(rng);
        const Partition p = threshold_clustering(x);
        for (int r = 0; r < 10; ++r) {
            const double alpha = std::pow(10.0, uniform(rng, -3.0, 3.0));
            t.trial();
            const Partition q = threshold_clustering(scale(x, alpha));
            if (!(q == p)) {
                t.violation({{"points", rows_json(x)}, {"alpha", alpha}, {"before", p.clusters()}, {"after", q.clusters()}});
            }
        }
    }
    return t.done(std::to_string(instances) + " 1-D instances x 10 random alpha");
}

CheckResult threshold_centric_check(std::uint64_t seed, std::size_t instances) {
    Rng rng = stream(seed, 102);
    const double lambdas[] = {0.9, 0.5, 0.1};
    Tally t("threshold-centric-consistency");
    for (std::size_t s = 0; s < instances; ++s) {
        const Dataset x = line_instance(rng);
        const Partition p = threshold_clustering(x);
        const std::size_t c = uniform_index(rng, 0, p.cluster_count() - 1);
        const double lambda = lambdas[uniform_index(rng, 0, 2)];
        t.trial();
        const Partition q = threshold_clustering(centric_transform(x, p, c, lambda));
        if (!(q == p)) {
            t.violation({{"points", rows_json(x)},
                         {"partition", p.clusters()},
                         {"cluster", c},
                         {"lambda", lambda},
                         {"after", q.clusters()}});
        }
    }
    return t.done(std::to_string(instances) + " 1-D instances, random cluster, lambda in {0.9,0.5,0.1}");
}

// -------------------------------------------------------------------------
// Suites

std::vector<CheckResult> suite_scale_invariance(const ExperimentConfig& cfg) {
    const std::size_t instances = pick(cfg.trials, 100);
    Rng rng = stream(cfg.seed, 1);
    Tally argmin("kmeans-ideal-argmin");
    Tally objective("objective-scales-quadratically");
    for (std::size_t s = 0; s < instances; ++s) {
        const std::size_t n = uniform_index(rng, 4, 8);
        const std::size_t m = uniform_index(rng, 1, 3);
        const std::size_t k = uniform_index(rng, 2, 3);
        const Dataset x = uniform_dataset(rng, n, m);
        const auto base = ideal_minimizers(x, k, cfg.tolerance);
        const double q = kmeans_ideal(x, k).objective;
        for (double alpha : {0.1, 3.0, 10.0}) {
            const Dataset y = scale(x, alpha);
            argmin.trial();
            const auto scaled = ideal_minimizers(y, k, cfg.tolerance);
            if (scaled != base) {
                argmin.violation({{"points", rows_json(x)}, {"k", k}, {"alpha", alpha}});
            }
            objective.trial();
            const double qa = kmeans_ideal(y, k).objective;
            if (std::abs(qa - alpha * alpha * q) > 1e-9 * alpha * alpha * q) {
                objective.violation({{"points", rows_json(x)}, {"k", k}, {"alpha", alpha}, {"q", q}, {"q_scaled", qa}});
            }
        }
    }
    return {argmin.done(std::to_string(instances) + " instances, n<=8, k in {2,3}, alpha in {0.1,3,10}"),
            objective.done("Q(alpha X) = alpha^2 Q(X) at the optimum"),
            threshold_scale_check(cfg.seed, 500)};
}

std::vector<CheckResult> suite_k_richness(const ExperimentConfig& cfg) {
    Tally ideal("ideal-recovery");
    // Every composition of n = 2..9 into k >= 2 parts.
    for (std::size_t n = 2; n <= 9; ++n) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
            std::vector<std::size_t> sizes{1};
            for (std::size_t b = 0; b + 1 < n; ++b) {
                if (mask & (std::size_t{1} << b)) sizes.push_back(1); else ++sizes.back();
            }
            if (sizes.size() < 2) continue;
            const auto inst = krich_line(sizes);
            ideal.trial();
            const auto got = kmeans_ideal(inst.dataset, sizes.size()).partition;
            if (!(got == inst.target)) {
                ideal.violation({{"sizes", sizes}, {"points", rows_json(inst.dataset)}, {"got", got.clusters()}});
            }
        }
    }

    const std::vector<std::vector<std::size_t>> shapes{{3, 2}, {5, 1}, {4, 4},       {3, 2, 2},    {4, 3, 1},
                                                       {2, 2, 2}, {3, 2, 2, 2}, {2, 2, 2, 2}, {4, 2, 2, 1}};
    const std::size_t trials = pick(cfg.trials, 10000);
    Tally hits("random-hit-rate");
    std::string detail;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        const auto inst = krich_line(shapes[s]);
        const std::size_t k = shapes[s].size();
        std::size_t hit = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = stream(cfg.seed, 1000 + s * 1000003 + t);
            const auto centers = seed(inst.dataset, k, Seeding::uniform_random, rng);
            if (lloyd(inst.dataset, centers).partition == inst.target) ++hit;
        }
        const double p0 = krich_hit_probability(k);
        const double sigma = std::sqrt(p0 * (1.0 - p0) / double(trials));
        const double rate = double(hit) / double(trials);
        hits.trial();
        if (rate < p0 - 3.0 * sigma) {
            hits.violation({{"sizes", shapes[s]}, {"rate", rate}, {"bound", p0}, {"trials", trials}});
        }
        if (!detail.empty()) detail += "; ";
        detail += json(shapes[s]).dump() + " " + fmt(rate, 4) + " vs " + fmt(p0, 4);
    }
    return {ideal.done("all compositions with n <= 9"), hits.done("hit rate vs k!/k^k: " + detail)};
}

std::vector<CheckResult> suite_centric_local(const ExperimentConfig& cfg) {
    const std::size_t instances = pick(cfg.trials, 500);
    Rng rng = stream(cfg.seed, 3);
    Tally t("kmeans-local-min-preserved");
    std::size_t refined = 0;
    for (std::size_t s = 0; s < instances; ++s) {
        const std::size_t n = uniform_index(rng, 6, 30);
        const std::size_t m = uniform_index(rng, 1, 3);
        const std::size_t k = uniform_index(rng, 2, 4);
        const Dataset x = clustered_dataset(rng, n, m, uniform_index(rng, 1, 5));
        const auto start = seed(x, k, Seeding::uniform_random, rng);
        const Partition lloyd_partition = lloyd(x, start).partition;
        const Partition p = descend_to_local_min(x, lloyd_partition);
        if (!(p == lloyd_partition)) ++refined;
        const std::size_t c = uniform_index(rng, 0, p.cluster_count() - 1);
        for (double lambda : {0.9, 0.5, 0.1}) {
            t.trial();
            const Dataset y = centric_transform(x, p, c, lambda);
            const auto report = is_local_min(y, p, false);
            if (!report.local_min) {
                t.violation({{"points", rows_json(x)},
                             {"partition", p.clusters()},
                             {"cluster", c},
                             {"lambda", lambda},
                             {"move", {report.witness->point, report.witness->from, report.witness->to}}});
            }
        }
    }
    return {t.done(std::to_string(instances) + " instances, n<=30, lambda in {0.9,0.5,0.1}; " +
                   std::to_string(refined) + " Lloyd results needed single-point descent"),
            threshold_centric_check(cfg.seed, 500)};
}

std::vector<CheckResult> suite_centric_global(const ExperimentConfig& cfg) {
    const std::size_t instances = pick(cfg.trials, 200);
    Rng rng = stream(cfg.seed, 4);
    Tally t("kmeans-global-min-preserved");
    for (std::size_t s = 0; s < instances; ++s) {
        const std::size_t n = uniform_index(rng, 4, 10);
        const std::size_t m = uniform_index(rng, 1, 3);
        const std::size_t k = uniform_index(rng, 2, 3);
        const Dataset x = s % 2 ? uniform_dataset(rng, n, m) : clustered_dataset(rng, n, m, k);
        const Partition p = kmeans_ideal(x, k).partition;
        const std::size_t c = uniform_index(rng, 0, k - 1);
        for (double lambda : {0.9, 0.5, 0.1}) {
            t.trial();
            const Dataset y = centric_transform(x, p, c, lambda);
            if (!contains(ideal_minimizers(y, k, cfg.tolerance), p)) {
                t.violation({{"points", rows_json(x)}, {"partition", p.clusters()}, {"cluster", c}, {"lambda", lambda}});
            }
        }
    }
    return {t.done(std::to_string(instances) + " instances, n<=10, k in {2,3}, lambda in {0.9,0.5,0.1}")};
}

std::vector<CheckResult> suite_motion(const ExperimentConfig& cfg) {
    Tally equal("equal-cluster-bound");
    for (double r : {0.1, 1.0, 2.5, 10.0}) {
        for (double n : {1.0, 10.0, 100.0}) {
            equal.trial();
            const double got = motion_gap_bound(n, r, n, r);
            const double want = r * (std::sqrt(3.0) - 1.0);
            if (std::abs(got - want) > 1e-12 * std::max(1.0, want)) {
                equal.violation({{"r", r}, {"n", n}, {"bound", got}, {"expected", want}});
            }
        }
    }

    Tally takeover("takeover-never-profitable");
    const double radii[] = {0.5, 1.0, 2.0};
    const double fractions[] = {0.25, 0.5, 0.75, 1.0};
    for (std::size_t n1 = 1; n1 < 200; ++n1) {
        for (std::size_t n2 = 2; n1 + n2 <= 200; ++n2) {
            for (double r1 : radii) {
                for (double r2 : radii) {
                    const double g = motion_gap_bound(double(n1), r1, double(n2), r2);
                    for (std::size_t n21 = 1; 2 * n21 <= n2; ++n21) {
                        for (double f : fractions) {
                            takeover.trial();
                            const double r21 = f * r2;
                            const double gain = takeover_gain(double(n1), r1, double(n2), r2, double(n21), r21, g);
                            const double scale = double(n2) * r2 * r2;
                            if (gain < -1e-9 * scale) {
                                takeover.violation({{"n1", n1}, {"n2", n2}, {"r1", r1}, {"r2", r2}, {"n21", n21},
                                                    {"r21", r21}, {"g", g}, {"gain", gain}});
                            }
                        }
                    }
                }
            }
        }
    }

    Tally conservative("bound-dominates-direct-root");
    Rng rng = stream(cfg.seed, 5);
    for (std::size_t s = 0; s < 10000; ++s) {
        const double n1 = double(uniform_index(rng, 1, 200));
        const double n2 = double(uniform_index(rng, 2, 200));
        const double r1 = uniform(rng, 0.1, 5.0);
        const double r2 = uniform(rng, 0.1, 5.0);
        const double n21 = double(uniform_index(rng, 1, std::size_t(n2) / 2));
        const double r21 = uniform(rng, 0.0, r2);
        conservative.trial();
        const double root = takeover_root(n1, r1, n2, r2, n21, r21);
        if (root > motion_gap_bound(n1, r1, n2, r2) + 1e-12 * (r1 + r2)) {
            conservative.violation({{"n1", n1}, {"n2", n2}, {"r1", r1}, {"r2", r2}, {"n21", n21}, {"r21", r21}});
        }
    }

    Tally moved("motion-keeps-local-min");
    const std::size_t instances = pick(cfg.trials, 200);
    for (std::size_t s = 0; s < instances; ++s) {
        const std::size_t m = uniform_index(rng, 1, 3);
        const std::size_t n1 = uniform_index(rng, 2, 25);
        const std::size_t n2 = uniform_index(rng, 2, 25);
        const Eigen::MatrixXd a = ball_cloud(rng, n1, m, uniform(rng, 0.5, 2.0));
        const Eigen::MatrixXd b = ball_cloud(rng, n2, m, uniform(rng, 0.5, 2.0));
        const double r1 = max_row_norm(a), r2 = max_row_norm(b);
        const double g = std::max(motion_gap_bound(double(n1), r1, double(n2), r2),
                                  motion_gap_bound(double(n2), r2, double(n1), r1)) * uniform(rng, 1.0, 1.5) + 1e-9;
        const Eigen::RowVectorXd u = random_direction(rng, m);
        Eigen::MatrixXd pts(static_cast<Eigen::Index>(n1 + n2), static_cast<Eigen::Index>(m));
        pts.topRows(static_cast<Eigen::Index>(n1)) = a;
        pts.bottomRows(static_cast<Eigen::Index>(n2)) = b.rowwise() + (r1 + r2 + g) * u;
        const Dataset x(pts);
        std::vector<std::size_t> labels(n1 + n2, 0);
        std::fill(labels.begin() + static_cast<std::ptrdiff_t>(n1), labels.end(), 1);
        const Partition p = Partition::from_labels(labels);
        moved.trial();
        const bool before = is_local_min(x, p, false).local_min;
        const auto motion = motion_transform(x, p, 1, uniform(rng, 0.0, 5.0) * u);
        const bool after = is_local_min(motion.dataset, p, false).local_min;
        if (!before || !after || !motion.legal()) {
            moved.violation({{"points", rows_json(x)}, {"gap", g}, {"before", before}, {"after", after},
                             {"legal", motion.legal()}});
        }
    }

    return {equal.done("motion_gap_bound(n, r, n, r) = r(sqrt(3) - 1)"),
            takeover.done("n1 + n2 <= 200, all n21 <= n2/2, r21 in {0.25,0.5,0.75,1} r2, gap = bound"),
            conservative.done("10000 random parameter sets"),
            moved.done(std::to_string(instances) + " two-ball instances separated by the bound, then moved apart")};
}

struct TwoBalls {
    Dataset x;
    std::size_t n_a;
    Eigen::RowVectorXd mu_a;
    Eigen::RowVectorXd mu_b;
    double r_a;
    double r_b;
};

TwoBalls two_balls(Rng& rng, double center_distance_over_rho, bool core_regime, double& gap) {
    const std::size_t m = uniform_index(rng, 1, 3);
    const std::size_t na = uniform_index(rng, 2, 30);
    const std::size_t nb = uniform_index(rng, 2, 30);
    const Eigen::MatrixXd a = ball_cloud(rng, na, m, uniform(rng, 0.5, 2.0));
    const Eigen::MatrixXd b = ball_cloud(rng, nb, m, uniform(rng, 0.5, 2.0));
    const double ra = max_row_norm(a), rb = max_row_norm(b);
    const double rho = std::max(ra, rb);
    const double dist = core_regime ? 2.0 * rho + (gap = rho * uniform(rng, 0.05, 1.95))
                                    : rho * center_distance_over_rho;
    const Eigen::RowVectorXd u = random_direction(rng, m);
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(na + nb), static_cast<Eigen::Index>(m));
    pts.topRows(static_cast<Eigen::Index>(na)) = a;
    pts.bottomRows(static_cast<Eigen::Index>(nb)) = b.rowwise() + dist * u;
    return {Dataset(pts), na, Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(m)), dist * u, ra, rb};
}

std::vector<CheckResult> suite_separation_4rho(const ExperimentConfig& cfg) {
    const std::size_t instances = pick(cfg.trials, 1000);
    Rng rng = stream(cfg.seed, 6);
    Tally t("no-leak-through-convergence");
    for (std::size_t s = 0; s < instances; ++s) {
        double unused = 0.0;
        const auto inst = two_balls(rng, 4.0 * uniform(rng, 1.0, 1.5), false, unused);
        const std::size_t n = inst.x.size();
        Eigen::MatrixXd seeds(2, static_cast<Eigen::Index>(inst.x.dim()));
        seeds.row(0) = inst.x.point(uniform_index(rng, 0, inst.n_a - 1));
        seeds.row(1) = inst.x.point(uniform_index(rng, inst.n_a, n - 1));
        bool leaked = false;
        const auto result = lloyd(inst.x, seeds, 300, [&](const std::vector<std::size_t>& labels) {
            for (std::size_t i = 0; i < n; ++i) leaked = leaked || labels[i] != (i < inst.n_a ? 0u : 1u);
        });
        t.trial();
        std::vector<std::size_t> truth(n, 0);
        std::fill(truth.begin() + static_cast<std::ptrdiff_t>(inst.n_a), truth.end(), 1);
        if (leaked || !(result.partition == Partition::from_labels(truth))) {
            t.violation({{"points", rows_json(inst.x)}, {"n_a", inst.n_a}, {"seeds", rows_json(Dataset(seeds))}});
        }
    }
    return {t.done(std::to_string(instances) + " two-ball instances, center distance in [4, 6] rho, one seed per ball")};
}

std::vector<CheckResult> suite_core_preservation(const ExperimentConfig& cfg) {
    const std::size_t instances = pick(cfg.trials, 1000);
    Rng rng = stream(cfg.seed, 7);
    Tally t("core-never-crosses");
    std::size_t core_points = 0;
    for (std::size_t s = 0; s < instances; ++s) {
        double g = 0.0;
        const auto inst = two_balls(rng, 0.0, true, g);
        const std::size_t n = inst.x.size();
        const std::size_t m = inst.x.dim();
        Eigen::MatrixXd seeds(2, static_cast<Eigen::Index>(m));
        seeds.row(0) = inst.mu_a + inst.r_a * std::pow(uniform(rng, 0.0, 1.0), 1.0 / double(m)) * random_direction(rng, m);
        seeds.row(1) = inst.mu_b + inst.r_b * std::pow(uniform(rng, 0.0, 1.0), 1.0 / double(m)) * random_direction(rng, m);
        std::vector<int> core(n, -1);
        for (std::size_t i = 0; i < n; ++i) {
            if ((inst.x.point(i) - inst.mu_a).norm() <= g / 2.0) core[i] = 0;
            if ((inst.x.point(i) - inst.mu_b).norm() <= g / 2.0) core[i] = 1;
            if (core[i] >= 0) ++core_points;
        }
        std::size_t crossings = 0;
        lloyd(inst.x, seeds, 300, [&](const std::vector<std::size_t>& labels) {
            for (std::size_t i = 0; i < n; ++i) {
                if (core[i] >= 0 && labels[i] != std::size_t(core[i])) ++crossings;
            }
        });
        t.trial();
        if (crossings) {
            t.violation({{"points", rows_json(inst.x)}, {"n_a", inst.n_a}, {"gap", g}, {"seeds", rows_json(Dataset(seeds))},
                         {"crossings", crossings}});
        }
    }
    return {t.done(std::to_string(instances) + " instances at center distance 2 rho + g, g in (0, 2 rho), " +
                   std::to_string(core_points) + " core points tracked over every assignment step")};
}

std::vector<CheckResult> suite_absolute_global(const ExperimentConfig& cfg) {
    const std::size_t wanted = pick(cfg.trials, 100);
    Rng rng = stream(cfg.seed, 8);
    Tally t("certified-partition-is-global-min");
    std::size_t generated = 0;
    while (t.result.trials < wanted) {
        ++generated;
        const std::size_t k = uniform_index(rng, 2, 3);
        const std::size_t n = uniform_index(rng, std::max<std::size_t>(4, k), 10);
        const std::size_t m = uniform_index(rng, 1, 3);
        std::vector<std::size_t> sizes(k, 1);
        for (std::size_t extra = k; extra < n; ++extra) ++sizes[uniform_index(rng, 0, k - 1)];
        std::vector<Eigen::MatrixXd> clouds;
        std::vector<BallSummary> balls;
        for (std::size_t c = 0; c < k; ++c) {
            clouds.push_back(ball_cloud(rng, sizes[c], m, uniform(rng, 0.2, 1.0)));
            balls.push_back({Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(m)), max_row_norm(clouds.back()), sizes[c]});
        }
        double rmax = 0.0;
        for (const auto& b : balls) rmax = std::max(rmax, b.radius);
        const double step = (absolute_gap_bound(balls, k, n).bound() + 2.0 * rmax) * uniform(rng, 1.0, 1.5);
        const Eigen::RowVectorXd u = random_direction(rng, m);
        Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
        std::vector<std::size_t> labels;
        Eigen::Index row = 0;
        for (std::size_t c = 0; c < k; ++c) {
            for (Eigen::Index i = 0; i < clouds[c].rows(); ++i) {
                pts.row(row++) = clouds[c].row(i) + double(c) * step * u;
                labels.push_back(c);
            }
        }
        const Dataset x(pts);
        const Partition p = Partition::from_labels(labels);
        if (!certify(x, p).absolute) continue;
        t.trial();
        if (!contains(ideal_minimizers(x, k, cfg.tolerance), p)) {
            t.violation({{"points", rows_json(x)}, {"partition", p.clusters()}});
        }
    }
    return {t.done(std::to_string(wanted) + " certified instances (" + std::to_string(generated) +
                   " generated), n<=10, k in {2,3}")};
}

std::vector<CheckResult> suite_interference(const ExperimentConfig&) {
    Tally t("interference-witness");
    t.trial();
    try {
        const auto w = interference_witness();
        const json witness{{"before", w.before_positions}, {"after", w.after_positions}, {"partition", w.partition.clusters()},
                           {"alpha", w.alpha}, {"pair", {w.i, w.j}}, {"original", w.original}, {"rescaled", w.rescaled}};
        t.result.witness = witness.dump();
        if (!(w.gamma_valid && w.rescaled < w.original)) t.violation(witness);
        return {t.done("cross-cluster distance " + fmt(w.original) + " becomes " + fmt(w.rescaled) +
                       " after the Gamma-transform and rescaling by " + fmt(w.alpha))};
    } catch (const std::logic_error& e) {
        t.violation({{"error", e.what()}});
        return {t.done(e.what())};
    }
}

using SuiteFn = std::vector<CheckResult> (*)(const ExperimentConfig&);

const std::map<std::string, SuiteFn>& suite_table() {
    static const std::map<std::string, SuiteFn> table{
        {"scale-invariance", suite_scale_invariance},
        {"k-richness", suite_k_richness},
        {"centric-consistency-local", suite_centric_local},
        {"centric-consistency-global", suite_centric_global},
        {"motion-consistency", suite_motion},
        {"separation-4rho", suite_separation_4rho},
        {"core-preservation", suite_core_preservation},
        {"absolute-global", suite_absolute_global},
        {"interference", suite_interference},
    };
    return table;
}

// -------------------------------------------------------------------------
// Table 3

struct PublishedRow {
    std::size_t k;
    double original, kleinberg, centric;
};

constexpr PublishedRow kPublished[] = {
    {2, 54.3, 98.0, 54.9}, {3, 72.2, 99.17, 74.3}, {4, 83.5, 99.4, 86.0}, {5, 90.2, 99.7, 92.9}, {6, 91.0, 99.7, 93.6}};

constexpr double kCentricLambda = 0.71;  // applied twice
constexpr double kKleinbergShrink = 0.5;
constexpr double kKleinbergSpread = 4.0;
constexpr double kKleinbergShift = 90.0;

double ev_percent(const Dataset& x, std::size_t k, const ExperimentConfig& cfg, std::uint64_t salt) {
    KMeansConfig kc;
    kc.k = k;
    kc.restarts = cfg.restarts;
    kc.rng_seed = cfg.seed * 1000 + salt;
    return 100.0 * kmeans(x, kc).explained_variance;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& SuiteReport::check(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("suite " + suite + " has no check named " + name);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "scale-invariance",  "k-richness",        "centric-consistency-local", "centric-consistency-global",
        "motion-consistency", "separation-4rho", "core-preservation",         "absolute-global",
        "interference"};
    return names;
}

SuiteReport run_suite(const std::string& name, const ExperimentConfig& config) {
    const auto& table = suite_table();
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = name;
    report.config = config;
    report.checks = it->second(config);
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.environment = environment_fingerprint();
    return report;
}

bool Table3Cell::within() const { return std::abs(measured - published) <= tolerance; }

bool Table3Report::passed() const {
    return std::all_of(cells.begin(), cells.end(), [](const Table3Cell& c) { return c.within(); });
}

const Table3Cell& Table3Report::cell(std::size_t k, const std::string& column) const {
    for (const auto& c : cells) {
        if (c.k == k && c.column == column) return c;
    }
    throw std::out_of_range("no Table 3 cell for k = " + std::to_string(k) + ", " + column);
}

Table3Report reproduce_table3(const ExperimentConfig& config) {
    Table3Report report;
    report.config = config;
    Rng rng(config.seed);
    const Dataset x = gaussian_mixture(default_mixture(), rng);

    KMeansConfig kc;
    kc.restarts = config.restarts;
    kc.rng_seed = config.seed;
    kc.k = 5;
    const Partition p5 = kmeans(x, kc).partition;
    kc.k = 2;
    const Partition p2 = kmeans(x, kc).partition;

    // Clusters of the 5-partition lying (by majority) on the smaller side of the 2-partition.
    const std::size_t small_side = p2.cluster(0).size() <= p2.cluster(1).size() ? 0 : 1;
    for (std::size_t c = 0; c < p5.cluster_count(); ++c) {
        std::size_t votes = 0;
        for (std::size_t i : p5.cluster(c)) votes += p2.cluster_of(i) == small_side ? 1 : 0;
        if (2 * votes > p5.cluster(c).size()) report.moved_clusters.push_back(c);
    }
    if (report.moved_clusters.empty() || report.moved_clusters.size() == p5.cluster_count()) {
        throw std::runtime_error("mixture did not split into two groups");
    }
    std::vector<bool> moved(x.size(), false);
    for (std::size_t c : report.moved_clusters) {
        for (std::size_t i : p5.cluster(c)) moved[i] = true;
    }

    // Centric: Gamma* twice on every moved cluster.
    Dataset centric = x;
    for (std::size_t c : report.moved_clusters) {
        centric = centric_transform(centric, p5, c, kCentricLambda);
        centric = centric_transform(centric, p5, c, kCentricLambda);
    }

    // Kleinberg-style: shrink moved clusters, spread them about their group
    // centroid and carry the group far away from the rest.
    Eigen::RowVectorXd g = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(x.dim()));
    Eigen::RowVectorXd h = g;
    std::size_t ng = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (moved[i]) { g += x.point(i); ++ng; } else { h += x.point(i); }
    }
    g /= double(ng);
    h /= double(x.size() - ng);
    const Eigen::RowVectorXd shift = kKleinbergShift * (g - h).normalized();
    const Eigen::MatrixXd mu = cluster_means(x, p5);
    Eigen::MatrixXd z = x.points();
    for (std::size_t c : report.moved_clusters) {
        const Eigen::RowVectorXd m = mu.row(static_cast<Eigen::Index>(c));
        for (std::size_t i : p5.cluster(c)) {
            z.row(static_cast<Eigen::Index>(i)) = g + kKleinbergSpread * (m - g) + kKleinbergShrink * (x.point(i) - m) + shift;
        }
    }
    const Dataset kleinberg(z);
    report.kleinberg_gamma_valid = is_gamma_transform(distance_matrix(x), distance_matrix(kleinberg), p5).valid;

    for (const auto& row : kPublished) {
        report.cells.push_back({row.k, "original", ev_percent(x, row.k, config, 10 + row.k), row.original, 3.0});
        report.cells.push_back({row.k, "kleinberg", ev_percent(kleinberg, row.k, config, 20 + row.k), row.kleinberg, 1.0});
        report.cells.push_back({row.k, "centric", ev_percent(centric, row.k, config, 30 + row.k), row.centric, 3.0});
    }
    return report;
}

std::string environment_fingerprint() {
    std::string compiler;
#if defined(__clang__)
    compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
    compiler = "gcc " __VERSION__;
#else
    compiler = "unknown compiler";
#endif
    return compiler + "; Eigen " + std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
           std::to_string(EIGEN_MINOR_VERSION) + "; C++ " + std::to_string(__cplusplus);
}

}  // namespace axiomlab
