#include "axiomlab/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace axiomlab {

namespace {

using Labels = std::vector<std::size_t>;

void require_cover(const Dataset& dataset, const Partition& partition) {
    if (partition.size() != dataset.size()) {
        throw std::invalid_argument("partition covers " + std::to_string(partition.size()) +
                                    " elements but the dataset has " +
                                    std::to_string(dataset.size()) + " points");
    }
}

// Two-pass centroid objective straight from a label vector; used inside the
// exhaustive loops where building Partition objects would dominate.
double labels_objective(const Eigen::MatrixXd& x, const Labels& labels, std::size_t k,
                        Eigen::MatrixXd& sums, std::vector<std::size_t>& counts) {
    sums.setZero(static_cast<Eigen::Index>(k), x.cols());
    counts.assign(k, 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        sums.row(static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)])) += x.row(i);
        ++counts[labels[static_cast<std::size_t>(i)]];
    }
    for (std::size_t c = 0; c < k; ++c) sums.row(static_cast<Eigen::Index>(c)) /= double(counts[c]);
    double q = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        q += (x.row(i) - sums.row(static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)])))
                 .squaredNorm();
    }
    return q;
}

Labels assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers) {
    Labels labels(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Eigen::Index c = 0; c < centers.rows(); ++c) {
            const double dist = (x.row(i) - centers.row(c)).squaredNorm();
            if (dist < best_d) {
                best_d = dist;
                best = static_cast<std::size_t>(c);
            }
        }
        labels[static_cast<std::size_t>(i)] = best;
    }
    return labels;
}

ClusteringResult finish(const Dataset& dataset, const Partition& partition) {
    ClusteringResult r{partition, cluster_means(dataset, partition), 0.0, 0, 0.0, false, false, {}};
    r.objective = objective_q(dataset, partition);
    r.explained_variance = explained_variance(dataset, r.objective);
    return r;
}

}  // namespace

Seeding parse_seeding(const std::string& name) {
    if (name == "uniform-random" || name == "random") return Seeding::uniform_random;
    if (name == "plus-plus" || name == "++") return Seeding::plus_plus;
    if (name == "explicit-centers" || name == "explicit") return Seeding::explicit_centers;
    throw std::invalid_argument("unknown seeding strategy '" + name + "'");
}

std::string to_string(Seeding seeding) {
    switch (seeding) {
        case Seeding::uniform_random: return "uniform-random";
        case Seeding::plus_plus: return "plus-plus";
        case Seeding::explicit_centers: return "explicit-centers";
    }
    return "unknown";
}

void KMeansConfig::validate(std::size_t n) const {
    if (k < 1 || k > n) {
        throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " +
                                    std::to_string(n) + "]");
    }
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (seeding == Seeding::explicit_centers) {
        if (!initial_centers) throw std::invalid_argument("explicit seeding needs initial centers");
        if (static_cast<std::size_t>(initial_centers->rows()) != k) {
            throw std::invalid_argument("explicit seeding needs exactly k centers");
        }
    }
}

std::string ClusteringResult::to_json() const {
    nlohmann::json centers_json = nlohmann::json::array();
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        std::vector<double> row(static_cast<std::size_t>(centers.cols()));
        for (Eigen::Index a = 0; a < centers.cols(); ++a) row[static_cast<std::size_t>(a)] = centers(c, a);
        centers_json.push_back(row);
    }
    nlohmann::json j{{"clusters", partition.clusters()},
                     {"centers", centers_json},
                     {"q", objective},
                     {"iterations", iterations},
                     {"explained_variance", explained_variance},
                     {"converged", converged}};
    return j.dump();
}

Eigen::MatrixXd cluster_means(const Dataset& dataset, const Partition& partition) {
    require_cover(dataset, partition);
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(partition.cluster_count()),
                                               static_cast<Eigen::Index>(dataset.dim()));
    for (std::size_t c = 0; c < partition.cluster_count(); ++c) {
        for (std::size_t i : partition.cluster(c)) mu.row(static_cast<Eigen::Index>(c)) += dataset.point(i);
        mu.row(static_cast<Eigen::Index>(c)) /= double(partition.cluster(c).size());
    }
    return mu;
}

double objective_q_centroid(const Dataset& dataset, const Partition& partition) {
    const Eigen::MatrixXd mu = cluster_means(dataset, partition);
    double q = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        q += (dataset.point(i) - mu.row(static_cast<Eigen::Index>(partition.cluster_of(i)))).squaredNorm();
    }
    return q;
}

double objective_q_pairwise(const Dataset& dataset, const Partition& partition) {
    require_cover(dataset, partition);
    double q = 0.0;
    for (const auto& members : partition.clusters()) {
        double s = 0.0;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                s += (dataset.point(members[a]) - dataset.point(members[b])).squaredNorm();
            }
        }
        q += s / double(members.size());
    }
    return q;
}

double objective_q(const Dataset& dataset, const Partition& partition) {
    const double centroid = objective_q_centroid(dataset, partition);
    const double pairwise = objective_q_pairwise(dataset, partition);
    // Floor for clusters of coincident points, where both forms are rounding noise.
    const double floor = 1e-14 * dataset.points().squaredNorm();
    if (std::abs(centroid - pairwise) > 1e-9 * std::max(std::abs(centroid), std::abs(pairwise)) + floor) {
        throw std::logic_error("centroid and pairwise objective disagree: " + std::to_string(centroid) +
                               " vs " + std::to_string(pairwise));
    }
    return centroid;
}

double total_sum_of_squares(const Dataset& dataset) {
    return (dataset.points().rowwise() - dataset.mean()).squaredNorm();
}

double explained_variance(const Dataset& dataset, double q) {
    const double total = total_sum_of_squares(dataset);
    if (total <= 0.0) return 1.0;
    return std::clamp(1.0 - q / total, 0.0, 1.0);
}

double explained_variance(const Dataset& dataset, const ClusteringResult& result) {
    return explained_variance(dataset, result.objective);
}

Eigen::MatrixXd seed(const Dataset& dataset, std::size_t k, Seeding strategy, std::mt19937_64& rng) {
    const std::size_t n = dataset.size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("cannot seed " + std::to_string(k) + " centers from " +
                                    std::to_string(n) + " points");
    }
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    if (strategy == Seeding::uniform_random) {
        std::vector<std::size_t> pool(n);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t t = 0; t < k; ++t) {
            std::uniform_int_distribution<std::size_t> pick(t, n - 1);
            std::swap(pool[t], pool[pick(rng)]);
            chosen.push_back(pool[t]);
        }
    } else if (strategy == Seeding::plus_plus) {
        std::uniform_int_distribution<std::size_t> first(0, n - 1);
        chosen.push_back(first(rng));
        std::vector<double> d2(n);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = (dataset.point(i) - dataset.point(chosen[0])).squaredNorm();
        }
        std::vector<bool> taken(n, false);
        taken[chosen[0]] = true;
        while (chosen.size() < k) {
            const double mass = std::accumulate(d2.begin(), d2.end(), 0.0);
            std::size_t next;
            if (mass > 0.0) {
                std::discrete_distribution<std::size_t> pick(d2.begin(), d2.end());
                next = pick(rng);
            } else {
                // Every remaining point coincides with a center; fall back to
                // a uniform draw among the unchosen ones.
                std::vector<std::size_t> free;
                for (std::size_t i = 0; i < n; ++i) if (!taken[i]) free.push_back(i);
                std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
                next = free[pick(rng)];
            }
            taken[next] = true;
            chosen.push_back(next);
            for (std::size_t i = 0; i < n; ++i) {
                d2[i] = std::min(d2[i], (dataset.point(i) - dataset.point(next)).squaredNorm());
            }
        }
    } else {
        throw std::invalid_argument("explicit centers are supplied by the caller, not seeded");
    }
    Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(dataset.dim()));
    for (std::size_t t = 0; t < k; ++t) centers.row(static_cast<Eigen::Index>(t)) = dataset.point(chosen[t]);
    return centers;
}

ClusteringResult lloyd(const Dataset& dataset, const Eigen::MatrixXd& initial_centers,
                       std::size_t max_iterations, const AssignmentObserver& observer) {
    const auto k = static_cast<std::size_t>(initial_centers.rows());
    const std::size_t n = dataset.size();
    if (static_cast<std::size_t>(initial_centers.cols()) != dataset.dim()) {
        throw std::invalid_argument("center dimension does not match the dataset");
    }
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n centers");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");

    const Eigen::MatrixXd& x = dataset.points();
    Eigen::MatrixXd centers = initial_centers;
    Labels labels = assign(x, centers);
    if (observer) observer(labels);
    std::vector<double> trace;
    bool converged = false;
    bool empty_event = false;
    std::size_t iterations = 0;
    std::vector<std::size_t> counts;

    while (true) {
        ++iterations;
        counts.assign(k, 0);
        for (std::size_t l : labels) ++counts[l];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            empty_event = true;
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[labels[i]] < 2) continue;
                const double dist =
                    (x.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(labels[i])))
                        .squaredNorm();
                if (dist > far_d) {
                    far_d = dist;
                    far = i;
                }
            }
            --counts[labels[far]];
            labels[far] = c;
            counts[c] = 1;
        }
        const double q = labels_objective(x, labels, k, centers, counts);
        if (!trace.empty() && q > trace.back() * (1.0 + 1e-9) + 1e-300) {
            throw std::logic_error("Lloyd objective increased from " + std::to_string(trace.back()) +
                                   " to " + std::to_string(q));
        }
        trace.push_back(q);
        Labels next = assign(x, centers);
        if (observer) observer(next);
        if (next == labels) {
            converged = true;
            break;
        }
        labels = std::move(next);
        if (iterations >= max_iterations) {
            // The final assignment is kept; report its objective as well.
            break;
        }
    }

    auto r = finish(dataset, Partition::from_labels(labels));
    r.iterations = iterations;
    r.converged = converged;
    r.empty_cluster_event = empty_event;
    r.objective_trace = std::move(trace);
    return r;
}

ClusteringResult kmeans(const Dataset& dataset, const KMeansConfig& config) {
    config.validate(dataset.size());
    std::optional<ClusteringResult> best;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        Eigen::MatrixXd centers;
        if (config.seeding == Seeding::explicit_centers) {
            centers = *config.initial_centers;
        } else {
            std::mt19937_64 rng(config.rng_seed + r);
            centers = seed(dataset, config.k, config.seeding, rng);
        }
        auto result = lloyd(dataset, centers, config.max_iterations);
        if (!best || result.objective < best->objective) best = std::move(result);
    }
    return *best;
}

ClusteringResult kmeans_ideal(const Dataset& dataset, std::size_t k) {
    const Eigen::MatrixXd& x = dataset.points();
    Eigen::MatrixXd scratch;
    std::vector<std::size_t> counts;
    std::optional<Labels> best;
    double best_q = std::numeric_limits<double>::infinity();
    for (PartitionEnumerator e(dataset.size(), k); !e.done(); e.advance()) {
        const double q = labels_objective(x, e.labels(), k, scratch, counts);
        if (!best || q < best_q - 1e-12 * best_q) {
            best_q = q;
            best = e.labels();
        }
    }
    auto r = finish(dataset, Partition::from_labels(*best));
    r.converged = true;
    return r;
}

std::vector<Partition> ideal_minimizers(const Dataset& dataset, std::size_t k, double tolerance) {
    const Eigen::MatrixXd& x = dataset.points();
    Eigen::MatrixXd scratch;
    std::vector<std::size_t> counts;
    std::vector<std::pair<double, Labels>> all;
    double best_q = std::numeric_limits<double>::infinity();
    for (PartitionEnumerator e(dataset.size(), k); !e.done(); e.advance()) {
        const double q = labels_objective(x, e.labels(), k, scratch, counts);
        best_q = std::min(best_q, q);
        all.emplace_back(q, e.labels());
    }
    const double slack = tolerance * std::max(best_q, 1e-12 * total_sum_of_squares(dataset));
    std::vector<Partition> out;
    for (const auto& [q, labels] : all) {
        if (q <= best_q + slack) out.push_back(Partition::from_labels(labels));
    }
    return out;
}

double removal_decrease(double n, double squared_distance_to_mean) {
    if (n < 2) throw std::invalid_argument("cannot remove a point from a singleton cluster");
    return n / (n - 1.0) * squared_distance_to_mean;
}

double insertion_increase(double n, double squared_distance_to_mean) {
    return n / (n + 1.0) * squared_distance_to_mean;
}

LocalMinReport is_local_min(const Dataset& dataset, const Partition& partition, bool verify_identities) {
    require_cover(dataset, partition);
    const Eigen::MatrixXd mu = cluster_means(dataset, partition);
    const std::size_t k = partition.cluster_count();
    LocalMinReport report;

    auto scatter = [&](const std::vector<std::size_t>& members) {
        Eigen::RowVectorXd m = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(dataset.dim()));
        for (std::size_t i : members) m += dataset.point(i);
        m /= double(members.size());
        double v = 0.0;
        for (std::size_t i : members) v += (dataset.point(i) - m).squaredNorm();
        return v;
    };
    auto rel_err = [](double a, double b, double scale) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-300});
    };

    std::vector<double> v(k);
    for (std::size_t c = 0; c < k; ++c) v[c] = scatter(partition.cluster(c));
    const double scale = 1e-12 * total_sum_of_squares(dataset);

    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const std::size_t a = partition.cluster_of(i);
        const double na = double(partition.cluster(a).size());
        const double da = (dataset.point(i) - mu.row(static_cast<Eigen::Index>(a))).squaredNorm();
        if (na < 2) continue;
        const double removal = removal_decrease(na, da);
        if (verify_identities) {
            std::vector<std::size_t> rest;
            for (std::size_t j : partition.cluster(a)) if (j != i) rest.push_back(j);
            report.identity_error = std::max(report.identity_error, rel_err(scatter(rest), v[a] - removal, scale));
        }
        for (std::size_t b = 0; b < k; ++b) {
            if (b == a) continue;
            const double nb = double(partition.cluster(b).size());
            const double db = (dataset.point(i) - mu.row(static_cast<Eigen::Index>(b))).squaredNorm();
            const double insertion = insertion_increase(nb, db);
            if (verify_identities) {
                auto grown = partition.cluster(b);
                grown.push_back(i);
                report.identity_error =
                    std::max(report.identity_error, rel_err(scatter(grown), v[b] + insertion, scale));
            }
            if (removal - insertion > 1e-12 * std::max(removal, insertion)) {
                ImprovingMove move{i, a, b, removal, insertion};
                if (!report.witness || move.gain() > report.witness->gain()) report.witness = move;
                report.local_min = false;
            }
        }
    }
    return report;
}

}  // namespace axiomlab
