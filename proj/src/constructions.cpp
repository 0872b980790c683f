#include "axiomlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace axiomlab {

std::vector<double> krich_gaps(const std::vector<std::size_t>& sizes) {
    std::vector<double> gaps;
    double extent = 0.0;  // first element of cluster 1 to last element of cluster i
    std::size_t combined = 0;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        if (i > 0) extent += gaps.back();
        extent += sizes[i] > 1 ? 1.0 : 0.0;
        combined += sizes[i];
        const double next = double(sizes[i + 1]);
        const double gap = 2.0 * extent * (double(combined) + next) / next;
        gaps.push_back(std::max(gap, kKrichMinimumGap));
    }
    return gaps;
}

LabelledDataset krich_line(std::vector<std::size_t> sizes) {
    if (sizes.empty()) throw std::invalid_argument("krich_line needs at least one cluster");
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) {
        throw std::invalid_argument("cluster sizes must be >= 1");
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    const auto gaps = krich_gaps(sizes);
    const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (n < 2) throw std::invalid_argument("krich_line needs at least two points");

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 1);
    std::vector<std::size_t> labels;
    double start = 0.0;
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        const std::size_t s = sizes[c];
        for (std::size_t t = 0; t < s; ++t) {
            x(row++, 0) = s == 1 ? start : start + double(t) / double(s - 1);
            labels.push_back(c);
        }
        if (c < gaps.size()) start += (s > 1 ? 1.0 : 0.0) + gaps[c];
    }
    return {Dataset(std::move(x)), Partition::from_labels(labels)};
}

Dataset rotated_segments(bool rotated, std::size_t per_segment, std::mt19937_64& rng) {
    if (per_segment < 1) throw std::invalid_argument("need at least one point per segment");
    const Eigen::RowVector3d a(1, 0, 0), d(-1, 0, 0);
    Eigen::RowVector3d b(33, 32, 0), c(33, -32, 0);
    const Eigen::RowVector3d e(-33, 0, -32), f(-33, 0, 32);
    if (rotated) {
        const double length = (b - a).norm();
        const double angle = kRotationDegrees * std::numbers::pi / 180.0;
        b = a + length * Eigen::RowVector3d(std::cos(angle), std::sin(angle), 0);
        c = a + length * Eigen::RowVector3d(std::cos(angle), -std::sin(angle), 0);
    }
    const std::pair<Eigen::RowVector3d, Eigen::RowVector3d> segments[] = {{a, b}, {a, c}, {d, e}, {d, f}};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(4 * per_segment), 3);
    Eigen::Index row = 0;
    for (const auto& [from, to] : segments) {
        for (std::size_t p = 0; p < per_segment; ++p) {
            double t = unit(rng);
            while (t == 0.0) t = unit(rng);  // open segment
            x.row(row++) = from + t * (to - from);
        }
    }
    return Dataset(std::move(x));
}

RotatedPair rotated_segments_pair(std::size_t per_segment, std::uint64_t seed) {
    std::mt19937_64 rng_a(seed);
    std::mt19937_64 rng_b(seed);
    std::vector<std::size_t> labels(4 * per_segment, 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(2 * per_segment), labels.end(), 1);
    return {rotated_segments(false, per_segment, rng_a), rotated_segments(true, per_segment, rng_b),
            Partition::from_labels(labels)};
}

Dataset gaussian_mixture(const std::vector<GaussianComponent>& components, std::mt19937_64& rng) {
    if (components.empty()) throw std::invalid_argument("mixture needs at least one component");
    const Eigen::Index m = components.front().mean.size();
    std::size_t total = 0;
    std::vector<Eigen::MatrixXd> roots;
    for (const auto& comp : components) {
        if (comp.mean.size() != m || comp.covariance.rows() != m || comp.covariance.cols() != m) {
            throw std::invalid_argument("component dimensions disagree");
        }
        if (!comp.covariance.isApprox(comp.covariance.transpose())) {
            throw std::invalid_argument("covariance must be symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(comp.covariance);
        const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
        if (solver.eigenvalues().minCoeff() < -1e-12 * scale) {
            throw std::invalid_argument("covariance must be positive semidefinite");
        }
        const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        roots.push_back(solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().transpose());
        total += comp.count;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(total), m);
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (std::size_t p = 0; p < components[c].count; ++p) {
            Eigen::RowVectorXd z(m);
            for (Eigen::Index a = 0; a < m; ++a) z(a) = normal(rng);
            x.row(row++) = components[c].mean + z * roots[c];
        }
    }
    return Dataset(std::move(x));
}

std::vector<GaussianComponent> default_mixture() {
    // Chosen so that k-means explained variance tracks the published
    // percentages for k = 2..6 (the original parameters were not published).
    const double spread = 0.96;
    const double means[5][2] = {{-4.57, -1.743}, {-0.87, -1.743}, {4.08, 2.40}, {4.08, -2.40}, {-2.72, 3.8}};
    std::vector<GaussianComponent> components;
    for (const auto& mu : means) {
        components.push_back({Eigen::RowVector2d(spread * mu[0], spread * mu[1]), Eigen::Matrix2d::Identity(), 200});
    }
    return components;
}

Partition mixture_partition(const std::vector<GaussianComponent>& components) {
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < components.size(); ++c) labels.insert(labels.end(), components[c].count, c);
    return Partition::from_labels(labels);
}

FixtureTables fixture_tables() {
    Eigen::MatrixXd d(6, 6);
    d << 0, 10, 2.236, 20, 22.361, 20.125,     //
        10, 0, 6.708, 22.361, 20, 21.095,      //
        2.236, 6.708, 0, 20.125, 21.095, 20,   //
        20, 22.361, 20.125, 0, 10, 2.236,      //
        22.361, 20, 21.095, 10, 0, 6.708,      //
        20.125, 21.095, 20, 2.236, 6.708, 0;
    ComplexCoordinates coords;
    coords.values.resize(6, 3);
    coords.values << 5, 10, 1,  //
        -5, 10, 1,              //
        2, 10, -1,              //
        5, -10, 1,              //
        -5, -10, 1,             //
        2, -10, -1;
    coords.axes = {AxisKind::real, AxisKind::real, AxisKind::imaginary};

    Eigen::MatrixXd printed(2, 3), exact(2, 3);
    printed << 0, 0, -10.18, 0, 0, 9.198;
    exact << 0, 0, -(std::sqrt(125.0) - 1.0), 0, 0, std::sqrt(104.0) - 1.0;
    return {DistanceMatrix(std::move(d)), std::move(coords), printed, exact, {"A", "B", "C", "D", "E", "F"}};
}

Dataset table4_points() {
    Eigen::MatrixXd x(10, 2);
    x << 4.022346, 5.142886,  //
        3.745942, 4.646777,   //
        4.442992, 5.164956,   //
        3.616975, 5.188107,   //
        3.807503, 5.010183,   //
        4.169602, 4.874328,   //
        3.557578, 5.248182,   //
        3.876208, 4.507264,   //
        4.102748, 5.073515,   //
        3.895329, 4.878176;
    return Dataset(std::move(x));
}

Dataset embed_partition(const DistanceMatrix& d, const Partition& partition, std::size_t m) {
    if (m < 1) throw std::invalid_argument("embedding dimension must be >= 1");
    if (d.size() <= 2) throw std::invalid_argument("embed_partition needs more than two elements");
    if (partition.size() != d.size()) throw std::invalid_argument("partition does not match the distances");
    const double dmax = d.max();

    std::vector<double> radius(partition.cluster_count(), 0.0);
    for (std::size_t c = 0; c < partition.cluster_count(); ++c) {
        const auto& members = partition.cluster(c);
        if (members.size() < 2) continue;
        double least = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) least = std::min(least, d(members[a], members[b]));
        }
        radius[c] = 0.5 * least;
    }

    // Balls strung along the first axis, neighbours dmax apart between surfaces.
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(m));
    double center = 0.0;
    for (std::size_t c = 0; c < partition.cluster_count(); ++c) {
        if (c > 0) center += radius[c - 1] + dmax + radius[c];
        const auto& members = partition.cluster(c);
        for (std::size_t t = 0; t < members.size(); ++t) {
            const double offset =
                members.size() == 1 ? 0.0 : -radius[c] + 2.0 * radius[c] * double(t) / double(members.size() - 1);
            x(static_cast<Eigen::Index>(members[t]), 0) = center + offset;
        }
    }
    return Dataset(std::move(x));
}

Partition threshold_clustering(const Dataset& dataset) {
    const std::size_t n = dataset.size();
    const auto& x = dataset.points();
    const Eigen::RowVectorXd span = x.colwise().maxCoeff() - x.colwise().minCoeff();

    if (dataset.dim() >= 2) {
        double largest = -1.0;
        std::size_t attained = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dist = (dataset.point(i) - dataset.point(j)).cwiseAbs().maxCoeff();
                if (dist > largest) {
                    largest = dist;
                    attained = 1;
                } else if (dist == largest) {
                    ++attained;
                }
            }
        }
        if (largest > 0.0 && attained > 1) {
            throw std::domain_error("threshold clustering needs a unique largest distance; " +
                                    std::to_string(attained) + " pairs tie");
        }
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    const double divisor = double(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool linked = true;
            for (Eigen::Index a = 0; a < x.cols() && linked; ++a) {
                if (span(a) == 0.0) continue;
                linked = std::abs(x(static_cast<Eigen::Index>(i), a) - x(static_cast<Eigen::Index>(j), a)) <
                         span(a) / divisor;
            }
            if (linked) parent[find(j)] = find(i);
        }
    }
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = find(i);
    return Partition::from_labels(labels);
}

std::vector<PrefixOptimum> exhaustive_best_partition(const Dataset& dataset, const PartitionQuality& quality,
                                                     std::optional<std::size_t> k) {
    if (dataset.size() > enumeration_cap()) throw EnumerationCapExceeded(dataset.size(), enumeration_cap());
    std::vector<PrefixOptimum> out;
    for (std::size_t p = 2; p <= dataset.size(); ++p) {
        if (k && *k > p) continue;
        const Dataset prefix = dataset.prefix(p);
        std::optional<Partition> best;
        double best_q = std::numeric_limits<double>::infinity();
        for (PartitionEnumerator e(p, k); !e.done(); e.advance()) {
            Partition candidate = e.partition();
            const double q = quality(prefix, candidate);
            if (!best || q < best_q) {
                best_q = q;
                best = std::move(candidate);
            }
        }
        const bool extends = out.empty() || best->restrict_to_prefix(p - 1) == out.back().best;
        out.push_back({p, *best, best_q, extends});
    }
    return out;
}

double parity_quality(const Dataset& dataset, const Partition& partition) {
    double score = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (std::size_t j = i + 1; j < dataset.size(); ++j) {
            const auto q = static_cast<long long>(std::llround(1000.0 * (dataset.point(i) - dataset.point(j)).norm()));
            if (partition.same_cluster(i, j)) {
                score += (q % 2 == 1) ? 1.0 : 0.0;
            } else {
                score += (q % 3 == 0) ? 1.0 : 0.0;
            }
        }
    }
    return score;
}

}  // namespace axiomlab
