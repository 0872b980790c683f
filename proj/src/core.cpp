#include "axiomlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace axiomlab {

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(Eigen::MatrixXd points) : points_(std::move(points)) {
    if (points_.rows() < 2) {
        throw std::invalid_argument("dataset needs at least 2 points");
    }
    if (points_.cols() < 1) {
        throw std::invalid_argument("dataset points need dimension >= 1");
    }
    if (!points_.allFinite()) {
        throw std::invalid_argument("dataset coordinates must be finite");
    }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("dataset needs at least 2 points");
    }
    const std::size_t m = rows.front().size();
    Eigen::MatrixXd points(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m) {
            throw std::invalid_argument("dataset rows have differing dimensions");
        }
        for (std::size_t a = 0; a < m; ++a) {
            points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = rows[i][a];
        }
    }
    return Dataset(std::move(points));
}

Dataset Dataset::prefix(std::size_t count) const {
    if (count > size()) {
        throw std::out_of_range("prefix longer than dataset");
    }
    return Dataset(points_.topRows(static_cast<Eigen::Index>(count)));
}

// ---------------------------------------------------------------------------
// DistanceMatrix

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
    if (d_.rows() != d_.cols()) {
        throw std::invalid_argument("distance matrix must be square");
    }
    if (d_.rows() < 1) {
        throw std::invalid_argument("distance matrix is empty");
    }
    if (!d_.allFinite()) {
        throw std::invalid_argument("distance matrix entries must be finite");
    }
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<std::vector<std::size_t>> clusters) {
    std::size_t n = 0;
    for (const auto& c : clusters) {
        if (c.empty()) {
            throw std::invalid_argument("partition contains an empty cluster");
        }
        n += c.size();
    }
    if (n == 0) {
        throw std::invalid_argument("partition is empty");
    }
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> labels(n, unset);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t i : clusters[c]) {
            if (i >= n) {
                throw std::invalid_argument("partition element " + std::to_string(i) +
                                            " out of range for " + std::to_string(n) + " elements");
            }
            if (labels[i] != unset) {
                throw std::invalid_argument("partition element " + std::to_string(i) +
                                            " appears in two clusters");
            }
            labels[i] = c;
        }
    }
    rebuild_from_labels(labels);
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
    if (labels.empty()) {
        throw std::invalid_argument("partition is empty");
    }
    Partition p;
    p.rebuild_from_labels(labels);
    return p;
}

Partition Partition::single_cluster(std::size_t n) {
    std::vector<std::size_t> labels(n, 0);
    return from_labels(labels);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i;
    return from_labels(labels);
}

void Partition::rebuild_from_labels(std::span<const std::size_t> labels) {
    std::vector<std::size_t> remap;
    std::vector<std::size_t> seen_labels;
    labels_.assign(labels.size(), 0);
    clusters_.clear();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::find(seen_labels.begin(), seen_labels.end(), labels[i]);
        std::size_t canon;
        if (it == seen_labels.end()) {
            canon = seen_labels.size();
            seen_labels.push_back(labels[i]);
            clusters_.emplace_back();
        } else {
            canon = static_cast<std::size_t>(it - seen_labels.begin());
        }
        labels_[i] = canon;
        clusters_[canon].push_back(i);
    }
}

Partition Partition::restrict_to_prefix(std::size_t count) const {
    if (count == 0 || count > size()) {
        throw std::out_of_range("prefix length out of range");
    }
    return from_labels(std::span<const std::size_t>(labels_.data(), count));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < clusters_.size(); ++c) {
        if (c) os << ' ';
        os << '{';
        for (std::size_t t = 0; t < clusters_[c].size(); ++t) {
            if (t) os << ',';
            os << clusters_[c][t];
        }
        os << '}';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Distances

DistanceMatrix distance_matrix(const Dataset& dataset) {
    const auto n = static_cast<Eigen::Index>(dataset.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dij = (dataset.points().row(i) - dataset.points().row(j)).norm();
            if (!(dij > 0.0)) {
                throw std::invalid_argument("points " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " coincide; distances must be positive");
            }
            d(i, j) = d(j, i) = dij;
        }
    }
    return DistanceMatrix(std::move(d));
}

DistanceValidation validate_distance(const DistanceMatrix& d, bool require_metric) {
    DistanceValidation report;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i) != 0.0) report.nonzero_diagonal.push_back(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d(i, j) != d(j, i)) report.asymmetric.emplace_back(i, j);
            if (!(d(i, j) > 0.0) || !(d(j, i) > 0.0)) report.nonpositive.emplace_back(i, j);
        }
    }
    if (require_metric) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = i + 1; k < n; ++k) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i || j == k) continue;
                    const double detour = d(i, j) + d(j, k);
                    if (d(i, k) > detour) {
                        report.triangle.push_back({i, j, k, d(i, k), detour});
                    }
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Enumeration

EnumerationCapExceeded::EnumerationCapExceeded(std::size_t n_, std::size_t cap_)
    : std::length_error("refusing to enumerate partitions of " + std::to_string(n_) +
                        " elements: exceeds the enumeration cap of " + std::to_string(cap_) +
                        " (set AXIOMLAB_ENUM_CAP to override)"),
      n(n_),
      cap(cap_) {}

std::size_t enumeration_cap() {
    if (const char* env = std::getenv("AXIOMLAB_ENUM_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultEnumerationCap;
}

PartitionEnumerator::PartitionEnumerator(std::size_t n, std::optional<std::size_t> k,
                                         std::size_t cap)
    : n_(n), max_blocks_(k.value_or(n)), exact_(k.has_value()) {
    if (n == 0) {
        throw std::invalid_argument("cannot enumerate partitions of an empty set");
    }
    if (n > cap) {
        throw EnumerationCapExceeded(n, cap);
    }
    if (exact_ && (max_blocks_ < 1 || max_blocks_ > n)) {
        throw std::invalid_argument("cluster count k must satisfy 1 <= k <= n");
    }
    labels_.assign(n_, 0);
    prefix_max_.assign(n_, 0);
    fill_suffix(1);
    block_count_ = prefix_max_.back() + 1;
}

void PartitionEnumerator::fill_suffix(std::size_t from) {
    for (std::size_t j = from; j < n_; ++j) {
        const std::size_t current_max = prefix_max_[j - 1];
        std::size_t value = 0;
        if (exact_) {
            const std::size_t still_needed = (max_blocks_ - 1) - current_max;
            if (still_needed >= n_ - j) value = current_max + 1;
        }
        labels_[j] = value;
        prefix_max_[j] = std::max(current_max, value);
    }
}

void PartitionEnumerator::advance() {
    if (done_) return;
    for (std::size_t i = n_; i-- > 1;) {
        const std::size_t candidate = labels_[i] + 1;
        const std::size_t pm = prefix_max_[i - 1];
        if (candidate > pm + 1 || candidate + 1 > max_blocks_) continue;
        const std::size_t new_max = std::max(pm, candidate);
        if (exact_ && (max_blocks_ - 1) - new_max > n_ - 1 - i) continue;
        labels_[i] = candidate;
        prefix_max_[i] = new_max;
        fill_suffix(i + 1);
        block_count_ = prefix_max_.back() + 1;
        return;
    }
    done_ = true;
}

std::vector<Partition> enumerate_partitions(std::size_t n, std::optional<std::size_t> k) {
    std::vector<Partition> out;
    for (PartitionEnumerator e(n, k); !e.done(); e.advance()) out.push_back(e.partition());
    return out;
}

// ---------------------------------------------------------------------------
// Embedding

double ComplexCoordinates::rigid_squared_distance(Eigen::Ref<const Eigen::RowVectorXd> a,
                                                  Eigen::Ref<const Eigen::RowVectorXd> b) const {
    double s = 0.0;
    for (std::size_t ax = 0; ax < axes.size(); ++ax) {
        const double diff = a(static_cast<Eigen::Index>(ax)) - b(static_cast<Eigen::Index>(ax));
        s += axes[ax] == AxisKind::real ? diff * diff : -diff * diff;
    }
    return s;
}

Eigen::MatrixXd ComplexCoordinates::rigid_squared_distances() const {
    const auto n = values.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            out(i, j) = out(j, i) = rigid_squared_distance(values.row(i), values.row(j));
        }
    }
    return out;
}

Eigen::MatrixXd ComplexCoordinates::rigid_distances() const {
    return rigid_squared_distances().unaryExpr(
        [](double s) { return s >= 0.0 ? std::sqrt(s) : -std::sqrt(-s); });
}

std::size_t EmbeddingReport::imaginary_axes() const {
    return static_cast<std::size_t>(
        std::count(coordinates.axes.begin(), coordinates.axes.end(), AxisKind::imaginary));
}

EmbeddingReport EmbeddingReport::truncated(double relative) const {
    EmbeddingReport out;
    out.eigenvalues = eigenvalues;
    out.embeddable = embeddable;
    const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    out.tolerance = std::max(tolerance, relative * scale);
    // Axes are stored in eigenvalue order with |eigenvalue| > tolerance; the
    // axis magnitude is sqrt(|eigenvalue|) times a unit eigenvector, so its
    // squared norm recovers |eigenvalue|.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index a = 0; a < coordinates.values.cols(); ++a) {
        if (coordinates.values.col(a).squaredNorm() >= out.tolerance) keep.push_back(a);
    }
    out.coordinates.values.resize(coordinates.values.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t t = 0; t < keep.size(); ++t) {
        out.coordinates.values.col(static_cast<Eigen::Index>(t)) = coordinates.values.col(keep[t]);
        out.coordinates.axes.push_back(coordinates.axes[static_cast<std::size_t>(keep[t])]);
    }
    return out;
}

EmbeddingReport embeddability_check(const DistanceMatrix& d, double relative_tolerance) {
    const auto validation = validate_distance(d, false);
    if (!validation.is_distance()) {
        throw std::invalid_argument(
            "embeddability_check needs a distance function (zero diagonal, symmetric, positive)");
    }
    const auto n = static_cast<Eigen::Index>(d.size());
    const Eigen::MatrixXd squared = d.matrix().cwiseProduct(d.matrix());
    const Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
    Eigen::MatrixXd gram = -0.5 * centering * squared * centering;
    gram = 0.5 * (gram + gram.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of the double-centred Gram matrix failed");
    }
    const Eigen::VectorXd ascending = solver.eigenvalues();
    const Eigen::MatrixXd vectors = solver.eigenvectors();

    EmbeddingReport report;
    report.eigenvalues = ascending.reverse();
    const double scale = ascending.cwiseAbs().maxCoeff();
    report.tolerance = relative_tolerance * scale;
    report.embeddable = ascending.minCoeff() >= -report.tolerance;

    std::vector<Eigen::Index> axes;
    for (Eigen::Index t = n; t-- > 0;) {
        if (std::abs(ascending(t)) > report.tolerance) axes.push_back(t);
    }
    report.coordinates.values.resize(n, static_cast<Eigen::Index>(axes.size()));
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const double lambda = ascending(axes[a]);
        report.coordinates.values.col(static_cast<Eigen::Index>(a)) =
            vectors.col(axes[a]) * std::sqrt(std::abs(lambda));
        report.coordinates.axes.push_back(lambda >= 0.0 ? AxisKind::real : AxisKind::imaginary);
    }
    return report;
}

double complex_objective(const ComplexCoordinates& coords, const Partition& partition,
                         const std::optional<Eigen::MatrixXd>& centers) {
    if (static_cast<std::size_t>(coords.values.cols()) != coords.axes.size()) {
        throw std::invalid_argument("coordinate columns do not match axis tags");
    }
    if (partition.size() != coords.size()) {
        throw std::invalid_argument("partition does not cover the coordinate rows");
    }
    const auto k = static_cast<Eigen::Index>(partition.cluster_count());
    Eigen::MatrixXd mu;
    if (centers) {
        if (centers->rows() != k || centers->cols() != coords.values.cols()) {
            throw std::invalid_argument("centers must be k x r matching the coordinates");
        }
        mu = *centers;
    } else {
        mu = Eigen::MatrixXd::Zero(k, coords.values.cols());
        for (Eigen::Index c = 0; c < k; ++c) {
            for (std::size_t i : partition.cluster(static_cast<std::size_t>(c))) {
                mu.row(c) += coords.values.row(static_cast<Eigen::Index>(i));
            }
            mu.row(c) /= double(partition.cluster(static_cast<std::size_t>(c)).size());
        }
    }
    double q = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        q += coords.rigid_squared_distance(coords.values.row(static_cast<Eigen::Index>(i)),
                                           mu.row(static_cast<Eigen::Index>(partition.cluster_of(i))));
    }
    return q;
}

}  // namespace axiomlab
