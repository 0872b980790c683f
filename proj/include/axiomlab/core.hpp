#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace axiomlab {

/// n points in R^m, stored one point per row. Requires n >= 2, m >= 1 and
/// finite coordinates.
class Dataset {
public:
    explicit Dataset(Eigen::MatrixXd points);
    static Dataset from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }

    Eigen::MatrixXd::ConstRowXpr point(std::size_t i) const {
        return points_.row(static_cast<Eigen::Index>(i));
    }
    const Eigen::MatrixXd& points() const noexcept { return points_; }

    Eigen::RowVectorXd mean() const { return points_.colwise().mean(); }

    /// First `count` points (count >= 2).
    Dataset prefix(std::size_t count) const;

private:
    Eigen::MatrixXd points_;
};

/// Square table of dissimilarities. Only squareness and finiteness are
/// enforced here; the distance axioms are checked by validate_distance so
/// that broken tables can still be inspected.
class DistanceMatrix {
public:
    explicit DistanceMatrix(Eigen::MatrixXd d);

    std::size_t size() const noexcept { return static_cast<std::size_t>(d_.rows()); }
    double operator()(std::size_t i, std::size_t j) const {
        return d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Eigen::MatrixXd& matrix() const noexcept { return d_; }
    double max() const { return d_.maxCoeff(); }

private:
    Eigen::MatrixXd d_;
};

/// Disjoint nonempty cover of {0..n-1}. Always held in canonical form:
/// members sorted, clusters ordered by their smallest member, so labels()
/// is a restricted growth string and operator== is structural equality.
class Partition {
public:
    explicit Partition(std::vector<std::vector<std::size_t>> clusters);
    static Partition from_labels(std::span<const std::size_t> labels);
    static Partition single_cluster(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t cluster_count() const noexcept { return clusters_.size(); }
    const std::vector<std::vector<std::size_t>>& clusters() const noexcept { return clusters_; }
    const std::vector<std::size_t>& cluster(std::size_t c) const { return clusters_.at(c); }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }
    std::size_t cluster_of(std::size_t i) const { return labels_.at(i); }
    bool same_cluster(std::size_t i, std::size_t j) const { return labels_.at(i) == labels_.at(j); }

    /// Restriction to the elements {0..count-1}.
    Partition restrict_to_prefix(std::size_t count) const;

    std::string to_string() const;

    bool operator==(const Partition& other) const { return labels_ == other.labels_; }

private:
    Partition() = default;
    void rebuild_from_labels(std::span<const std::size_t> labels);

    std::vector<std::vector<std::size_t>> clusters_;
    std::vector<std::size_t> labels_;
};

// ---------------------------------------------------------------------------
// Distances

DistanceMatrix distance_matrix(const Dataset& dataset);

struct TriangleViolation {
    // d(i,k) > d(i,j) + d(j,k)
    std::size_t i;
    std::size_t j;
    std::size_t k;
    double direct;
    double detour;
};

struct DistanceValidation {
    std::vector<std::size_t> nonzero_diagonal;
    std::vector<std::pair<std::size_t, std::size_t>> asymmetric;
    std::vector<std::pair<std::size_t, std::size_t>> nonpositive;
    std::vector<TriangleViolation> triangle;

    bool is_distance() const {
        return nonzero_diagonal.empty() && asymmetric.empty() && nonpositive.empty();
    }
    bool ok() const { return is_distance() && triangle.empty(); }
};

DistanceValidation validate_distance(const DistanceMatrix& d, bool require_metric);

// ---------------------------------------------------------------------------
// Partition enumeration

class EnumerationCapExceeded : public std::length_error {
public:
    EnumerationCapExceeded(std::size_t n, std::size_t cap);
    std::size_t n;
    std::size_t cap;
};

inline constexpr std::size_t kDefaultEnumerationCap = 12;

/// Reads AXIOMLAB_ENUM_CAP, falling back to kDefaultEnumerationCap.
std::size_t enumeration_cap();

/// Walks every partition of {0..n-1} (optionally with exactly k clusters)
/// in lexicographic order of restricted growth strings, which is the
/// canonical order used for tie breaking throughout the library.
class PartitionEnumerator {
public:
    PartitionEnumerator(std::size_t n, std::optional<std::size_t> k = std::nullopt,
                        std::size_t cap = enumeration_cap());

    bool done() const noexcept { return done_; }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }
    std::size_t cluster_count() const noexcept { return block_count_; }
    Partition partition() const { return Partition::from_labels(labels_); }
    void advance();

private:
    void fill_suffix(std::size_t from);

    std::size_t n_;
    std::size_t max_blocks_;
    bool exact_;
    std::vector<std::size_t> labels_;
    std::vector<std::size_t> prefix_max_;  // max label over labels_[0..i]
    std::size_t block_count_ = 0;
    bool done_ = false;
};

std::vector<Partition> enumerate_partitions(std::size_t n, std::optional<std::size_t> k = std::nullopt);

// ---------------------------------------------------------------------------
// Euclidean embeddability

enum class AxisKind { real, imaginary };

/// Coordinates in a space whose axes are either real or purely imaginary.
/// values(i, a) holds the real coefficient on axis a; for an imaginary axis
/// the coordinate is values(i, a) * i. Squared "rigid" distances sum real
/// differences squared and subtract imaginary differences squared.
struct ComplexCoordinates {
    Eigen::MatrixXd values;
    std::vector<AxisKind> axes;

    std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
    std::size_t dim() const { return axes.size(); }

    double rigid_squared_distance(Eigen::Ref<const Eigen::RowVectorXd> a,
                                  Eigen::Ref<const Eigen::RowVectorXd> b) const;
    Eigen::MatrixXd rigid_squared_distances() const;
    /// Signed square root of the rigid squared distances.
    Eigen::MatrixXd rigid_distances() const;
};

struct EmbeddingReport {
    Eigen::VectorXd eigenvalues;  // descending
    bool embeddable = false;
    double tolerance = 0.0;       // absolute cutoff actually applied
    ComplexCoordinates coordinates;

    std::size_t imaginary_axes() const;
    /// Keeps only axes whose |eigenvalue| >= relative * max|eigenvalue|.
    EmbeddingReport truncated(double relative) const;
};

inline constexpr double kEigenRelativeTolerance = 1e-8;

EmbeddingReport embeddability_check(const DistanceMatrix& d,
                                    double relative_tolerance = kEigenRelativeTolerance);

/// Sum over points of the rigid squared distance to the point's cluster
/// center. Centers default to the per-cluster coordinate means.
double complex_objective(const ComplexCoordinates& coords, const Partition& partition,
                         const std::optional<Eigen::MatrixXd>& centers = std::nullopt);

}  // namespace axiomlab
