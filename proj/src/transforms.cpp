#include "axiomlab/transforms.hpp"

#include <cmath>

#include "axiomlab/kmeans.hpp"
#include "json.hpp"

namespace axiomlab {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("scale factor must be a positive finite number");
    }
}

void require_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda = " + std::to_string(lambda) + " outside (0, 1]");
    }
}

void require_cover(const Dataset& dataset, const Partition& partition) {
    if (partition.size() != dataset.size()) {
        throw std::invalid_argument("partition does not cover the dataset");
    }
}

Eigen::RowVectorXd mean_of(const Dataset& dataset, const std::vector<std::size_t>& members) {
    Eigen::RowVectorXd mu = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(dataset.dim()));
    for (std::size_t i : members) mu += dataset.point(i);
    return mu / double(members.size());
}

Dataset line(const std::vector<double>& positions) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(positions.size()), 1);
    for (std::size_t i = 0; i < positions.size(); ++i) x(static_cast<Eigen::Index>(i), 0) = positions[i];
    return Dataset(std::move(x));
}

}  // namespace

DistanceMatrix scale(const DistanceMatrix& d, double alpha) {
    require_alpha(alpha);
    return DistanceMatrix(alpha * d.matrix());
}

Dataset scale(const Dataset& dataset, double alpha) {
    require_alpha(alpha);
    return Dataset(alpha * dataset.points());
}

GammaCheck is_gamma_transform(const DistanceMatrix& d, const DistanceMatrix& d2, const Partition& partition,
                              double relative_tolerance) {
    if (d.size() != d2.size() || d.size() != partition.size()) {
        throw std::invalid_argument("distance matrices and partition differ in size");
    }
    // Distances computed from coordinates carry rounding error proportional to
    // the coordinate scale, so the slack is relative to the largest distance.
    const double slack = relative_tolerance * std::max(d.max(), d2.max());
    GammaCheck check;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const bool same = partition.same_cluster(i, j);
            const double before = d(i, j);
            const double after = d2(i, j);
            const bool bad = same ? after > before + slack : after < before - slack;
            if (bad) {
                check.valid = false;
                check.violations.push_back({i, j, same, before, after});
            }
        }
    }
    return check;
}

Dataset centric_transform(const Dataset& dataset, const Partition& partition, std::size_t cluster,
                          double lambda) {
    require_cover(dataset, partition);
    require_lambda(lambda);
    if (cluster >= partition.cluster_count()) throw std::out_of_range("no such cluster");
    const auto& members = partition.cluster(cluster);
    const Eigen::RowVectorXd mu = mean_of(dataset, members);
    Eigen::MatrixXd x = dataset.points();
    for (std::size_t i : members) {
        x.row(static_cast<Eigen::Index>(i)) = mu + lambda * (dataset.point(i) - mu);
    }
    return Dataset(std::move(x));
}

bool enclosing_balls_disjoint(const Dataset& dataset, const Partition& partition) {
    require_cover(dataset, partition);
    const std::size_t k = partition.cluster_count();
    std::vector<Eigen::RowVectorXd> centers;
    std::vector<double> radii;
    for (std::size_t c = 0; c < k; ++c) {
        centers.push_back(mean_of(dataset, partition.cluster(c)));
        double r = 0.0;
        for (std::size_t i : partition.cluster(c)) r = std::max(r, (dataset.point(i) - centers.back()).norm());
        radii.push_back(r);
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const double reach = radii[a] + radii[b];
            if ((centers[a] - centers[b]).norm() < reach * (1.0 - kGammaRelativeTolerance)) return false;
        }
    }
    return true;
}

MotionResult motion_transform(const Dataset& dataset, const Partition& partition, std::size_t cluster,
                              const Eigen::RowVectorXd& v) {
    require_cover(dataset, partition);
    if (cluster >= partition.cluster_count()) throw std::out_of_range("no such cluster");
    if (static_cast<std::size_t>(v.size()) != dataset.dim()) {
        throw std::invalid_argument("motion vector dimension does not match the dataset");
    }
    Eigen::MatrixXd x = dataset.points();
    for (std::size_t i : partition.cluster(cluster)) x.row(static_cast<Eigen::Index>(i)) += v;
    MotionResult out{Dataset(std::move(x))};

    const Eigen::MatrixXd before = cluster_means(dataset, partition);
    const Eigen::MatrixXd after = cluster_means(out.dataset, partition);
    const auto c = static_cast<Eigen::Index>(cluster);
    for (Eigen::Index o = 0; o < before.rows(); ++o) {
        if (o == c) continue;
        const double was = (before.row(c) - before.row(o)).norm();
        const double now = (after.row(c) - after.row(o)).norm();
        if (now < was * (1.0 - kGammaRelativeTolerance)) out.centers_nondecreasing = false;
    }
    out.balls_disjoint = enclosing_balls_disjoint(out.dataset, partition);
    return out;
}

Dataset inner_proportional_transform(const Dataset& dataset, const Partition& partition,
                                     std::span<const double> lambdas) {
    require_cover(dataset, partition);
    if (lambdas.size() != partition.cluster_count()) {
        throw std::invalid_argument("need one lambda per cluster");
    }
    for (double l : lambdas) require_lambda(l);
    Eigen::MatrixXd x = dataset.points();
    for (std::size_t c = 0; c < partition.cluster_count(); ++c) {
        const auto& members = partition.cluster(c);
        const Eigen::RowVectorXd mu = mean_of(dataset, members);
        for (std::size_t i : members) {
            x.row(static_cast<Eigen::Index>(i)) = mu + lambdas[c] * (dataset.point(i) - mu);
        }
    }
    return Dataset(std::move(x));
}

DiscreteConsistencyResult discrete_consistency_transform(const Dataset& dataset, const Partition& partition,
                                                         const Eigen::MatrixXd& motions,
                                                         std::span<const double> lambdas) {
    if (static_cast<std::size_t>(motions.rows()) != partition.cluster_count() ||
        static_cast<std::size_t>(motions.cols()) != dataset.dim()) {
        throw std::invalid_argument("motions must be k x m");
    }
    Eigen::MatrixXd x = inner_proportional_transform(dataset, partition, lambdas).points();
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) += motions.row(static_cast<Eigen::Index>(partition.cluster_of(i)));
    }
    DiscreteConsistencyResult out{Dataset(std::move(x)), {}};
    out.check = is_gamma_transform(distance_matrix(dataset), distance_matrix(out.dataset), partition);
    return out;
}

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::scale: return "scale";
        case TransformKind::kleinberg_gamma: return "kleinberg-gamma";
        case TransformKind::centric: return "centric";
        case TransformKind::motion: return "motion";
        case TransformKind::inner_proportional: return "inner-proportional";
        case TransformKind::composite: return "composite";
    }
    return "unknown";
}

TransformKind parse_transform_kind(const std::string& name) {
    for (auto kind : {TransformKind::scale, TransformKind::kleinberg_gamma, TransformKind::centric,
                      TransformKind::motion, TransformKind::inner_proportional, TransformKind::composite}) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown transform kind '" + name + "'");
}

void TransformRecord::validate() const {
    if (alpha) require_alpha(*alpha);
    for (double l : lambdas) require_lambda(l);
    if (kind == TransformKind::scale && !alpha) throw std::invalid_argument("scale needs alpha");
    if (kind == TransformKind::centric && (!cluster || lambdas.size() != 1)) {
        throw std::invalid_argument("centric needs a cluster and one lambda");
    }
    if (kind == TransformKind::motion && (!cluster || vector.empty())) {
        throw std::invalid_argument("motion needs a cluster and a vector");
    }
}

std::string TransformRecord::to_json() const {
    nlohmann::json j{{"kind", to_string(kind)}};
    if (cluster) j["cluster"] = *cluster;
    if (alpha) j["alpha"] = *alpha;
    if (lambdas.size() == 1 && kind == TransformKind::centric) {
        j["lambda"] = lambdas.front();
    } else if (!lambdas.empty()) {
        j["lambda"] = lambdas;
    }
    if (!vector.empty()) j["vector"] = vector;
    return j.dump();
}

TransformRecord TransformRecord::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    TransformRecord r;
    r.kind = parse_transform_kind(j.at("kind").get<std::string>());
    if (j.contains("cluster")) r.cluster = j.at("cluster").get<std::size_t>();
    if (j.contains("alpha")) r.alpha = j.at("alpha").get<double>();
    if (j.contains("lambda")) {
        const auto& l = j.at("lambda");
        r.lambdas = l.is_array() ? l.get<std::vector<double>>() : std::vector<double>{l.get<double>()};
    }
    if (j.contains("vector")) r.vector = j.at("vector").get<std::vector<double>>();
    r.validate();
    return r;
}

InterferenceWitness interference_witness() {
    const std::vector<double> before{0.0, 0.4, 0.6, 1.0};
    const std::vector<double> after{0.0, 0.5, 0.6, 2.0};
    const Partition partition({{0}, {1, 2}, {3}});
    const double alpha = 0.5;
    const auto d1 = distance_matrix(line(before));
    const auto d3 = distance_matrix(line(after));
    const auto rescaled = scale(d3, alpha);

    InterferenceWitness w{before, after, partition, alpha, 0, 0, 0.0, 0.0,
                          is_gamma_transform(d1, d3, partition).valid};
    if (!w.gamma_valid) throw std::logic_error("interference construction is not a Gamma-transform");
    double worst = 0.0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        for (std::size_t j = i + 1; j < d1.size(); ++j) {
            if (partition.same_cluster(i, j)) continue;
            const double drop = d1(i, j) - rescaled(i, j);
            if (drop > worst) {
                worst = drop;
                w.i = i;
                w.j = j;
                w.original = d1(i, j);
                w.rescaled = rescaled(i, j);
            }
        }
    }
    if (!(worst > 0.0)) throw std::logic_error("no cross-cluster distance decreased");
    return w;
}

}  // namespace axiomlab
