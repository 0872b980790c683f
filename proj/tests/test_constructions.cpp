#include <numeric>
#include <random>

#include "axiomlab/constructions.hpp"
#include "axiomlab/kmeans.hpp"
#include "axiomlab/separation.hpp"
#include "axiomlab/transforms.hpp"
#include "doctest.h"

using namespace axiomlab;

namespace {

Partition random_partition(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = rng() % 3;
    return Partition::from_labels(labels);
}

DistanceMatrix random_distances(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.2, 2.0);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < d.rows(); ++j) d(i, j) = d(j, i) = u(rng);
    }
    return DistanceMatrix(d);
}

}  // namespace

TEST_CASE("line construction for two singletons") {
    const auto inst = krich_line({1, 1});
    CHECK(inst.dataset.size() == 2);
    CHECK(krich_gaps({1, 1}) == std::vector<double>{kKrichMinimumGap});
    CHECK(inst.target == Partition::singletons(2));
}

TEST_CASE("line construction layout") {
    const auto inst = krich_line({2, 3});
    // Sorted to (3, 2): first cluster spans [0, 1].
    CHECK(inst.dataset.point(0)(0) == 0.0);
    CHECK(inst.dataset.point(1)(0) == 0.5);
    CHECK(inst.dataset.point(2)(0) == 1.0);
    CHECK(inst.target == Partition({{0, 1, 2}, {3, 4}}));
    CHECK(kmeans_ideal(inst.dataset, 2).partition == inst.target);
    CHECK_THROWS(krich_line({}));
    CHECK_THROWS(krich_line({2, 0}));
}

TEST_CASE("line construction beats random seeding") {
    const auto inst = krich_line({3, 2, 2});
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.seeding = Seeding::uniform_random;
    std::size_t hits = 0;
    const std::size_t runs = 2000;
    for (std::size_t r = 0; r < runs; ++r) {
        cfg.rng_seed = r;
        hits += kmeans(inst.dataset, cfg).partition == inst.target;
    }
    CHECK(double(hits) / double(runs) >= krich_hit_probability(3));
}

TEST_CASE("rotated segments") {
    const auto pair = rotated_segments_pair(1000, 42);
    CHECK(pair.original.size() == 4000);
    CHECK(pair.rotated.size() == 4000);
    CHECK(is_gamma_transform(distance_matrix(pair.original), distance_matrix(pair.rotated), pair.partition).valid);

    KMeansConfig cfg;
    cfg.k = 2;
    cfg.restarts = 100;
    cfg.rng_seed = 42;
    const auto before = kmeans(pair.original, cfg);
    CHECK(before.explained_variance == doctest::Approx(0.40).epsilon(0.075));
    std::vector<double> xs{before.centers(0, 0), before.centers(1, 0)};
    std::sort(xs.begin(), xs.end());
    CHECK(xs[0] == doctest::Approx(-17.0).epsilon(0.088));
    CHECK(xs[1] == doctest::Approx(17.0).epsilon(0.088));

    const auto after = kmeans(pair.rotated, cfg);
    CHECK(after.explained_variance == doctest::Approx(0.59).epsilon(0.05));
    std::vector<std::size_t> sizes{after.partition.cluster(0).size(), after.partition.cluster(1).size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes[0] >= 1700);
    CHECK(sizes[0] <= 1900);
    CHECK(before.partition != after.partition);
}

TEST_CASE("Gaussian mixture") {
    std::mt19937_64 rng(1);
    GaussianComponent point{Eigen::RowVector2d(3.0, -1.0), Eigen::Matrix2d::Zero(), 5};
    const auto x = gaussian_mixture({point, {Eigen::RowVector2d(0, 0), Eigen::Matrix2d::Identity(), 5}}, rng);
    for (std::size_t i = 0; i < 5; ++i) CHECK(x.point(i) == Eigen::RowVector2d(3.0, -1.0));
    Eigen::Matrix2d bad;
    bad << 1, 0, 0, -1;
    CHECK_THROWS(gaussian_mixture({{Eigen::RowVector2d(0, 0), bad, 3}}, rng));

    const auto components = default_mixture();
    CHECK(components.size() == 5);
    CHECK(mixture_partition(components).cluster_count() == 5);
    const auto mix = gaussian_mixture(components, rng);
    CHECK(mix.size() == 1000);
    KMeansConfig cfg;
    cfg.k = 5;
    cfg.restarts = 10;
    CHECK(kmeans(mix, cfg).explained_variance == doctest::Approx(0.90).epsilon(0.033));
}

TEST_CASE("six-point fixture") {
    const auto t = fixture_tables();
    CHECK(t.names.front() == "A");
    CHECK(t.distances(0, 1) == 10.0);
    CHECK(t.embedding.values.row(5) == Eigen::RowVector3d(2.0, -10.0, -1.0));
    CHECK((t.embedding.rigid_distances() - t.distances.matrix()).cwiseAbs().maxCoeff() < 1e-2);
    CHECK(table4_points().size() == 10);
}

TEST_CASE("embedding a partition") {
    std::mt19937_64 rng(6);
    int recovered = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng() % 6;
        const auto d = random_distances(rng, n);
        const auto p = random_partition(rng, n);
        const auto x = embed_partition(d, p, 2);
        CHECK(is_gamma_transform(d, distance_matrix(x), p).valid);

        // Exhaustive recovery is only promised when dmax >= 4 max r_i.
        double r = 0.0;
        for (const auto& members : p.clusters()) {
            double least = 1e300;
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) least = std::min(least, d(members[a], members[b]));
            }
            if (members.size() > 1) r = std::max(r, least / 2);
        }
        if (d.max() < 4 * r) continue;
        ++recovered;
        CHECK(kmeans_ideal(x, p.cluster_count()).partition == p);
    }
    CHECK(recovered > 10);

    const auto d = random_distances(rng, 5);
    const auto x = embed_partition(d, Partition::singletons(5), 1);
    const auto e = distance_matrix(x);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i + 1; j < 5; ++j) CHECK(e(i, j) >= d.max() * (1 - 1e-12));
    }
}

TEST_CASE("threshold clustering") {
    const auto x = Dataset::from_rows({{0.0}, {0.01}, {1.0}});
    CHECK(threshold_clustering(x) == Partition({{0, 1}, {2}}));
    for (double a : {1e-3, 0.7, 42.0}) CHECK(threshold_clustering(scale(x, a)) == Partition({{0, 1}, {2}}));

    // Strictly below the threshold links; reaching it does not.
    const auto edge = Dataset::from_rows({{0.0}, {0.25}, {1.0}});
    CHECK(threshold_clustering(edge) == Partition::singletons(3));

    const auto flat = Dataset::from_rows({{2.0}, {2.0}});
    CHECK(threshold_clustering(flat) == Partition::single_cluster(2));

    const auto square = Dataset::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(threshold_clustering(square), std::domain_error);
}

TEST_CASE("threshold clustering keeps its clusters under an inner shrink") {
    const auto x = Dataset::from_rows({{0.0}, {0.01}, {0.5}, {0.52}, {1.0}});
    const auto p = threshold_clustering(x);
    CHECK(p == Partition({{0, 1}, {2, 3}, {4}}));
    // Shrinking the middle cluster leaves the span and hence the threshold alone.
    CHECK(threshold_clustering(centric_transform(x, p, 1, 0.3)) == p);
}

TEST_CASE("threshold clustering is not centric-consistent for extreme clusters") {
    // Span 1, threshold 0.2 for n = 4: {0, 0.19} and {0.81, 1}.
    const auto x = Dataset::from_rows({{0.0}, {0.19}, {0.81}, {1.0}});
    const auto p = threshold_clustering(x);
    REQUIRE(p == Partition({{0, 1}, {2, 3}}));
    // Shrinking the left cluster narrows the span to 0.9145, the threshold
    // to 0.1829, and the gap of 0.19 on the right no longer links.
    const auto y = centric_transform(x, p, 0, 0.1);
    CHECK(threshold_clustering(y) == Partition({{0, 1}, {2}, {3}}));
}

TEST_CASE("prefix optima") {
    const auto x = Dataset::from_rows({{0.0}, {1.0}, {10.0}, {11.0}});
    const auto q = [](const Dataset& d, const Partition& p) { return objective_q(d, p); };
    const auto best = exhaustive_best_partition(x, q, 2);
    REQUIRE(best.size() == 3);
    CHECK(best.back().prefix == 4);
    CHECK(best.back().best == kmeans_ideal(x, 2).partition);

    const auto constant = exhaustive_best_partition(x, [](const Dataset&, const Partition&) { return 1.0; });
    for (const auto& b : constant) CHECK(b.best == Partition::single_cluster(b.prefix));

    const auto erratic = exhaustive_best_partition(table4_points(), parity_quality);
    CHECK(erratic.size() == 9);
    CHECK(std::any_of(erratic.begin() + 1, erratic.end(), [](const PrefixOptimum& o) { return !o.extends_previous; }));
}
