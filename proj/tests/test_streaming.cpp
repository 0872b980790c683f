#include <random>

#include "axiomlab/constructions.hpp"
#include "axiomlab/streaming.hpp"
#include "doctest.h"

using namespace axiomlab;

namespace {

// Points drawn uniformly in unit discs around the given centers, interleaved.
Dataset disc_stream(const std::vector<Eigen::RowVector2d>& centers, std::size_t per_ball, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(centers.size() * per_ball), 2);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < per_ball; ++i) {
        for (const auto& c : centers) {
            Eigen::RowVector2d p;
            do p = Eigen::RowVector2d(u(rng), u(rng));
            while (p.norm() > 1.0);
            x.row(row++) = c + p;
        }
    }
    return Dataset(x);
}

}  // namespace

TEST_CASE("sequential k-means keeps k distinct points") {
    const auto x = Dataset::from_rows({{0.0, 0.0}, {5.0, 1.0}, {-3.0, 2.0}});
    const auto r = sequential_kmeans(x, 3);
    CHECK(r.centers == x.points());
    CHECK(r.counts == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("sequential k-means finds perfectly separated balls") {
    std::mt19937_64 rng(4);
    const std::vector<Eigen::RowVector2d> truth{{0.0, 0.0}, {20.0, 0.0}, {0.0, 20.0}};
    const auto x = disc_stream(truth, 40, rng);
    const auto r = sequential_kmeans(x, 3);
    for (const auto& t : truth) {
        int hits = 0;
        for (Eigen::Index c = 0; c < r.centers.rows(); ++c) hits += (r.centers.row(c) - t).norm() < 1.0;
        CHECK(hits == 1);
    }
    const auto verdict = second_pass_diagnose(x, r.centers);
    CHECK(verdict.perfect_ball);
}

TEST_CASE("sequential k-means on repeated points is deterministic") {
    const auto x = Dataset::from_rows({{1.0}, {1.0}, {1.0}, {1.0}, {1.0}});
    const auto a = sequential_kmeans(x, 2);
    const auto b = sequential_kmeans(x, 2);
    CHECK(a.centers == b.centers);
    CHECK(a.counts == b.counts);
    CHECK(a.counts[0] + a.counts[1] == 5);
}

TEST_CASE("second pass at the 4 rho boundary") {
    Eigen::MatrixXd c(2, 1);
    c << 0.0, 4.0;
    const auto x = Dataset::from_rows({{-1.0}, {1.0}, {3.0}, {5.0}});
    const auto v = second_pass_diagnose(x, c);
    CHECK(v.max_radius == doctest::Approx(1.0));
    CHECK(v.min_center_distance == doctest::Approx(4.0));
    CHECK(v.perfect_ball);

    c << 0.0, 3.9;
    const auto y = Dataset::from_rows({{-1.0}, {1.0}, {2.9}, {4.9}});
    CHECK_FALSE(second_pass_diagnose(y, c).perfect_ball);
}

TEST_CASE("second pass rejects Gaussian tails") {
    std::mt19937_64 rng(12);
    const auto components = default_mixture();
    const auto x = gaussian_mixture(components, rng);
    const auto r = sequential_kmeans(x, 5);
    CHECK_FALSE(second_pass_diagnose(x, r.centers).perfect_ball);
}

TEST_CASE("candidate tree on two separated balls") {
    std::mt19937_64 rng(9);
    const auto x = disc_stream({{0.0, 0.0}, {10.0, 0.0}}, 15, rng);
    const auto v = candidates_tree(x, 2);
    const TreeNode& root = v.tree.back();
    CHECK(root.count == x.size());
    Eigen::RowVectorXd mean_a = Eigen::RowVectorXd::Zero(2), mean_b = Eigen::RowVectorXd::Zero(2);
    for (std::size_t i = 0; i < x.size(); ++i) (i % 2 == 0 ? mean_a : mean_b) += x.point(i);
    mean_a /= 15.0;
    mean_b /= 15.0;
    const auto& l = v.tree[root.left].center;
    const auto& r = v.tree[root.right].center;
    const bool match = ((l - mean_a).norm() < 1e-9 && (r - mean_b).norm() < 1e-9) ||
                       ((l - mean_b).norm() < 1e-9 && (r - mean_a).norm() < 1e-9);
    CHECK(match);
    CHECK(v.nice_ball);
    CHECK(v.cut.size() == 2);
}

TEST_CASE("candidate tree on an evenly spaced line") {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 12; ++i) rows.push_back({double(i)});
    CHECK_FALSE(candidates_tree(Dataset::from_rows(rows), 2).nice_ball);
}

TEST_CASE("candidate tree on two points") {
    const auto v = candidates_tree(Dataset::from_rows({{0.0}, {1.0}}), 2);
    CHECK(v.nice_ball);
    REQUIRE(v.cut.size() == 2);
    CHECK(v.radii[v.cut[0]] == 0.0);
    CHECK(v.radii[v.cut[1]] == 0.0);
}
