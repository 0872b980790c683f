#include <cmath>
#include <numbers>

#include "axiomlab/kmeans.hpp"
#include "axiomlab/separation.hpp"
#include "axiomlab/transforms.hpp"
#include "doctest.h"

using namespace axiomlab;

namespace {

// `count` points evenly on a circle, so the mean is the center and every
// member sits exactly `radius` away.
void ring(Eigen::MatrixXd& x, Eigen::Index first, std::size_t count, Eigen::RowVector2d center, double radius) {
    for (std::size_t i = 0; i < count; ++i) {
        const double t = 2.0 * std::numbers::pi * double(i) / double(count);
        x.row(first + static_cast<Eigen::Index>(i)) = center + radius * Eigen::RowVector2d(std::cos(t), std::sin(t));
    }
}

Dataset two_rings(std::size_t count, double center_distance, double radius = 1.0) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(2 * count), 2);
    ring(x, 0, count, {0.0, 0.0}, radius);
    ring(x, static_cast<Eigen::Index>(count), count, {center_distance, 0.0}, radius);
    return Dataset(x);
}

Partition halves(std::size_t count) {
    std::vector<std::size_t> labels(2 * count, 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(count), labels.end(), 1);
    return Partition::from_labels(labels);
}

}  // namespace

TEST_CASE("ball summaries") {
    const auto x = Dataset::from_rows({{-1.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}, {7.0, 7.0}});
    const auto b = ball_summaries(x, Partition({{0, 1}, {2}, {3}}));
    CHECK(b[0].center.norm() < 1e-15);
    CHECK(b[0].radius == doctest::Approx(1.0));
    CHECK(b[1].radius == 0.0);
    CHECK(b[0].count == 2);
}

TEST_CASE("ball radius is the largest member distance") {
    const auto x = Dataset::from_rows({{0.0, 0.0}, {3.0, 1.0}, {-1.0, 4.0}, {2.0, 2.0}});
    const auto b = ball_summaries(x, Partition::single_cluster(4));
    double brute = 0.0;
    for (std::size_t i = 0; i < 4; ++i) brute = std::max(brute, (x.point(i) - x.mean()).norm());
    CHECK(b[0].radius == doctest::Approx(brute));
}

TEST_CASE("nice and perfect balls at the boundary") {
    const auto at = certify(two_rings(8, 4.0), halves(8));
    CHECK(at.nice_ball);
    CHECK(at.perfect_ball);

    const auto close = certify(two_rings(8, 3.0), halves(8));
    CHECK_FALSE(close.nice_ball);
    REQUIRE(close.pairs.size() == 1);
    CHECK(close.pairs[0].core_gap == doctest::Approx(1.0));
    CHECK(close.pairs[0].core_radius == doctest::Approx(0.5));
    CHECK(close.core);
}

TEST_CASE("absolute gap bound for two equal clusters") {
    std::vector<BallSummary> s(2);
    s[0].radius = s[1].radius = 1.0;
    s[0].count = s[1].count = 50;
    const auto b = absolute_gap_bound(s, 2, 100);
    CHECK(b.pair_case == doctest::Approx(2.0 * std::sqrt(200.0) * std::sqrt(100.0 / 2500.0)));
    CHECK(b.pair_case == doctest::Approx(5.657).epsilon(1e-3));
    CHECK(b.balance_case == doctest::Approx(std::sqrt(6.0)));
    CHECK(b.bound() == doctest::Approx(b.pair_case));

    const auto c = certify(two_rings(50, 8.0), halves(50));
    CHECK(c.min_ball_gap == doctest::Approx(6.0));
    CHECK(c.absolute);
    CHECK_FALSE(certify(two_rings(50, 7.0), halves(50)).absolute);
}

TEST_CASE("absolute gap bound edge cases") {
    std::vector<BallSummary> s(2);
    s[0].count = s[1].count = 5;
    CHECK(absolute_gap_bound(s, 2, 10).bound() == 0.0);

    s[0].radius = s[1].radius = 1.0;
    double previous = 0.0;
    for (std::size_t big : {5, 20, 80, 320, 1280}) {
        s[0].count = big;
        const double now = absolute_gap_bound(s, 2, big + 5).balance_case;
        CHECK(now > previous);
        previous = now;
    }
}

TEST_CASE("absolute clustering survives inner proportional shrinking") {
    Eigen::MatrixXd x(9, 2);
    ring(x, 0, 5, {0.0, 0.0}, 0.1);
    ring(x, 5, 4, {6.0, 0.0}, 0.1);
    const Dataset d(x);
    const Partition p({{0, 1, 2, 3, 4}, {5, 6, 7, 8}});
    REQUIRE(certify(d, p).absolute);
    CHECK(kmeans_ideal(d, 2).partition == p);
    for (double l : {0.9, 0.5, 0.1}) {
        const std::vector<double> lambdas{l, 1.0 - l / 2};
        CHECK(kmeans_ideal(inner_proportional_transform(d, p, lambdas), 2).partition == p);
    }
}

TEST_CASE("certificate JSON") {
    const auto j = certify(two_rings(4, 10.0), halves(4)).to_json();
    CHECK(j.find("\"absolute\"") != std::string::npos);
    CHECK(j.find("\"pairs\"") != std::string::npos);
}

TEST_CASE("motion gap bound") {
    for (double r : {0.5, 1.0, 3.0}) {
        CHECK(motion_gap_bound(100, r, 100, r) == doctest::Approx(r * (std::sqrt(3.0) - 1.0)));
    }
    CHECK(motion_gap_bound(100, 1.0, 100, 1.0) == doctest::Approx(0.732).epsilon(1e-3));
    CHECK(motion_gap_bound(1e9, 1.0, 1.0, 2.0) == doctest::Approx(2.0 * std::sqrt(2.0) - 1.0));
}

TEST_CASE("takeover is never profitable at the bound") {
    const double n1 = 100, n2 = 100, r = 1.0;
    const double g = motion_gap_bound(n1, r, n2, r);
    for (int n21 = 1; n21 <= 50; ++n21) {
        for (double r21 : {0.1, 0.5, 1.0}) {
            CHECK(takeover_gain(n1, r, n2, r, n21, r21, g) >= -1e-9);
            CHECK(takeover_root(n1, r, n2, r, n21, r21) <= g + 1e-12);
        }
    }
    // The root is where the gain changes sign.
    const double root = takeover_root(10, 1.0, 30, 2.0, 12, 1.5);
    CHECK(takeover_gain(10, 1.0, 30, 2.0, 12, 1.5, root) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("off-core fraction bound") {
    for (double nc : {1.0, 10.0, 50.0}) CHECK(off_core_fraction_bound(2.0, 1.0, nc, 100.0) == doctest::Approx(0.5));
    CHECK(off_core_fraction_bound(1.0, 1.0, 50.0, 100.0) == doctest::Approx(0.25));
    CHECK(off_core_fraction_bound(1e-9, 1.0, 50.0, 100.0) < 1e-8);
}

TEST_CASE("seeding success probabilities") {
    const auto a = seeding_success(0.5, 2, SeedingModel::random);
    CHECK(a.q == doctest::Approx(0.5));
    CHECK(a.restarts == 5);
    CHECK(seeding_success(1.0 / 3.0, 3, SeedingModel::random).q == doctest::Approx(2.0 / 9.0));
    CHECK(seeding_success(0.5, 2, SeedingModel::plus_plus).q == doctest::Approx(4.5 / 6.5));
    CHECK_THROWS(seeding_success(0.6, 2, SeedingModel::random));
    CHECK(krich_hit_probability(3) == doctest::Approx(6.0 / 27.0));
    CHECK(krich_hit_probability(1) == 1.0);
}
