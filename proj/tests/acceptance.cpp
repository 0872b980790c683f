// One pass/fail line per acceptance criterion. Exit status is nonzero when a
// criterion fails that was not declared with --known-failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "axiomlab/constructions.hpp"
#include "axiomlab/harness.hpp"
#include "axiomlab/kmeans.hpp"
#include "axiomlab/transforms.hpp"

using namespace axiomlab;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string num(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

Outcome from_checks(const SuiteReport& r, std::initializer_list<const char*> names) {
    Outcome o{true, ""};
    for (const char* name : names) {
        const auto& c = r.check(name);
        o.passed = o.passed && c.passed;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += std::string(name) + " " + std::to_string(c.violations) + "/" + std::to_string(c.trials) + " violations";
    }
    return o;
}

Dataset gaussian_dataset(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::normal_distribution<double> g(0.0, 3.0);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    return Dataset(x);
}

Partition random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i < k ? i : rng() % k;
    std::shuffle(labels.begin(), labels.end(), rng);
    return Partition::from_labels(labels);
}

// Scatter sum ||x - mu||^2 of a set of rows, accumulated in long double.
long double scatter(const Dataset& x, const std::vector<std::size_t>& members) {
    const auto m = static_cast<Eigen::Index>(x.dim());
    std::vector<long double> mu(static_cast<std::size_t>(m), 0.0L);
    for (std::size_t i : members) {
        for (Eigen::Index a = 0; a < m; ++a) mu[static_cast<std::size_t>(a)] += x.point(i)(a);
    }
    for (auto& v : mu) v /= static_cast<long double>(members.size());
    long double s = 0.0L;
    for (std::size_t i : members) {
        for (Eigen::Index a = 0; a < m; ++a) {
            const long double d = x.point(i)(a) - mu[static_cast<std::size_t>(a)];
            s += d * d;
        }
    }
    return s;
}

Outcome dual_form(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + rng() % 49;
        const std::size_t m = 1 + rng() % 5;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(n, 6);
        const auto x = gaussian_dataset(rng, n, m);
        const auto p = random_labels(rng, n, k);
        const double a = objective_q_centroid(x, p);
        const double b = objective_q_pairwise(x, p);
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
    }
    return {worst <= 1e-9, "1000 instances, n<=50, m<=5, worst relative gap " + num(worst)};
}

Outcome move_identities(std::uint64_t seed) {
    std::mt19937_64 rng(seed + 1);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 4 + rng() % 37;
        const auto x = gaussian_dataset(rng, n, 1 + rng() % 4);
        const auto p = random_labels(rng, n, std::min<std::size_t>(2 + rng() % 3, n - 1));
        // Pick a source cluster with at least two members and any other target.
        std::size_t from;
        do from = rng() % p.cluster_count();
        while (p.cluster(from).size() < 2);
        std::size_t to;
        do to = rng() % p.cluster_count();
        while (to == from);
        const auto& src = p.cluster(from);
        const std::size_t point = src[rng() % src.size()];

        std::vector<std::size_t> src_after, dst_after = p.cluster(to);
        for (std::size_t i : src) if (i != point) src_after.push_back(i);
        dst_after.push_back(point);

        const Eigen::RowVectorXd mu_src = cluster_means(x, p).row(static_cast<Eigen::Index>(from));
        const Eigen::RowVectorXd mu_dst = cluster_means(x, p).row(static_cast<Eigen::Index>(to));
        const double removal = removal_decrease(double(src.size()), (x.point(point) - mu_src).squaredNorm());
        const double insertion = insertion_increase(double(p.cluster(to).size()), (x.point(point) - mu_dst).squaredNorm());
        const double direct_removal = double(scatter(x, src) - scatter(x, src_after));
        const double direct_insertion = double(scatter(x, dst_after) - scatter(x, p.cluster(to)));
        worst = std::max(worst, std::abs(removal - direct_removal) / std::max(std::abs(direct_removal), 1e-300));
        worst = std::max(worst, std::abs(insertion - direct_insertion) / std::max(std::abs(direct_insertion), 1e-300));
    }
    return {worst <= 1e-9, "1000 random moves, worst relative error " + num(worst)};
}

Outcome embedding_fixture() {
    const auto t = fixture_tables();
    const auto v = validate_distance(t.distances, true);
    bool witness = false;
    for (const auto& w : v.triangle) witness = witness || (w.i == 0 && w.j == 2 && w.k == 1);
    const auto e = embeddability_check(t.distances);
    const double negative = e.eigenvalues.minCoeff();
    const double mean_q = complex_objective(t.embedding, Partition({{0, 1, 2}, {3, 4, 5}}));
    const double odd_q = complex_objective(t.embedding, Partition({{0, 1, 3, 4}, {2, 5}}), t.exact_centers);
    const bool ok = !v.ok() && witness && !e.embeddable && negative < -e.tolerance && std::abs(mean_q - 100.0) <= 1.0 &&
                    std::abs(odd_q - 6e-6) <= 1e-4;
    return {ok, std::string("triangle witness (A,C,B) ") + (witness ? "found" : "missing") + ", smallest eigenvalue " +
                    num(negative) + ", objectives " + num(mean_q, 6) + " and " + num(odd_q)};
}

Outcome rotated(std::uint64_t seed) {
    const auto pair = rotated_segments_pair(1000, seed);
    KMeansConfig cfg;
    cfg.k = 2;
    cfg.restarts = 100;
    cfg.rng_seed = seed;
    const auto a = kmeans(pair.original, cfg);
    const auto b = kmeans(pair.rotated, cfg);

    bool centers_ok = true;
    for (Eigen::Index c = 0; c < 2; ++c) {
        const double x = a.centers(c, 0);
        centers_ok = centers_ok && std::abs(std::abs(x) - 17.0) <= 1.5 && std::abs(a.centers(c, 1)) <= 1.5 &&
                     std::abs(a.centers(c, 2)) <= 1.5;
    }
    centers_ok = centers_ok && a.centers(0, 0) * a.centers(1, 0) < 0.0;
    const std::size_t small = std::min(b.partition.cluster(0).size(), b.partition.cluster(1).size());
    const bool ok = std::abs(a.explained_variance - 0.40) <= 0.03 && centers_ok &&
                    std::abs(b.explained_variance - 0.59) <= 0.03 && small >= 1700 && small <= 1900;
    return {ok, "unrotated EV " + num(a.explained_variance, 3) + " centers x " + num(a.centers(0, 0), 3) + ", " +
                    num(a.centers(1, 0), 3) + "; rotated EV " + num(b.explained_variance, 3) + " sizes " +
                    std::to_string(small) + "/" + std::to_string(4000 - small)};
}

Outcome table3(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    const auto t = reproduce_table3(cfg);
    double worst_excess = -1e300;
    std::string where;
    for (const auto& c : t.cells) {
        const double excess = std::abs(c.measured - c.published) - c.tolerance;
        if (excess > worst_excess) {
            worst_excess = excess;
            where = "k=" + std::to_string(c.k) + " " + c.column + " " + num(c.measured, 4) + " vs " + num(c.published, 4);
        }
    }
    return {t.passed() && t.kleinberg_gamma_valid,
            "15 cells, tightest " + where + " (tolerance-based: the original mixture is unpublished)"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = 42;
    std::vector<int> known;
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--known-failure", known, "criterion numbers whose failure is documented");
    CLI11_PARSE(app, argc, argv);
    const std::set<int> known_set(known.begin(), known.end());

    ExperimentConfig cfg;
    cfg.seed = seed;
    std::map<std::string, SuiteReport> suites;
    auto suite = [&](const std::string& name) -> const SuiteReport& {
        auto it = suites.find(name);
        if (it == suites.end()) it = suites.emplace(name, run_suite(name, cfg)).first;
        return it->second;
    };

    struct Criterion {
        int id;
        std::string title;
        double limit_seconds;  // 0 for no limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "objective centroid form equals pairwise form", 5, [&] { return dual_form(seed); }},
        {2, "single-point move identities", 0, [&] { return move_identities(seed); }},
        {3, "exhaustive argmin unchanged by scaling", 60,
         [&] { return from_checks(suite("scale-invariance"), {"kmeans-ideal-argmin"}); }},
        {4, "k-richness of the exhaustive optimum and random seeding", 0,
         [&] { return from_checks(suite("k-richness"), {"ideal-recovery", "random-hit-rate"}); }},
        {5, "centric transform keeps local minima", 0,
         [&] { return from_checks(suite("centric-consistency-local"), {"kmeans-local-min-preserved"}); }},
        {6, "centric transform keeps the global minimum", 600,
         [&] { return from_checks(suite("centric-consistency-global"), {"kmeans-global-min-preserved"}); }},
        {7, "4 rho separation, no leaks through convergence", 0,
         [&] { return from_checks(suite("separation-4rho"), {"no-leak-through-convergence"}); }},
        {8, "core points never cross", 0,
         [&] { return from_checks(suite("core-preservation"), {"core-never-crosses"}); }},
        {9, "motion gap bound", 0,
         [&] {
             return from_checks(suite("motion-consistency"), {"equal-cluster-bound", "takeover-never-profitable"});
         }},
        {10, "absolute separation gives the global minimum", 0,
         [&] { return from_checks(suite("absolute-global"), {"certified-partition-is-global-min"}); }},
        {11, "non-Euclidean distance table and complex embedding", 0, [&] { return embedding_fixture(); }},
        {12, "rotated segments", 30, [&] { return rotated(seed); }},
        {13, "variance-explained grid", 0, [&] { return table3(seed); }},
        {14, "interference witness", 0,
         [&] { return from_checks(suite("interference"), {"interference-witness"}); }},
        {15, "threshold clustering: scale invariance and centric consistency", 0,
         [&] {
             auto a = from_checks(suite("scale-invariance"), {"threshold-scale-invariance"});
             auto b = from_checks(suite("centric-consistency-local"), {"threshold-centric-consistency"});
             return Outcome{a.passed && b.passed, a.detail + "; " + b.detail};
         }},
    };

    int unexpected = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
            o.passed = false;
            o.detail += "; over the " + num(c.limit_seconds) + " s limit";
        }
        std::string note;
        if (!o.passed && known_set.count(c.id)) note = " [known failure, see README]";
        if (!o.passed && !known_set.count(c.id)) ++unexpected;
        std::printf("criterion %2d %s  %s: %s (%.2f s)%s\n", c.id, o.passed ? "PASS" : "FAIL", c.title.c_str(),
                    o.detail.c_str(), seconds, note.c_str());
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}
