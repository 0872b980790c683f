#include "axiomlab/streaming.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <tuple>

namespace axiomlab {

SequentialResult sequential_kmeans(const Dataset& stream, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (stream.size() < k) {
        throw std::invalid_argument("stream of " + std::to_string(stream.size()) +
                                    " points is shorter than k = " + std::to_string(k));
    }
    const auto m = static_cast<Eigen::Index>(stream.dim());
    // Slots 0..k-1 hold the centers; slot k is the newcomer.
    Eigen::MatrixXd t(static_cast<Eigen::Index>(k) + 1, m);
    std::vector<std::size_t> counts(k + 1, 1);
    t.topRows(static_cast<Eigen::Index>(k)) = stream.points().topRows(static_cast<Eigen::Index>(k));

    for (std::size_t s = k; s < stream.size(); ++s) {
        t.row(static_cast<Eigen::Index>(k)) = stream.point(s);
        counts[k] = 1;
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t j = i + 1; j <= k; ++j) {
                const double d = (t.row(static_cast<Eigen::Index>(i)) - t.row(static_cast<Eigen::Index>(j))).squaredNorm();
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        const auto ii = static_cast<Eigen::Index>(bi);
        const auto jj = static_cast<Eigen::Index>(bj);
        const double ni = double(counts[bi]);
        const double nj = double(counts[bj]);
        t.row(ii) = (t.row(ii) * ni + t.row(jj) * nj) / (ni + nj);
        counts[bi] += counts[bj];
        if (bj != k) {
            t.row(jj) = t.row(static_cast<Eigen::Index>(k));
            counts[bj] = 1;
        }
    }
    counts.pop_back();
    return {t.topRows(static_cast<Eigen::Index>(k)), std::move(counts)};
}

PerfectBallVerdict second_pass_diagnose(const Dataset& stream, const Eigen::MatrixXd& centers) {
    if (static_cast<std::size_t>(centers.cols()) != stream.dim()) {
        throw std::invalid_argument("center dimension does not match the stream");
    }
    const auto k = static_cast<std::size_t>(centers.rows());
    if (k < 1) throw std::invalid_argument("need at least one center");
    PerfectBallVerdict v;
    v.radii.assign(k, 0.0);
    v.furthest.assign(k, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < stream.size(); ++i) {
        std::size_t c = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            const double d = (stream.point(i) - centers.row(static_cast<Eigen::Index>(j))).norm();
            if (d < best) {
                best = d;
                c = j;
            }
        }
        if (v.furthest[c] == static_cast<std::size_t>(-1) || best > v.radii[c]) {
            v.radii[c] = best;
            v.furthest[c] = i;
        }
    }
    v.max_radius = *std::max_element(v.radii.begin(), v.radii.end());
    v.min_center_distance = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            v.min_center_distance = std::min(
                v.min_center_distance,
                (centers.row(static_cast<Eigen::Index>(a)) - centers.row(static_cast<Eigen::Index>(b))).norm());
        }
    }
    v.perfect_ball = v.min_center_distance >= 4.0 * v.max_radius * (1.0 - 1e-12);
    return v;
}

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n), node(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::iota(node.begin(), node.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    std::vector<std::size_t> parent;
    std::vector<std::size_t> node;  // tree node currently representing each root
};

}  // namespace

CandidateVerdict candidates_tree(const Dataset& dataset, std::size_t k) {
    const std::size_t n = dataset.size();
    if (k < 1 || k > n) throw std::invalid_argument("candidates_tree needs 1 <= k <= n");

    // Prim on the complete graph gives the single-linkage MST in O(n^2).
    std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(n, 0);
    best[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
        }
        in_tree[u] = true;
        if (step > 0) edges.emplace_back(best[u], std::min(u, from[u]), std::max(u, from[u]));
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double d = (dataset.point(u) - dataset.point(v)).norm();
            if (d < best[v]) {
                best[v] = d;
                from[v] = u;
            }
        }
    }
    std::sort(edges.begin(), edges.end());

    CandidateVerdict out;
    out.tree.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.tree[i].left = out.tree[i].right = i;
        out.tree[i].center = dataset.point(i);
    }
    DisjointSets sets(n);
    for (const auto& [w, a, b] : edges) {
        const std::size_t ra = sets.find(a);
        const std::size_t rb = sets.find(b);
        TreeNode node;
        node.left = sets.node[ra];
        node.right = sets.node[rb];
        const TreeNode& l = out.tree[node.left];
        const TreeNode& r = out.tree[node.right];
        node.count = l.count + r.count;
        node.height = w;
        node.center = (l.center * double(l.count) + r.center * double(r.count)) / double(node.count);
        sets.parent[rb] = ra;
        sets.node[ra] = out.tree.size();
        out.tree.push_back(std::move(node));
    }
    const std::size_t root = out.tree.size() - 1;

    // Depths from the root; members by a walk, giving each node's radius.
    std::vector<std::vector<std::size_t>> members(out.tree.size());
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};
    for (std::size_t id = n; id < out.tree.size(); ++id) {
        members[id] = members[out.tree[id].left];
        const auto& right = members[out.tree[id].right];
        members[id].insert(members[id].end(), right.begin(), right.end());
    }
    for (std::size_t id = root + 1; id-- > n;) {
        out.tree[out.tree[id].left].depth = out.tree[id].depth + 1;
        out.tree[out.tree[id].right].depth = out.tree[id].depth + 1;
    }
    out.radii.assign(out.tree.size(), 0.0);
    for (std::size_t id = 0; id < out.tree.size(); ++id) {
        if (out.tree[id].depth < k) out.candidates.push_back(id);
        for (std::size_t i : members[id]) {
            out.radii[id] = std::max(out.radii[id], (dataset.point(i) - out.tree[id].center).norm());
        }
    }

    auto nice = [&](const std::vector<std::size_t>& cut) {
        for (std::size_t a = 0; a < cut.size(); ++a) {
            for (std::size_t b = a + 1; b < cut.size(); ++b) {
                const double rho = std::max(out.radii[cut[a]], out.radii[cut[b]]);
                const double dist = (out.tree[cut[a]].center - out.tree[cut[b]].center).norm();
                if (dist < 4.0 * rho * (1.0 - 1e-12)) return false;
            }
        }
        return true;
    };

    // Every way to cover the subtree of `id` with exactly `parts` nodes.
    std::vector<std::size_t> cut;
    std::function<bool(std::vector<std::size_t>, std::size_t)> expand;
    expand = [&](std::vector<std::size_t> pending, std::size_t parts) -> bool {
        if (pending.empty()) {
            if (parts != 0) return false;
            ++out.cuts_examined;
            if (nice(cut)) {
                out.cut = cut;
                out.nice_ball = true;
                return true;
            }
            return false;
        }
        if (parts < pending.size()) return false;
        const std::size_t id = pending.back();
        pending.pop_back();
        cut.push_back(id);
        if (expand(pending, parts - 1)) return true;
        cut.pop_back();
        if (!out.tree[id].leaf()) {
            pending.push_back(out.tree[id].right);
            pending.push_back(out.tree[id].left);
            if (expand(pending, parts)) return true;
        }
        return false;
    };
    expand({root}, k);
    std::sort(out.cut.begin(), out.cut.end());
    return out;
}

}  // namespace axiomlab
