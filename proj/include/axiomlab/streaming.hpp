#pragma once

#include <vector>

#include "axiomlab/core.hpp"

namespace axiomlab {

struct SequentialResult {
    Eigen::MatrixXd centers;          // k x m
    std::vector<std::size_t> counts;  // points absorbed by each center
};

/// One pass over the rows of `stream` holding k weighted centers. Each
/// arrival forms k+1 candidates; the globally closest candidate pair (ties to
/// the lowest index pair) is merged into its lower slot by weighted mean, and
/// a freed slot takes the newcomer.
SequentialResult sequential_kmeans(const Dataset& stream, std::size_t k);

struct PerfectBallVerdict {
    std::vector<double> radii;          // distance from each center to its furthest assigned point
    std::vector<std::size_t> furthest;  // index of that point (or none when unassigned)
    double max_radius = 0.0;
    double min_center_distance = 0.0;
    bool perfect_ball = false;
};

/// Second pass: assign the replayed stream to the first-pass centers and test
/// min center distance >= 4 * max radius.
PerfectBallVerdict second_pass_diagnose(const Dataset& stream, const Eigen::MatrixXd& centers);

struct TreeNode {
    std::size_t left = 0;   // child ids; equal to the node id for leaves
    std::size_t right = 0;
    std::size_t count = 1;
    std::size_t depth = 0;
    double height = 0.0;    // linkage distance of the merge (0 for leaves)
    Eigen::RowVectorXd center;
    bool leaf() const { return count == 1; }
};

struct CandidateVerdict {
    std::vector<TreeNode> tree;            // leaves 0..n-1, merges n..2n-2, root last
    std::vector<std::size_t> candidates;   // nodes at depth < k
    std::vector<double> radii;             // per node: max ||x - t|| over its members
    bool nice_ball = false;
    std::vector<std::size_t> cut;          // first k-node cut passing the test, if any
    std::size_t cuts_examined = 0;
};

/// Single-linkage tree with weighted-mean node centers; checks every k-node
/// cut for nice ball separation of the balls (t, max ||x - t||).
CandidateVerdict candidates_tree(const Dataset& dataset, std::size_t k);

}  // namespace axiomlab
