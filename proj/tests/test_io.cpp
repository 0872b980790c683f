#include <sstream>

#include "axiomlab/io.hpp"
#include "doctest.h"

using namespace axiomlab;

TEST_CASE("dataset CSV round trip") {
    const auto x = Dataset::from_rows({{0.5, -1.25}, {3.0, 1e-7}, {2.0, 4.0}});
    std::stringstream ss;
    write_dataset_csv(ss, x);
    CHECK(ss.str().rfind("x1,x2\n", 0) == 0);
    const auto y = read_dataset_csv(ss);
    CHECK(y.points() == x.points());
}

TEST_CASE("dataset CSV rejects ragged rows") {
    std::istringstream in("x1,x2\n1,2\n3\n");
    CHECK_THROWS(read_dataset_csv(in));
}

TEST_CASE("distance CSV round trip") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 2.5, 2.5, 0;
    std::stringstream ss;
    write_distance_csv(ss, DistanceMatrix(m));
    CHECK(read_distance_csv(ss).matrix() == m);
}

TEST_CASE("partition JSON round trip") {
    const Partition p({{0, 3}, {1}, {2, 4}});
    CHECK(partition_from_json(partition_to_json(p)) == p);
    CHECK(partition_from_json(R"({"clusters": [[1], [0]]})") == Partition::singletons(2));
    CHECK_THROWS(partition_from_json(R"({"clusters": [[0], [0]]})"));
}
