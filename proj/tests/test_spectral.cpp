#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "sbridge/spectral.hpp"

using sbridge::SymMatrix;

namespace {

// Block-diagonal affinity: regions [0, split) and [split, order) are two
// internally connected groups with no cross links.
SymMatrix two_blocks(int order, int split, double w = 1.0) {
    SymMatrix a(order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < i; ++j)
            if ((i < split) == (j < split)) a.set(i, j, w);
    return a;
}

}  // namespace

TEST_CASE("laplacian embedding separates disconnected blocks") {
    const auto a = two_blocks(6, 4);
    const Eigen::MatrixXd u = sbridge::laplacian_embedding(a, 2);
    REQUIRE(u.rows() == 6);
    REQUIRE(u.cols() == 2);

    // Rows are unit length and identical inside each block.
    for (int i = 0; i < 6; ++i) CHECK(u.row(i).norm() == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK((u.row(i) - u.row(0)).norm() < 1e-8);
    for (int i = 5; i < 6; ++i) CHECK((u.row(i) - u.row(4)).norm() < 1e-8);
    CHECK((u.row(0) - u.row(4)).norm() > 1.0);  // orthogonal indicator mix
}

TEST_CASE("spectral_cluster recovers the two blocks") {
    const auto a = two_blocks(7, 3);
    const auto labels = sbridge::spectral_cluster(a, 2, sbridge::Rng(1));
    REQUIRE(labels.size() == 7);

    // Canonical ids: the first region opens cluster 0.
    CHECK(labels[0] == 0);
    for (int i = 0; i < 3; ++i) CHECK(labels[static_cast<std::size_t>(i)] == 0);
    for (int i = 3; i < 7; ++i) CHECK(labels[static_cast<std::size_t>(i)] == 1);
}

TEST_CASE("weakly bridged blocks still split before their internal links") {
    auto a = two_blocks(8, 4, 1.0);
    a.set(3, 4, 1e-6);  // faint bridge keeps the graph connected
    const auto labels = sbridge::spectral_cluster(a, 2, sbridge::Rng(2));
    for (int i = 0; i < 4; ++i) CHECK(labels[static_cast<std::size_t>(i)] == 0);
    for (int i = 4; i < 8; ++i) CHECK(labels[static_cast<std::size_t>(i)] == 1);
}

TEST_CASE("single region short-circuits to label zero") {
    SymMatrix a(1);
    const auto labels = sbridge::spectral_cluster(a, 1, sbridge::Rng(3));
    CHECK(labels == std::vector<int>{0});
}

TEST_CASE("zero-degree regions are rejected") {
    auto a = two_blocks(5, 3);
    // Disconnect region 4 entirely.
    a.set(4, 3, 0.0);
    for (int j = 0; j < 4; ++j) a.set(4, j, 0.0);
    CHECK_THROWS_AS(sbridge::laplacian_embedding(a, 2), sbridge::IsolatedRegion);
}

TEST_CASE("K outside [1, order] is infeasible") {
    const auto a = two_blocks(4, 2);
    CHECK_THROWS_AS(sbridge::laplacian_embedding(a, 0), sbridge::KFeasibility);
    CHECK_THROWS_AS(sbridge::laplacian_embedding(a, 5), sbridge::KFeasibility);
    CHECK_THROWS_AS(sbridge::spectral_cluster(a, 0, sbridge::Rng(4)),
                    sbridge::KFeasibility);
}

TEST_CASE("spectral_cluster is a pure function of (affinity, K, rng)") {
    const auto a = two_blocks(9, 5, 0.7);
    const auto l1 = sbridge::spectral_cluster(a, 2, sbridge::Rng(5));
    const auto l2 = sbridge::spectral_cluster(a, 2, sbridge::Rng(5));
    CHECK(l1 == l2);
}

TEST_CASE("labels always cover [0, K)") {
    SymMatrix a(6);
    // Three cliques of two.
    a.set(1, 0, 1.0);
    a.set(3, 2, 1.0);
    a.set(5, 4, 1.0);
    const auto labels = sbridge::spectral_cluster(a, 3, sbridge::Rng(6));
    const std::set<int> used(labels.begin(), labels.end());
    CHECK(used == std::set<int>{0, 1, 2});
    CHECK(labels[0] == 0);
    CHECK(labels[1] == 0);
}

TEST_CASE("canonicalize_labels remaps by first occurrence") {
    CHECK(sbridge::canonicalize_labels({2, 2, 0, 1, 0}) ==
          std::vector<int>{0, 0, 1, 2, 1});
    CHECK(sbridge::canonicalize_labels({}) == std::vector<int>{});
    CHECK(sbridge::canonicalize_labels({5, 5, 5}) == std::vector<int>{0, 0, 0});
}
