#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbridge/bridge.hpp"
#include "sbridge/datasets.hpp"
#include "sbridge/quantize.hpp"
#include "sbridge/rng.hpp"

using sbridge::Matrix;
using sbridge::QuantizationResult;

namespace {

// Quantization with explicit regions, bypassing k-means, so affinities can be
// checked against hand calculations.
QuantizationResult manual_regions(const Matrix& centroids,
                                  std::vector<int> assignment) {
    QuantizationResult q;
    q.centroids = centroids;
    q.counts.assign(static_cast<std::size_t>(centroids.rows()), 0);
    for (int a : assignment) q.counts[static_cast<std::size_t>(a)] += 1;
    q.assignment = std::move(assignment);
    return q;
}

Matrix random_points(int n, int d, std::uint64_t seed) {
    sbridge::Rng rng(seed);
    Matrix x(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) x(i, j) = rng.next_normal();
    return x;
}

}  // namespace

TEST_CASE("projection_coeffs clamps t and folds alpha around one half") {
    Matrix pts(5, 1);
    pts << -0.2, 0.0, 0.3, 0.5, 1.4;
    Eigen::RowVectorXd mu_k(1), mu_l(1);
    mu_k << 0.0;
    mu_l << 1.0;

    const auto pc = sbridge::projection_coeffs(pts, mu_k, mu_l);
    REQUIRE(pc.t.size() == 5);
    CHECK(pc.t[0] == 0.0);   // clamped from -0.2
    CHECK(pc.t[2] == doctest::Approx(0.3));
    CHECK(pc.t[4] == 1.0);   // clamped from 1.4
    CHECK(pc.alpha[0] == 0.0);
    CHECK(pc.alpha[2] == doctest::Approx(0.3));
    CHECK(pc.alpha[3] == doctest::Approx(0.5));  // midpoint reaches the max
    CHECK(pc.alpha[4] == 0.0);

    Eigen::RowVectorXd same(1);
    same << 0.0;
    CHECK_THROWS_AS(sbridge::projection_coeffs(pts, same, same),
                    sbridge::CoincidentCentroids);
}

TEST_CASE("raw affinity matches a one-dimensional hand calculation") {
    // V_0 = {-0.1, 0.1} around mu_0 = 0, V_1 = {0.9, 1.1} around mu_1 = 1.
    // t values: -0.1 (clamped to 0), 0.1, 0.9, 1.1 (clamped to 1), so
    // alpha^2 sums to 0.1^2 + 0.1^2 = 0.02 and a_01 = 0.02 / 4 = 0.005.
    Matrix x(4, 1);
    x << -0.1, 0.1, 0.9, 1.1;
    Matrix c(2, 1);
    c << 0.0, 1.0;
    const auto q = manual_regions(c, {0, 0, 1, 1});

    const auto a = sbridge::raw_affinity(x, q);
    CHECK(a(0, 1) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(a(0, 0) == 0.0);
    CHECK(a(1, 1) == 0.0);

    const auto naive = sbridge::raw_affinity_naive(x, q);
    CHECK(naive(0, 1) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(sbridge::bridge_inertia_gap(x, q, 0, 1) ==
          doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("a dense corridor scores higher than empty space") {
    // Two regions with a point mass near the shared midpoint versus two with
    // all mass hugging the centroids.
    Matrix x(8, 1);
    x << 0.0, 0.45, 0.55, 1.0,   // corridor pair around centroids 0 and 1
        5.0, 5.01, 5.99, 6.0;    // hollow pair around centroids 5 and 6
    Matrix c(4, 1);
    c << 0.225, 0.775, 5.005, 5.995;
    const auto q = manual_regions(c, {0, 0, 1, 1, 2, 2, 3, 3});
    const auto a = sbridge::raw_affinity(x, q);
    CHECK(a(0, 1) > 10.0 * a(2, 3));
}

TEST_CASE("batched, naive and inertia-gap forms agree on random instances") {
    sbridge::Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 10 + static_cast<int>(rng.next_below(40));
        const int d = 1 + static_cast<int>(rng.next_below(3));
        const int m = 2 + static_cast<int>(rng.next_below(4));
        const Matrix x = random_points(n, d, 1000 + static_cast<std::uint64_t>(trial));
        const auto q = sbridge::kmeans_fit(x, m, rng.split(static_cast<std::uint64_t>(trial)), 2);

        const auto batched = sbridge::raw_affinity(x, q);
        const auto naive = sbridge::raw_affinity_naive(x, q);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < k; ++l) {
                CHECK(batched(k, l) == doctest::Approx(naive(k, l)).epsilon(1e-12));
                CHECK(batched(k, l) ==
                      doctest::Approx(sbridge::bridge_inertia_gap(x, q, k, l))
                          .epsilon(1e-9));
            }
    }
}

TEST_CASE("raw affinities stay inside [0, 1/4]") {
    const auto ds = sbridge::gen_moons(600, 0.08, sbridge::Rng(22));
    const auto q = sbridge::kmeans_fit(ds.x, 20, sbridge::Rng(23));
    const auto a = sbridge::raw_affinity(ds.x, q);
    for (int k = 0; k < 20; ++k) {
        CHECK(a(k, k) == 0.0);
        for (int l = 0; l < k; ++l) {
            CHECK(a(k, l) >= 0.0);
            CHECK(a(k, l) <= 0.25);
        }
    }
}

TEST_CASE("transform spreads the 10th-90th percentile span to m_factor") {
    const auto ds = sbridge::gen_circles(500, 0.5, 0.02, sbridge::Rng(24));
    const auto q = sbridge::kmeans_fit(ds.x, 14, sbridge::Rng(25));
    const auto raw = sbridge::raw_affinity(ds.x, q);
    const auto t = sbridge::transform_affinity(raw, 1e4);

    REQUIRE(!t.degenerate_spread);
    CHECK(t.gamma > 0.0);

    // gamma = ln(M) / (q90 - q10) over all m^2 sqrt entries, so transformed
    // values at the two quantiles differ by exactly a factor of M.
    std::vector<double> roots;
    for (double v : raw.entries_square()) roots.push_back(std::sqrt(v));
    std::vector<double> sorted(roots);
    const auto qs = sbridge::quantiles(std::move(sorted), std::vector<double>{0.1, 0.9});
    const double ratio = std::exp(t.gamma * (qs[1] - qs[0]));
    CHECK(ratio == doctest::Approx(1e4).epsilon(1e-9));

    // Entries are exp(gamma * (sqrt(a) - smax / 2)) with a zeroed diagonal.
    double smax = 0.0;
    for (double r : roots) smax = std::max(smax, r);
    for (int k = 0; k < 14; ++k) {
        CHECK(t.transformed(k, k) == 0.0);
        for (int l = 0; l < k; ++l) {
            const double expect =
                std::exp(t.gamma * (std::sqrt(raw(k, l)) - smax / 2.0));
            CHECK(t.transformed(k, l) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("degenerate quantile spread turns the transform flat") {
    // All-zero affinities: every sqrt entry is 0, the spread vanishes.
    sbridge::SymMatrix zero(3);
    const auto tz = sbridge::transform_affinity(zero);
    CHECK(tz.degenerate_spread);
    CHECK(tz.gamma == 0.0);
    CHECK(tz.transformed(0, 1) == 1.0);
    CHECK(tz.transformed(2, 1) == 1.0);
    CHECK(tz.transformed(0, 0) == 0.0);

    // Uniform off-diagonal at an order where the diagonal zeros fall outside
    // the 10th percentile: q10 == q90, so the spread vanishes again.
    const int m = 21;
    sbridge::SymMatrix flat(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j) flat.set(i, j, 0.04);
    const auto tf = sbridge::transform_affinity(flat);
    CHECK(tf.degenerate_spread);
    CHECK(tf.gamma == 0.0);
    CHECK(tf.transformed(5, 2) == 1.0);
    CHECK(tf.transformed(5, 5) == 0.0);
}

TEST_CASE("diagonal zeros participate in the quantile spread") {
    // Order 3: 3 of 9 entries are diagonal zeros, so q10 = 0 and q90 = the
    // uniform off-diagonal sqrt; the spread is real and gamma positive.
    sbridge::SymMatrix raw(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j) raw.set(i, j, 0.04);
    const auto t = sbridge::transform_affinity(raw, 1e4);
    CHECK(!t.degenerate_spread);
    CHECK(t.gamma == doctest::Approx(std::log(1e4) / 0.2));
    // exp(gamma (0.2 - 0.1)) = sqrt(M) = 100.
    CHECK(t.transformed(1, 0) == doctest::Approx(100.0));
}

TEST_CASE("m_factor must exceed 1") {
    sbridge::SymMatrix raw(2);
    raw.set(1, 0, 0.1);
    CHECK_THROWS_AS(sbridge::transform_affinity(raw, 1.0), sbridge::InvalidM);
    CHECK_THROWS_AS(sbridge::transform_affinity(raw, 0.5), sbridge::InvalidM);
}

TEST_CASE("coincident centroids are rejected") {
    Matrix x(4, 2);
    x << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
    Matrix c(2, 2);
    c << 0.5, 0.5, 0.5, 0.5;
    const auto q = manual_regions(c, {0, 0, 1, 1});
    CHECK_THROWS_AS(sbridge::raw_affinity(x, q), sbridge::CoincidentCentroids);
}

TEST_CASE("build_affinity bundles raw and transformed consistently") {
    const auto ds = sbridge::gen_moons(400, 0.05, sbridge::Rng(26));
    const auto q = sbridge::kmeans_fit(ds.x, 10, sbridge::Rng(27));
    const auto af = sbridge::build_affinity(ds.x, q, 1e4);

    CHECK(af.m_factor == 1e4);
    const auto t = sbridge::transform_affinity(af.raw, 1e4);
    CHECK(af.gamma == t.gamma);
    for (int k = 0; k < 10; ++k)
        for (int l = 0; l <= k; ++l)
            CHECK(af.transformed(k, l) == t.transformed(k, l));
}
