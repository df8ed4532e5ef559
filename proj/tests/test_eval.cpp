#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "sbridge/eval.hpp"

using sbridge::Config;
using sbridge::EvalReport;

TEST_CASE("reports serialize with a fixed column order") {
    EvalReport r;
    r.dataset = "moons";
    r.method = "sbridge";
    r.seed = 42;
    r.m = 12;
    r.K = 2;
    r.ari = 0.5;
    r.nmi = 0.25;
    r.fit_millis = 1.5;

    const auto csv = sbridge::reports_to_csv(std::vector<EvalReport>{r});
    CHECK(csv == "dataset,method,seed,m,K,ari,nmi,fit_millis\n"
                 "moons,sbridge,42,12,2,0.5,0.25,1.5\n");

    const auto jsonl = sbridge::reports_to_jsonl(std::vector<EvalReport>{r});
    CHECK(jsonl.find("\"dataset\":\"moons\"") != std::string::npos);
    CHECK(jsonl.find("\"ari\":0.5") != std::string::npos);
    CHECK(jsonl.back() == '\n');

    CHECK(sbridge::reports_to_csv({}) ==
          "dataset,method,seed,m,K,ari,nmi,fit_millis\n");
}

TEST_CASE("evaluate_fit scores the pipeline against ground truth") {
    const auto ds = sbridge::gen_moons(600, 0.05, sbridge::Rng(1));
    Config cfg;
    cfg.clusters = 2;
    cfg.nodes = 12;
    cfg.seed = 42;

    const auto rep = sbridge::evaluate_fit(ds, cfg);
    CHECK(rep.dataset == "moons");
    CHECK(rep.method == "sbridge");
    CHECK(rep.seed == 42);
    CHECK(rep.m == 12);
    CHECK(rep.K == 2);
    CHECK(rep.ari >= 0.9);
    CHECK(rep.nmi >= 0.9);
    CHECK(rep.fit_millis > 0.0);
}

TEST_CASE("scored_points restricts scoring to the leading rows") {
    auto ds = sbridge::gen_moons(400, 0.05, sbridge::Rng(2));
    const auto noisy = sbridge::add_uniform_noise(ds, 100, sbridge::Rng(3));
    Config cfg;
    cfg.clusters = 2;
    cfg.nodes = 14;
    cfg.seed = 5;

    // Scoring all rows counts the noise class as a cluster ground truth the
    // 2-way partition cannot match; the restricted score ignores it.
    const auto all = sbridge::evaluate_fit(noisy, cfg);
    const auto orig = sbridge::evaluate_fit(noisy, cfg, 400);
    CHECK(orig.ari > all.ari);
}

TEST_CASE("kmeans baseline equals the pipeline when m = K") {
    const auto ds = sbridge::gen_blobs(250, 2, 3, 0.3, sbridge::Rng(4));
    Config cfg;
    cfg.clusters = 3;
    cfg.nodes = 3;
    cfg.seed = 9;

    const auto rep_kmeans = sbridge::evaluate_kmeans(ds, cfg);
    const auto rep_fit = sbridge::evaluate_fit(ds, cfg);
    CHECK(rep_kmeans.method == "kmeans");
    CHECK(rep_kmeans.ari == doctest::Approx(rep_fit.ari));
    CHECK(rep_kmeans.nmi == doctest::Approx(rep_fit.nmi));
}

TEST_CASE("linear_fit recovers exact lines and judges noise") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> ys{3.0, 5.0, 7.0, 9.0};  // y = 2x + 1
    const auto f = sbridge::linear_fit(xs, ys);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));

    // Pure noise around a constant: r2 collapses toward zero.
    const std::vector<double> flat_y{1.0, -1.0, 1.0, -1.0};
    const auto g = sbridge::linear_fit(xs, flat_y);
    CHECK(g.r2 < 0.3);

    // Degenerate inputs.
    const auto one = sbridge::linear_fit(std::vector<double>{2.0},
                                         std::vector<double>{5.0});
    CHECK(one.slope == 0.0);
    CHECK(one.r2 == 1.0);
    CHECK_THROWS_AS(sbridge::linear_fit(xs, std::vector<double>{1.0}),
                    sbridge::LengthMismatch);
    CHECK_THROWS_AS(
        sbridge::linear_fit(std::vector<double>{}, std::vector<double>{}),
        sbridge::EmptyInput);
}

TEST_CASE("m_sweep aggregates repetitions per m value") {
    const auto ds = sbridge::gen_moons(300, 0.05, sbridge::Rng(5));
    const std::vector<int> ms{2, 8};
    const auto reports = sbridge::m_sweep_reports(ds, 2, ms, 3, 100);
    REQUIRE(reports.size() == 6);
    CHECK(reports[0].m == 2);
    CHECK(reports[0].seed == 100);
    CHECK(reports[1].seed == 101);
    CHECK(reports[5].m == 8);

    const auto rows = sbridge::m_sweep(ds, 2, ms, 3, 100);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].m == 2);
    CHECK(rows[1].m == 8);
    const double want =
        (reports[3].ari + reports[4].ari + reports[5].ari) / 3.0;
    CHECK(rows[1].mean_ari == doctest::Approx(want));
    // Region count matters: the sweep should improve from 2 to 8 on moons.
    CHECK(rows[1].mean_ari >= rows[0].mean_ari);
}

TEST_CASE("timing sweeps fit a line to wall-clock means") {
    const std::vector<int> ns{200, 400, 600};
    const auto sweep = sbridge::time_fit_n(ns, 8, 2, 2, 2, 77);
    CHECK(sweep.variable == "n");
    REQUIRE(sweep.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(sweep.rows[i].value == ns[i]);
        CHECK(sweep.rows[i].mean_millis > 0.0);
        CHECK(sweep.rows[i].sd_millis >= 0.0);
    }

    const std::vector<int> msv{4, 8};
    const auto msweep = sbridge::time_fit_m(msv, 300, 2, 2, 2, 78);
    CHECK(msweep.variable == "m");
    REQUIRE(msweep.rows.size() == 2);
}

TEST_CASE("noise experiment emits clean, uniform and gaussian rows") {
    // Small instance keeps the unit test quick; the acceptance run uses the
    // full reference size.
    const auto reports = sbridge::noise_experiment(719, 3);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].dataset == "impossible");
    CHECK(reports[1].dataset == "impossible+uniform");
    CHECK(reports[2].dataset == "impossible+gaussian");
    for (const auto& r : reports) {
        CHECK(r.K == 7);
        CHECK(r.m == 250);
        CHECK(r.ari >= -0.5);
        CHECK(r.ari <= 1.0);
    }
}
