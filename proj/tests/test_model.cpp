#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "sbridge/datasets.hpp"
#include "sbridge/eval.hpp"
#include "sbridge/metrics.hpp"
#include "sbridge/model.hpp"

using sbridge::Config;
using sbridge::Matrix;

namespace {

Config moons_config() {
    Config cfg;
    cfg.clusters = 2;
    cfg.nodes = 12;
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("fit recovers the two moons and labels every point") {
    const auto ds = sbridge::gen_moons(800, 0.05, sbridge::Rng(100));
    const auto model = sbridge::fit(ds.x, moons_config());

    REQUIRE(model.point_labels.size() == 800);
    REQUIRE(model.region_labels.size() == 12);
    REQUIRE(model.centroids.rows() == 12);
    CHECK(model.wcss > 0.0);
    CHECK(model.affinity.gamma > 0.0);
    CHECK(sbridge::ari(model.point_labels, ds.y) >= 0.95);

    const std::set<int> used(model.point_labels.begin(), model.point_labels.end());
    CHECK(used == std::set<int>{0, 1});
}

TEST_CASE("fit is bit-reproducible for a fixed seed") {
    const auto ds = sbridge::gen_moons(500, 0.05, sbridge::Rng(101));
    const auto a = sbridge::fit(ds.x, moons_config());
    const auto b = sbridge::fit(ds.x, moons_config());

    CHECK(a.centroids == b.centroids);
    CHECK(a.point_labels == b.point_labels);
    CHECK(a.region_labels == b.region_labels);
    CHECK(a.wcss == b.wcss);
    CHECK(a.affinity.gamma == b.affinity.gamma);

    Config other = moons_config();
    other.seed = 43;
    const auto c = sbridge::fit(ds.x, other);
    CHECK(a.centroids != c.centroids);
}

TEST_CASE("point labels are the propagated region labels") {
    const auto ds = sbridge::gen_circles(400, 0.5, 0.02, sbridge::Rng(102));
    Config cfg = moons_config();
    cfg.nodes = 16;
    const auto model = sbridge::fit(ds.x, cfg);

    const auto prop = sbridge::propagate(model.region_labels, model.region_assignment);
    CHECK(prop == model.point_labels);
}

TEST_CASE("predict on the training matrix reproduces point_labels") {
    const auto ds = sbridge::gen_smile(600, sbridge::Rng(103));
    Config cfg;
    cfg.clusters = 4;
    cfg.nodes = 24;
    cfg.seed = 7;
    const auto model = sbridge::fit(ds.x, cfg);
    CHECK(sbridge::predict(model, ds.x) == model.point_labels);

    // Points far outside still get some valid label.
    Matrix far(2, 2);
    far << 100.0, 100.0, -50.0, 3.0;
    const auto labels = sbridge::predict(model, far);
    for (int l : labels) {
        CHECK(l >= 0);
        CHECK(l < 4);
    }
}

TEST_CASE("m equal to K reduces the pipeline to k-means") {
    const auto ds = sbridge::gen_blobs(300, 3, 4, 0.4, sbridge::Rng(104));
    Config cfg;
    cfg.clusters = 4;
    cfg.nodes = 4;
    cfg.seed = 11;
    const auto model = sbridge::fit(ds.x, cfg);
    const auto base = sbridge::kmeans_baseline(ds.x, cfg);
    CHECK(sbridge::ari(model.point_labels, base) == 1.0);
}

TEST_CASE("propagate validates region indices") {
    const std::vector<int> region_labels{0, 1};
    CHECK(sbridge::propagate(region_labels, std::vector<int>{0, 1, 1, 0}) ==
          std::vector<int>{0, 1, 1, 0});
    CHECK_THROWS_AS(sbridge::propagate(region_labels, std::vector<int>{0, 2}),
                    sbridge::IndexError);
    CHECK_THROWS_AS(sbridge::propagate(region_labels, std::vector<int>{-1}),
                    sbridge::IndexError);
}

TEST_CASE("config validation maps to the error taxonomy") {
    const auto ds = sbridge::gen_moons(60, 0.05, sbridge::Rng(105));
    Config cfg = moons_config();

    cfg.nodes = 61;  // m > n
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::InvalidM);

    cfg = moons_config();
    cfg.clusters = 13;  // K > m
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::KFeasibility);

    cfg = moons_config();
    cfg.clusters = 0;
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::KFeasibility);

    cfg = moons_config();
    cfg.m_factor = 1.0;
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::InvalidM);

    cfg = moons_config();
    cfg.kmeans_restarts = 0;
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::Error);

    cfg = moons_config();
    cfg.lloyd_max_iter = 0;
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::Error);

    cfg = moons_config();
    cfg.lloyd_tol = -1.0;
    CHECK_THROWS_AS(sbridge::fit(ds.x, cfg), sbridge::Error);
}

TEST_CASE("suggest_m prefers the elbow of the wcss curve") {
    // Four tight, well-separated blobs: the curve plunges until m = 4 and is
    // flat afterwards, so the second difference settles at 4.
    const auto ds = sbridge::gen_blobs(400, 2, 4, 0.05, sbridge::Rng(106));
    const auto s = sbridge::suggest_m(ds.x, 2, {2, 3, 4, 6, 8, 10},
                                      sbridge::Rng(107), 5);
    REQUIRE(s.curve.size() == 6);
    CHECK(s.recommended == 4);

    // Single candidate: nothing to compare, recommend it.
    const auto one = sbridge::suggest_m(ds.x, 2, {5}, sbridge::Rng(108));
    CHECK(one.recommended == 5);

    // Near-zero wcss at every candidate (points in a 1e-9 ball): the initial
    // drop is below the flatness cutoff, so the smallest candidate wins. With
    // two candidates the fallback would pick the last one instead.
    sbridge::Rng tiny_rng(109);
    Matrix flat(30, 2);
    for (int i = 0; i < 30; ++i) {
        flat(i, 0) = 1e-9 * tiny_rng.next_normal();
        flat(i, 1) = 1e-9 * tiny_rng.next_normal();
    }
    const auto f = sbridge::suggest_m(flat, 2, {2, 4}, sbridge::Rng(109));
    CHECK(f.recommended == 2);

    CHECK_THROWS_AS(sbridge::suggest_m(ds.x, 3, {2, 4}, sbridge::Rng(110)),
                    sbridge::InvalidM);
    CHECK_THROWS_AS(sbridge::suggest_m(ds.x, 2, {}, sbridge::Rng(110)),
                    sbridge::EmptyInput);
}

TEST_CASE("model json round-trips byte for byte") {
    const auto ds = sbridge::gen_moons(300, 0.05, sbridge::Rng(111));
    const auto model = sbridge::fit(ds.x, moons_config());

    const std::string text = sbridge::model_to_json(model);
    const auto loaded = sbridge::model_from_json(text);
    CHECK(sbridge::model_to_json(loaded) == text);

    CHECK(loaded.config.clusters == model.config.clusters);
    CHECK(loaded.config.nodes == model.config.nodes);
    CHECK(loaded.config.seed == model.config.seed);
    CHECK(loaded.centroids == model.centroids);
    CHECK(loaded.region_labels == model.region_labels);
    CHECK(loaded.affinity.gamma == model.affinity.gamma);

    // A loaded model predicts exactly like the original.
    CHECK(sbridge::predict(loaded, ds.x) == sbridge::predict(model, ds.x));
}

TEST_CASE("model json validates structure before building") {
    const auto ds = sbridge::gen_moons(120, 0.05, sbridge::Rng(112));
    Config cfg = moons_config();
    cfg.nodes = 6;
    const auto model = sbridge::fit(ds.x, cfg);
    const std::string text = sbridge::model_to_json(model);

    CHECK_THROWS_AS(sbridge::model_from_json("not json"), sbridge::ParseError);
    CHECK_THROWS_AS(sbridge::model_from_json("{}"), sbridge::ParseError);

    // Wrong format tag and wrong version are rejected.
    std::string wrong = text;
    const auto pos = wrong.find("sbridge-model");
    REQUIRE(pos != std::string::npos);
    wrong.replace(pos, 13, "other-format!");
    CHECK_THROWS_AS(sbridge::model_from_json(wrong), sbridge::ParseError);

    // Out-of-range region label.
    std::string bad_label = text;
    const auto rpos = bad_label.find("\"region_labels\"");
    REQUIRE(rpos != std::string::npos);
    const auto bracket = bad_label.find('[', rpos);
    bad_label.replace(bracket + 1, 1, "9");
    CHECK_THROWS_AS(sbridge::model_from_json(bad_label), sbridge::ParseError);
}

TEST_CASE("save and load a model through a file") {
    const auto ds = sbridge::gen_moons(200, 0.05, sbridge::Rng(113));
    const auto model = sbridge::fit(ds.x, moons_config());

    const std::string path = "test_model_roundtrip.json";
    sbridge::save_model(model, path);
    const auto loaded = sbridge::load_model(path);
    CHECK(sbridge::model_to_json(loaded) == sbridge::model_to_json(model));
    std::remove(path.c_str());

    CHECK_THROWS_AS(sbridge::load_model("does_not_exist.json"), sbridge::IoError);
}
