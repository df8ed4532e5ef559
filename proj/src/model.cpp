#include "sbridge/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "sbridge/spectral.hpp"

namespace sbridge {
namespace {

void check_config(const Config& cfg, Eigen::Index n) {
    if (cfg.clusters < 1)
        throw KFeasibility("fit: clusters must be >= 1");
    if (cfg.nodes < cfg.clusters)
        throw KFeasibility("fit: nodes (m = " + std::to_string(cfg.nodes) +
                           ") must be >= clusters (K = " +
                           std::to_string(cfg.clusters) + ")");
    if (static_cast<Eigen::Index>(cfg.nodes) > n)
        throw InvalidM("fit: nodes (m = " + std::to_string(cfg.nodes) +
                       ") exceeds the point count (n = " + std::to_string(n) + ")");
    if (!(cfg.m_factor > 1.0))
        throw InvalidM("fit: m_factor must be > 1");
    if (cfg.kmeans_restarts < 1)
        throw Error(ErrorKind::config, "fit: kmeans_restarts must be >= 1");
    if (cfg.lloyd_max_iter < 1)
        throw Error(ErrorKind::config, "fit: lloyd_max_iter must be >= 1");
    if (!(cfg.lloyd_tol >= 0.0))
        throw Error(ErrorKind::config, "fit: lloyd_tol must be >= 0");
}

}  // namespace

Model fit(const Eigen::Ref<const Matrix>& x, const Config& cfg) {
    require_finite(x, "fit");
    check_config(cfg, x.rows());

    Model model;
    model.config = cfg;

    Rng quant_rng = quantize_stream(cfg);
    QuantizationResult q = kmeans_fit(x, cfg.nodes, quant_rng,
                                      cfg.kmeans_restarts, cfg.lloyd_max_iter,
                                      cfg.lloyd_tol);

    model.affinity = build_affinity(x, q, cfg.m_factor);
    model.region_labels =
        spectral_cluster(model.affinity.transformed, cfg.clusters,
                         spectral_stream(cfg));
    model.point_labels = propagate(model.region_labels, q.assignment);
    model.centroids = std::move(q.centroids);
    model.region_assignment = std::move(q.assignment);
    model.wcss = q.wcss;
    return model;
}

std::vector<int> predict(const Model& model, const Eigen::Ref<const Matrix>& x) {
    if (model.centroids.rows() == 0)
        throw EmptyInput("predict: model has no centroids");
    if (x.cols() != model.centroids.cols())
        throw DimensionError("predict: input has " + std::to_string(x.cols()) +
                             " columns, model expects " +
                             std::to_string(model.centroids.cols()));
    const std::vector<int> regions = nearest_centroids(x, model.centroids);
    return propagate(model.region_labels, regions);
}

std::vector<int> propagate(std::span<const int> region_labels,
                           std::span<const int> assignment) {
    std::vector<int> out;
    out.reserve(assignment.size());
    for (int a : assignment) {
        if (a < 0 || static_cast<std::size_t>(a) >= region_labels.size())
            throw IndexError("propagate: region index " + std::to_string(a) +
                             " out of range");
        out.push_back(region_labels[static_cast<std::size_t>(a)]);
    }
    return out;
}

MSuggestion suggest_m(const Eigen::Ref<const Matrix>& x, int clusters,
                      std::vector<int> candidates, const Rng& rng,
                      int restarts) {
    if (clusters < 1)
        throw KFeasibility("suggest_m: clusters must be >= 1");
    for (int m : candidates)
        if (m < clusters)
            throw InvalidM("suggest_m: candidate m = " + std::to_string(m) +
                           " is below clusters K = " + std::to_string(clusters));

    MSuggestion out;
    out.curve = wcss_curve(x, std::move(candidates), rng, restarts);
    const auto& c = out.curve;
    const std::size_t p = c.size();
    out.recommended = c.front().m;
    if (p == 1) return out;

    const double initial_drop = c[0].wcss - c[1].wcss;
    if (initial_drop <= 1e-12 * std::max(1.0, c[0].wcss)) return out;

    for (std::size_t i = 0; i + 2 < p; ++i) {
        const double second_diff =
            c[i].wcss - 2.0 * c[i + 1].wcss + c[i + 2].wcss;
        if (std::abs(second_diff) <= 0.05 * initial_drop) {
            out.recommended = c[i].m;
            return out;
        }
    }
    out.recommended = c[p - 1].m;
    return out;
}

namespace {

nlohmann::ordered_json config_to_json(const Config& cfg) {
    nlohmann::ordered_json j;
    j["clusters"] = cfg.clusters;
    j["nodes"] = cfg.nodes;
    j["m_factor"] = cfg.m_factor;
    j["seed"] = cfg.seed;
    j["kmeans_restarts"] = cfg.kmeans_restarts;
    j["lloyd_max_iter"] = cfg.lloyd_max_iter;
    j["lloyd_tol"] = cfg.lloyd_tol;
    return j;
}

constexpr const char* kModelFormat = "sbridge-model";
constexpr int kModelVersion = 1;

}  // namespace

std::string model_to_json(const Model& model) {
    nlohmann::ordered_json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["config"] = config_to_json(model.config);
    j["gamma"] = model.affinity.gamma;
    j["degenerate_spread"] = model.affinity.degenerate_spread;
    j["region_labels"] = model.region_labels;
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < model.centroids.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index k = 0; k < model.centroids.cols(); ++k)
            row.push_back(model.centroids(i, k));
        rows.push_back(std::move(row));
    }
    j["centroids"] = std::move(rows);
    return j.dump(2) + "\n";
}

Model model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model: invalid JSON: ") + e.what());
    }

    try {
        if (j.at("format").get<std::string>() != kModelFormat)
            throw ParseError("model: unrecognized format field");
        if (j.at("version").get<int>() != kModelVersion)
            throw ParseError("model: unsupported version " +
                             j.at("version").dump());

        Model model;
        const auto& jc = j.at("config");
        model.config.clusters = jc.at("clusters").get<int>();
        model.config.nodes = jc.at("nodes").get<int>();
        model.config.m_factor = jc.at("m_factor").get<double>();
        model.config.seed = jc.at("seed").get<std::uint64_t>();
        model.config.kmeans_restarts = jc.at("kmeans_restarts").get<int>();
        model.config.lloyd_max_iter = jc.at("lloyd_max_iter").get<int>();
        model.config.lloyd_tol = jc.at("lloyd_tol").get<double>();
        model.affinity.gamma = j.at("gamma").get<double>();
        model.affinity.m_factor = model.config.m_factor;
        model.affinity.degenerate_spread = j.at("degenerate_spread").get<bool>();
        model.region_labels = j.at("region_labels").get<std::vector<int>>();

        const auto& rows = j.at("centroids");
        if (!rows.is_array() || rows.empty())
            throw ParseError("model: centroids must be a non-empty array");
        const std::size_t dims = rows.front().size();
        if (dims == 0) throw ParseError("model: centroid rows must be non-empty");
        model.centroids.resize(static_cast<Eigen::Index>(rows.size()),
                               static_cast<Eigen::Index>(dims));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != dims)
                throw ParseError("model: ragged centroid rows");
            for (std::size_t k = 0; k < dims; ++k) {
                const double v = rows[i][k].get<double>();
                if (!std::isfinite(v))
                    throw ParseError("model: non-finite centroid entry");
                model.centroids(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(k)) = v;
            }
        }

        if (model.region_labels.size() != rows.size())
            throw ParseError("model: region_labels length differs from centroids");
        for (int label : model.region_labels)
            if (label < 0 || label >= model.config.clusters)
                throw ParseError("model: region label out of range");
        if (model.config.nodes != static_cast<int>(rows.size()))
            throw ParseError("model: nodes differs from centroid count");
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model: missing or mistyped field: ") +
                         e.what());
    }
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << model_to_json(model);
    if (!out) throw IoError("failed while writing '" + path + "'");
}

Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

}  // namespace sbridge
