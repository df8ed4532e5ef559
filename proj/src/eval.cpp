#include "sbridge/eval.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <utility>

#include <json.hpp>

#include "sbridge/format.hpp"
#include "sbridge/metrics.hpp"

namespace sbridge {
namespace {

double elapsed_millis(std::chrono::steady_clock::time_point start) {
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

std::pair<double, double> score_against(const LabeledDataset& ds,
                                        const std::vector<int>& labels,
                                        Eigen::Index scored_points) {
    const std::size_t limit = (scored_points > 0)
                                  ? static_cast<std::size_t>(scored_points)
                                  : ds.y.size();
    if (limit > ds.y.size() || limit > labels.size())
        throw LengthMismatch("evaluate: scored prefix exceeds labeling length");
    std::span<const int> truth(ds.y.data(), limit);
    std::span<const int> pred(labels.data(), limit);
    return {ari(truth, pred), nmi(truth, pred)};
}

}  // namespace

std::string reports_to_csv(std::span<const EvalReport> reports) {
    std::string out = "dataset,method,seed,m,K,ari,nmi,fit_millis\n";
    for (const auto& r : reports) {
        out += r.dataset;
        out += ',';
        out += r.method;
        out += ',';
        out += format_u64(r.seed);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += std::to_string(r.K);
        out += ',';
        out += format_double(r.ari);
        out += ',';
        out += format_double(r.nmi);
        out += ',';
        out += format_double(r.fit_millis);
        out += '\n';
    }
    return out;
}

std::string reports_to_jsonl(std::span<const EvalReport> reports) {
    std::string out;
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["dataset"] = r.dataset;
        j["method"] = r.method;
        j["seed"] = r.seed;
        j["m"] = r.m;
        j["K"] = r.K;
        j["ari"] = r.ari;
        j["nmi"] = r.nmi;
        j["fit_millis"] = r.fit_millis;
        out += j.dump();
        out += '\n';
    }
    return out;
}

EvalReport evaluate_fit(const LabeledDataset& ds, const Config& cfg,
                        Eigen::Index scored_points) {
    const auto start = std::chrono::steady_clock::now();
    const Model model = fit(ds.x, cfg);
    const double millis = elapsed_millis(start);
    const auto [a, n] = score_against(ds, model.point_labels, scored_points);
    return {ds.name, "sbridge", cfg.seed, cfg.nodes, cfg.clusters, a, n, millis};
}

std::vector<int> kmeans_baseline(const Eigen::Ref<const Matrix>& x,
                                 const Config& cfg) {
    Rng stream = quantize_stream(cfg);
    return kmeans_fit(x, cfg.clusters, stream, cfg.kmeans_restarts,
                      cfg.lloyd_max_iter, cfg.lloyd_tol)
        .assignment;
}

EvalReport evaluate_kmeans(const LabeledDataset& ds, const Config& cfg,
                           Eigen::Index scored_points) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> labels = kmeans_baseline(ds.x, cfg);
    const double millis = elapsed_millis(start);
    const auto [a, n] = score_against(ds, labels, scored_points);
    return {ds.name, "kmeans", cfg.seed, cfg.clusters, cfg.clusters, a, n, millis};
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw LengthMismatch("linear_fit: coordinate lengths differ");
    if (xs.empty()) throw EmptyInput("linear_fit: empty sample");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }

    LinearFit out;
    if (sxx == 0.0) {
        out.intercept = my;
        return out;  // vertical stack of points: slope 0, r2 1 by convention
    }
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit_y = out.slope * xs[i] + out.intercept;
        ss_res += (ys[i] - fit_y) * (ys[i] - fit_y);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    out.r2 = (ss_tot == 0.0) ? 1.0 : 1.0 - ss_res / ss_tot;
    return out;
}

namespace {

TimingSweep run_timing(const std::string& variable,
                       std::span<const int> values, int fixed, int clusters,
                       int dims, int reps, std::uint64_t seed) {
    if (reps < 1) throw Error(ErrorKind::config, "timing: reps must be >= 1");
    if (values.empty()) throw EmptyInput("timing: no sweep values");

    TimingSweep sweep;
    sweep.variable = variable;
    std::vector<double> xs;
    std::vector<double> means;
    for (const int value : values) {
        const int n = (variable == "n") ? value : fixed;
        const int nodes = (variable == "m") ? value : fixed;
        const LabeledDataset ds =
            gen_blobs(n, dims, clusters, 1.0,
                      Rng(seed).split(static_cast<std::uint64_t>(value)));

        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(reps));
        for (int r = 0; r < reps; ++r) {
            Config cfg;
            cfg.clusters = clusters;
            cfg.nodes = nodes;
            cfg.seed = seed + static_cast<std::uint64_t>(r);
            cfg.kmeans_restarts = kBenchRestarts;
            cfg.lloyd_max_iter = kBenchLloydMaxIter;
            const auto start = std::chrono::steady_clock::now();
            fit(ds.x, cfg);
            samples.push_back(elapsed_millis(start));
        }

        double mean = 0.0;
        for (double s : samples) mean += s;
        mean /= static_cast<double>(reps);
        double var = 0.0;
        for (double s : samples) var += (s - mean) * (s - mean);
        const double sd = (reps > 1) ? std::sqrt(var / (reps - 1)) : 0.0;

        sweep.rows.push_back({static_cast<double>(value), mean, sd});
        xs.push_back(static_cast<double>(value));
        means.push_back(mean);
    }
    sweep.fit = linear_fit(xs, means);
    return sweep;
}

}  // namespace

TimingSweep time_fit_n(std::span<const int> n_values, int nodes, int clusters,
                       int dims, int reps, std::uint64_t seed) {
    return run_timing("n", n_values, nodes, clusters, dims, reps, seed);
}

TimingSweep time_fit_m(std::span<const int> m_values, int n, int clusters,
                       int dims, int reps, std::uint64_t seed) {
    return run_timing("m", m_values, n, clusters, dims, reps, seed);
}

std::vector<EvalReport> m_sweep_reports(const LabeledDataset& ds, int clusters,
                                        std::span<const int> m_values, int reps,
                                        std::uint64_t seed) {
    if (reps < 1) throw Error(ErrorKind::config, "m_sweep: reps must be >= 1");
    std::vector<EvalReport> reports;
    reports.reserve(m_values.size() * static_cast<std::size_t>(reps));
    for (const int m : m_values) {
        for (int r = 0; r < reps; ++r) {
            Config cfg;
            cfg.clusters = clusters;
            cfg.nodes = m;
            cfg.seed = seed + static_cast<std::uint64_t>(r);
            reports.push_back(evaluate_fit(ds, cfg));
        }
    }
    return reports;
}

std::vector<MSweepRow> m_sweep(const LabeledDataset& ds, int clusters,
                               std::span<const int> m_values, int reps,
                               std::uint64_t seed) {
    const std::vector<EvalReport> reports =
        m_sweep_reports(ds, clusters, m_values, reps, seed);
    std::vector<MSweepRow> rows;
    rows.reserve(m_values.size());
    std::size_t idx = 0;
    for (const int m : m_values) {
        MSweepRow row;
        row.m = m;
        for (int r = 0; r < reps; ++r, ++idx) {
            row.mean_ari += reports[idx].ari;
            row.mean_nmi += reports[idx].nmi;
            row.mean_millis += reports[idx].fit_millis;
        }
        row.mean_ari /= reps;
        row.mean_nmi /= reps;
        row.mean_millis /= reps;
        rows.push_back(row);
    }
    return rows;
}

std::vector<EvalReport> noise_experiment(int n, std::uint64_t seed) {
    const Rng root(seed);
    const LabeledDataset clean = gen_impossible(n, root.split(0));
    const LabeledDataset with_uniform =
        add_uniform_noise(clean, 250, root.split(1));
    const LabeledDataset with_gaussian =
        add_gaussian_noise(clean, 0.1, root.split(2));

    Config cfg;
    cfg.clusters = 7;
    cfg.nodes = 250;
    cfg.seed = seed;

    std::vector<EvalReport> reports;
    reports.push_back(evaluate_fit(clean, cfg));
    reports.push_back(evaluate_fit(with_uniform, cfg, clean.x.rows()));
    reports.push_back(evaluate_fit(with_gaussian, cfg));
    return reports;
}

}  // namespace sbridge
