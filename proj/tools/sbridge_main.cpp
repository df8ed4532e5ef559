#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbridge/csv.hpp"
#include "sbridge/datasets.hpp"
#include "sbridge/errors.hpp"
#include "sbridge/eval.hpp"
#include "sbridge/format.hpp"
#include "sbridge/model.hpp"

namespace {

using namespace sbridge;

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string token = text.substr(start, comma - start);
        int value = 0;
        const auto res =
            std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
            throw Error(ErrorKind::config, std::string(what) + ": bad list entry '" +
                                               token + "'");
        out.push_back(value);
        if (comma == text.size()) break;
        start = comma + 1;
    }
    if (out.empty())
        throw Error(ErrorKind::config, std::string(what) + ": empty list");
    return out;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

struct DatasetRequest {
    std::string name = "moons";
    int n = 0;             // 0 -> per-dataset default
    double noise = -1.0;   // < 0 -> per-dataset default
    double ratio = 0.5;
    std::uint64_t seed = 42;
};

LabeledDataset make_dataset(const DatasetRequest& req) {
    const Rng rng(req.seed);
    if (req.name == "moons") {
        const int n = req.n > 0 ? req.n : 1000;
        return gen_moons(n, req.noise >= 0.0 ? req.noise : 0.05, rng);
    }
    if (req.name == "circles") {
        const int n = req.n > 0 ? req.n : 1000;
        return gen_circles(n, req.ratio, req.noise >= 0.0 ? req.noise : 0.02, rng);
    }
    if (req.noise >= 0.0)
        throw Error(ErrorKind::config,
                    "--noise only applies to moons and circles");
    if (req.name == "smile") return gen_smile(req.n > 0 ? req.n : 1000, rng);
    if (req.name == "impossible")
        return gen_impossible(req.n > 0 ? req.n : kImpossibleSize, rng);
    throw Error(ErrorKind::config, "unknown dataset '" + req.name + "'");
}

int default_clusters(const std::string& dataset) {
    if (dataset == "smile") return 4;
    if (dataset == "impossible") return 7;
    return 2;
}

struct FitOptions {
    std::string input;
    std::string out;
    std::string model_out;
    bool no_header = false;
    int label_column = -1;
    int clusters = 2;
    int nodes = 0;
    double bigm = kDefaultMFactor;
    std::uint64_t seed = 42;
    int restarts = kDefaultRestarts;
    int max_iter = kDefaultLloydMaxIter;
    double tol = kDefaultLloydTol;
    int pca_components = 0;
};

void run_fit(const FitOptions& opt) {
    const std::optional<int> label_col =
        opt.label_column >= 0 ? std::optional<int>(opt.label_column) : std::nullopt;
    const CsvDataset csv = load_csv(opt.input, !opt.no_header, label_col);
    Matrix x = csv.x;
    if (opt.pca_components > 0) x = pca(x, opt.pca_components);

    Config cfg;
    cfg.clusters = opt.clusters;
    cfg.nodes = opt.nodes;
    cfg.m_factor = opt.bigm;
    cfg.seed = opt.seed;
    cfg.kmeans_restarts = opt.restarts;
    cfg.lloyd_max_iter = opt.max_iter;
    cfg.lloyd_tol = opt.tol;

    const Model model = fit(x, cfg);
    if (!opt.out.empty()) save_labels_csv(model.point_labels, opt.out);
    if (!opt.model_out.empty()) save_model(model, opt.model_out);
    std::cout << "K=" << cfg.clusters << " m=" << cfg.nodes
              << " gamma=" << format_double(model.affinity.gamma)
              << " wcss=" << format_double(model.wcss) << "\n";
}

struct ElbowOptions {
    std::string input;
    std::string out;
    bool no_header = false;
    int label_column = -1;
    int clusters = 2;
    std::string candidates;
    int restarts = kDefaultRestarts;
    std::uint64_t seed = 42;
};

void run_elbow(const ElbowOptions& opt) {
    const std::optional<int> label_col =
        opt.label_column >= 0 ? std::optional<int>(opt.label_column) : std::nullopt;
    const CsvDataset csv = load_csv(opt.input, !opt.no_header, label_col);
    const std::vector<int> candidates =
        parse_int_list(opt.candidates, "--candidates");

    const MSuggestion s = suggest_m(csv.x, opt.clusters, candidates,
                                    Rng(opt.seed), opt.restarts);
    std::string table = "m,wcss\n";
    for (const auto& point : s.curve) {
        std::cout << "m=" << point.m << " wcss=" << format_double(point.wcss)
                  << "\n";
        table += std::to_string(point.m) + "," + format_double(point.wcss) + "\n";
    }
    std::cout << "recommended m=" << s.recommended << "\n";
    if (!opt.out.empty()) write_text_file(opt.out, table);
}

struct BenchOptions {
    std::string vary = "n";
    std::string values;
    int fixed = 0;
    int clusters = 5;
    int dims = 10;
    int reps = 3;
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string out;
};

void run_bench(const BenchOptions& opt) {
    std::vector<int> values;
    if (!opt.values.empty()) {
        values = parse_int_list(opt.values, "--values");
    } else if (opt.vary == "n") {
        values = {1000, 2000, 4000, 8000};
    } else {
        values = {50, 100, 150, 200};
    }
    const int fixed = opt.fixed > 0 ? opt.fixed : (opt.vary == "n" ? 10 : 5000);

    const TimingSweep sweep =
        (opt.vary == "n")
            ? time_fit_n(values, fixed, opt.clusters, opt.dims, opt.reps, opt.seed)
            : time_fit_m(values, fixed, opt.clusters, opt.dims, opt.reps, opt.seed);

    std::cout << "fit: slope=" << format_double(sweep.fit.slope)
              << " intercept=" << format_double(sweep.fit.intercept)
              << " r2=" << format_double(sweep.fit.r2) << "\n";

    std::string content;
    if (opt.format == "json") {
        content += "{\"variable\":\"" + sweep.variable + "\",\"rows\":[";
        for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
            const auto& r = sweep.rows[i];
            if (i) content += ',';
            content += "{\"value\":" + format_double(r.value) +
                       ",\"mean_millis\":" + format_double(r.mean_millis) +
                       ",\"sd_millis\":" + format_double(r.sd_millis) + "}";
        }
        content += "],\"fit\":{\"slope\":" + format_double(sweep.fit.slope) +
                   ",\"intercept\":" + format_double(sweep.fit.intercept) +
                   ",\"r2\":" + format_double(sweep.fit.r2) + "}}\n";
    } else {
        content = "variable,value,mean_millis,sd_millis\n";
        for (const auto& r : sweep.rows)
            content += sweep.variable + "," + format_double(r.value) + "," +
                       format_double(r.mean_millis) + "," +
                       format_double(r.sd_millis) + "\n";
    }
    emit(content, opt.out);
}

void emit_reports(const std::vector<EvalReport>& reports,
                  const std::string& format, const std::string& out) {
    emit(format == "json" ? reports_to_jsonl(reports) : reports_to_csv(reports),
         out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral Bridges clustering"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
    DatasetRequest gen_req;
    std::string gen_out;
    gen->add_option("dataset", gen_req.name, "moons, circles, smile or impossible")
        ->required();
    gen->add_option("--n", gen_req.n, "point count (default per dataset)");
    gen->add_option("--noise", gen_req.noise, "jitter sigma (moons, circles)");
    gen->add_option("--ratio", gen_req.ratio, "inner radius ratio (circles)");
    gen->add_option("--seed", gen_req.seed, "rng seed");
    gen->add_option("--out", gen_out, "output CSV path")->required();
    gen->callback([&] {
        const LabeledDataset ds = make_dataset(gen_req);
        save_dataset_csv(ds, gen_out);
        std::cout << "dataset=" << ds.name << " rows=" << ds.x.rows()
                  << " dims=" << ds.x.cols() << " classes=" << ds.classes()
                  << "\n";
    });

    auto* fit_cmd = app.add_subcommand("fit", "Cluster a CSV of points");
    FitOptions fit_opt;
    fit_cmd->add_option("--input", fit_opt.input, "input CSV")->required();
    fit_cmd->add_option("--out", fit_opt.out, "labels CSV (row,label)");
    fit_cmd->add_option("--model-out", fit_opt.model_out, "model JSON path");
    fit_cmd->add_flag("--no-header", fit_opt.no_header,
                      "input has no header line");
    fit_cmd->add_option("--label-column", fit_opt.label_column,
                        "0-based column to drop as labels");
    fit_cmd->add_option("-k,--clusters", fit_opt.clusters, "cluster count K")
        ->required();
    fit_cmd->add_option("-m,--nodes", fit_opt.nodes, "Voronoi region count m")
        ->required();
    fit_cmd->add_option("--bigm", fit_opt.bigm, "affinity rescaling factor");
    fit_cmd->add_option("--seed", fit_opt.seed, "rng seed");
    fit_cmd->add_option("--restarts", fit_opt.restarts, "k-means restarts");
    fit_cmd->add_option("--max-iter", fit_opt.max_iter, "Lloyd iteration cap");
    fit_cmd->add_option("--tol", fit_opt.tol, "Lloyd movement tolerance");
    fit_cmd->add_option("--pca", fit_opt.pca_components,
                        "project onto this many principal components first");
    fit_cmd->callback([&] { run_fit(fit_opt); });

    auto* elbow = app.add_subcommand("elbow", "WCSS curve and m recommendation");
    ElbowOptions elbow_opt;
    elbow->add_option("--input", elbow_opt.input, "input CSV")->required();
    elbow->add_option("--out", elbow_opt.out, "curve CSV (m,wcss)");
    elbow->add_flag("--no-header", elbow_opt.no_header, "input has no header line");
    elbow->add_option("--label-column", elbow_opt.label_column,
                      "0-based column to drop as labels");
    elbow->add_option("-k,--clusters", elbow_opt.clusters, "cluster count K")
        ->required();
    elbow->add_option("--candidates", elbow_opt.candidates,
                      "comma-separated m values")
        ->required();
    elbow->add_option("--restarts", elbow_opt.restarts, "k-means restarts");
    elbow->add_option("--seed", elbow_opt.seed, "rng seed");
    elbow->callback([&] { run_elbow(elbow_opt); });

    auto* bench = app.add_subcommand("bench", "Fit-time scaling sweeps");
    BenchOptions bench_opt;
    bench->add_option("--vary", bench_opt.vary, "swept variable")
        ->check(CLI::IsMember({"n", "m"}));
    bench->add_option("--values", bench_opt.values, "comma-separated sweep values");
    bench->add_option("--fixed", bench_opt.fixed,
                      "held value of the other variable");
    bench->add_option("-k,--clusters", bench_opt.clusters, "cluster count K");
    bench->add_option("--dims", bench_opt.dims, "blob dimensionality");
    bench->add_option("--reps", bench_opt.reps, "repetitions per value");
    bench->add_option("--seed", bench_opt.seed, "rng seed");
    bench->add_option("--format", bench_opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--out", bench_opt.out, "output path (default stdout)");
    bench->callback([&] { run_bench(bench_opt); });

    auto* experiment = app.add_subcommand("experiment", "Preset studies");
    experiment->require_subcommand(1);

    auto* noise = experiment->add_subcommand(
        "noise", "Clean vs uniform vs Gaussian noise on the composite scene");
    int noise_n = kImpossibleSize;
    std::uint64_t noise_seed = 42;
    std::string noise_format = "csv";
    std::string noise_out;
    noise->add_option("--n", noise_n, "scene size");
    noise->add_option("--seed", noise_seed, "rng seed");
    noise->add_option("--format", noise_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    noise->add_option("--out", noise_out, "output path (default stdout)");
    noise->callback([&] {
        emit_reports(noise_experiment(noise_n, noise_seed), noise_format,
                     noise_out);
    });

    auto* msweep = experiment->add_subcommand(
        "msweep", "Score while sweeping the region count m");
    DatasetRequest sweep_req;
    int sweep_clusters = 0;
    std::string sweep_values = "2,6,12,24";
    int sweep_reps = 5;
    std::string sweep_format = "csv";
    std::string sweep_out;
    msweep->add_option("--dataset", sweep_req.name,
                       "moons, circles, smile or impossible")
        ->check(CLI::IsMember({"moons", "circles", "smile", "impossible"}));
    msweep->add_option("--n", sweep_req.n, "point count (default per dataset)");
    msweep->add_option("--noise", sweep_req.noise, "jitter sigma (moons, circles)");
    msweep->add_option("--ratio", sweep_req.ratio, "inner radius ratio (circles)");
    msweep->add_option("-k,--clusters", sweep_clusters,
                       "cluster count K (default per dataset)");
    msweep->add_option("--m", sweep_values, "comma-separated m values");
    msweep->add_option("--reps", sweep_reps, "seeds per m value");
    msweep->add_option("--seed", sweep_req.seed, "base rng seed");
    msweep->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    msweep->add_option("--out", sweep_out, "output path (default stdout)");
    msweep->callback([&] {
        const LabeledDataset ds = make_dataset(sweep_req);
        const int clusters =
            sweep_clusters > 0 ? sweep_clusters : default_clusters(sweep_req.name);
        const std::vector<int> values = parse_int_list(sweep_values, "--m");
        emit_reports(m_sweep_reports(ds, clusters, values, sweep_reps,
                                     sweep_req.seed),
                     sweep_format, sweep_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sbridge::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::config:
                return 2;
            case ErrorKind::data:
                return 3;
            case ErrorKind::numeric:
                return 4;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
