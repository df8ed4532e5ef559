#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sbridge/datasets.hpp"
#include "sbridge/model.hpp"

namespace sbridge {

// One scored run. Serialized column order is fixed:
// dataset,method,seed,m,K,ari,nmi,fit_millis.
struct EvalReport {
    std::string dataset;
    std::string method;  // "sbridge" or "kmeans"
    std::uint64_t seed = 0;
    int m = 0;
    int K = 0;
    double ari = 0.0;
    double nmi = 0.0;
    double fit_millis = 0.0;
};

std::string reports_to_csv(std::span<const EvalReport> reports);
std::string reports_to_jsonl(std::span<const EvalReport> reports);

// Scores one fit of `cfg` against ground truth. Only the first
// `scored_points` rows enter ari/nmi (0 means all); injected noise rows sit
// at the end, so this restricts scoring to the original points.
EvalReport evaluate_fit(const LabeledDataset& ds, const Config& cfg,
                        Eigen::Index scored_points = 0);

// Plain k-means++ labels drawn from the identical rng stream the pipeline's
// quantization stage would use, so a pipeline run with nodes == clusters
// reproduces this partition exactly.
std::vector<int> kmeans_baseline(const Eigen::Ref<const Matrix>& x,
                                 const Config& cfg);
EvalReport evaluate_kmeans(const LabeledDataset& ds, const Config& cfg,
                           Eigen::Index scored_points = 0);

// Least squares y = slope * x + intercept with r2 = 1 - SS_res / SS_tot.
// A single point or zero x-variance degenerates to slope 0, r2 1.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

// Wall-clock scaling of fit() while one size variable sweeps and the rest of
// the configuration is held fixed. Each value is fitted `reps` times on
// Gaussian-blob data (sd over reps uses the n-1 divisor); the summary line
// fits mean_millis against the swept value.
struct TimingRow {
    double value = 0.0;
    double mean_millis = 0.0;
    double sd_millis = 0.0;
};
struct TimingSweep {
    std::string variable;  // "n" or "m"
    std::vector<TimingRow> rows;
    LinearFit fit;
};
TimingSweep time_fit_n(std::span<const int> n_values, int nodes, int clusters,
                       int dims, int reps, std::uint64_t seed);
TimingSweep time_fit_m(std::span<const int> m_values, int n, int clusters,
                       int dims, int reps, std::uint64_t seed);

// Benchmark-sized pipeline settings for the timing sweeps: fewer restarts
// and Lloyd iterations than the library defaults, fixed here so timing runs
// are comparable across invocations.
inline constexpr int kBenchRestarts = 3;
inline constexpr int kBenchLloydMaxIter = 100;

// One report per (m value, repetition); repetition r runs with seed + r.
std::vector<EvalReport> m_sweep_reports(const LabeledDataset& ds, int clusters,
                                        std::span<const int> m_values, int reps,
                                        std::uint64_t seed);

struct MSweepRow {
    int m = 0;
    double mean_ari = 0.0;
    double mean_nmi = 0.0;
    double mean_millis = 0.0;
};
std::vector<MSweepRow> m_sweep(const LabeledDataset& ds, int clusters,
                               std::span<const int> m_values, int reps,
                               std::uint64_t seed);

// Noise-robustness preset on the composite scene (K = 7, m = 250): the clean
// dataset, the same points plus 250 uniform background points (scored on the
// original points only), and the same points under Gaussian jitter of sigma
// 0.1. Three sbridge rows in that order.
std::vector<EvalReport> noise_experiment(int n, std::uint64_t seed);

}  // namespace sbridge
