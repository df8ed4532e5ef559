#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sbridge/bridge.hpp"
#include "sbridge/numerics.hpp"
#include "sbridge/quantize.hpp"
#include "sbridge/rng.hpp"

namespace sbridge {

// End-to-end pipeline: quantize the points into `nodes` Voronoi regions,
// build the bridge affinity between regions, spectrally cluster the region
// graph into `clusters` groups, and hand each point its region's label.
struct Config {
    int clusters = 2;                          // K, final cluster count
    int nodes = 100;                           // m, Voronoi region count
    double m_factor = kDefaultMFactor;         // affinity rescaling strength
    std::uint64_t seed = 42;
    int kmeans_restarts = kDefaultRestarts;
    int lloyd_max_iter = kDefaultLloydMaxIter;
    double lloyd_tol = kDefaultLloydTol;
};

// Stage tags for deriving the per-stage rng streams from the seed; exposed
// so baselines can reproduce an individual stage exactly.
inline constexpr std::uint64_t kStreamQuantize = 1;
inline constexpr std::uint64_t kStreamSpectral = 2;

inline Rng quantize_stream(const Config& cfg) {
    return Rng(cfg.seed).split(kStreamQuantize);
}
inline Rng spectral_stream(const Config& cfg) {
    return Rng(cfg.seed).split(kStreamSpectral);
}

struct Model {
    Config config;
    Matrix centroids;                    // nodes x d
    std::vector<int> region_labels;      // per region, cluster id in [0, K)
    std::vector<int> region_assignment;  // per training point, region id
    std::vector<int> point_labels;       // per training point, cluster id
    AffinityMatrix affinity;
    double wcss = 0.0;
};

// Fixed seed, fixed data, fixed config -> bit-identical model. Throws
// KFeasibility (K < 1 or K > m), InvalidM (m > n or m_factor <= 1),
// Error(config) for nonsense restart/iteration settings, and forwards
// numeric failures from the stages with stage-named messages.
Model fit(const Eigen::Ref<const Matrix>& x, const Config& cfg);

// Nearest-centroid region lookup followed by the stored region label; uses
// the same distance kernel and tie rule as training, so predicting the
// training matrix returns point_labels exactly.
std::vector<int> predict(const Model& model, const Eigen::Ref<const Matrix>& x);

// region_labels[assignment[i]] for every i; throws IndexError on an
// out-of-range region index.
std::vector<int> propagate(std::span<const int> region_labels,
                           std::span<const int> assignment);

// Elbow heuristic over the wcss_curve of the candidates (sorted ascending,
// duplicates dropped). With curve points (m_i, w_i), i = 0..p-1, and the
// initial drop D = w_0 - w_1, the recommendation is the smallest m_i whose
// centered second difference satisfies |w_i - 2 w_{i+1} + w_{i+2}| <= 0.05 D,
// falling back to the last candidate when the curve never flattens. A flat
// start (D <= 1e-12 max(1, w_0)) or a single candidate recommends the
// smallest. Candidates below `clusters` throw InvalidM.
struct MSuggestion {
    int recommended = 0;
    std::vector<WcssPoint> curve;
};
MSuggestion suggest_m(const Eigen::Ref<const Matrix>& x, int clusters,
                      std::vector<int> candidates, const Rng& rng,
                      int restarts = kDefaultRestarts);

// Versioned JSON serialization of (config, centroids, region labels, gamma).
// Serializing a loaded model reproduces the file byte for byte; doubles are
// written in shortest round-trip form. Loading validates format, version,
// shapes and label ranges (ParseError) before constructing the model; the
// training-only fields (point labels, affinity entries) stay empty.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace sbridge
