#pragma once

#include <vector>

#include "sbridge/numerics.hpp"
#include "sbridge/quantize.hpp"

namespace sbridge {

// Bridge affinity between pairs of Voronoi regions.
//
// For regions k, l with centroids mu_k, mu_l, every point x in V_k union V_l
// projects onto the segment [mu_k, mu_l] at parameter
//     t = <x - mu_k, mu_l - mu_k> / |mu_l - mu_k|^2, clamped to [0, 1],
// and contributes alpha^2 with alpha = min(t, 1 - t). The raw affinity is the
// mean contribution, a_kl = sum(alpha^2) / (n_k + n_l), which lies in
// [0, 1/4]: alpha reaches 1/2 only for points projecting onto the segment's
// midpoint.

struct ProjectionCoeffs {
    std::vector<double> t;      // clamped projection parameter per point
    std::vector<double> alpha;  // min(t, 1 - t)
};

// Segment coordinates for each row of `points` relative to [mu_k, mu_l].
// Throws CoincidentCentroids when mu_k == mu_l and DimensionError on a
// dimension mismatch.
ProjectionCoeffs projection_coeffs(const Eigen::Ref<const Matrix>& points,
                                   const Eigen::RowVectorXd& mu_k,
                                   const Eigen::RowVectorXd& mu_l);

// All m(m-1)/2 raw affinities. For every point x in V_k the unclamped
// parameter satisfies t <= 1/2 (mu_k is the nearest centroid), so
// alpha = min(t+, 1 - t+) = max(t, 0) with the clamp at 1 never binding; this
// lets the whole family be evaluated as m matrix products: region k's
// centered block against the segment matrix (centroids - mu_k), entries
// clamped at zero and squared, column sums accumulated into numerators.
// Throws CoincidentCentroids when two centroids coincide.
SymMatrix raw_affinity(const Eigen::Ref<const Matrix>& x,
                       const QuantizationResult& q);

// Reference implementation composed from projection_coeffs on each pair's
// point union; algebraically identical to raw_affinity, kept for validation.
SymMatrix raw_affinity_naive(const Eigen::Ref<const Matrix>& x,
                             const QuantizationResult& q);

// Equivalent inertia form of the same quantity: with I the within-region
// inertia of V_k and V_l about their own centroids and B the inertia about
// the clamped projections onto [mu_k, mu_l],
//     a_kl = |I - B| / ((n_k + n_l) * |mu_l - mu_k|^2).
double bridge_inertia_gap(const Eigen::Ref<const Matrix>& x,
                          const QuantizationResult& q, int k, int l);

// Rescaled affinity: entries are mapped through
//     a~ = exp(gamma * (sqrt(a) - max(sqrt(a)) / 2)),
// gamma = ln(m_factor) / (q90 - q10) with the quantiles taken over all m^2
// shifted sqrt-entries. The diagonal is forced to zero afterwards. When the
// quantile spread is below 1e-12 the transform degenerates: gamma = 0, all
// off-diagonal entries become 1 and degenerate_spread is set.
struct AffinityTransform {
    SymMatrix transformed;
    double gamma = 0.0;
    bool degenerate_spread = false;
};

inline constexpr double kDefaultMFactor = 1e4;

AffinityTransform transform_affinity(const SymMatrix& raw,
                                     double m_factor = kDefaultMFactor);

struct AffinityMatrix {
    SymMatrix raw;
    SymMatrix transformed;
    double gamma = 0.0;
    double m_factor = kDefaultMFactor;
    bool degenerate_spread = false;
};

AffinityMatrix build_affinity(const Eigen::Ref<const Matrix>& x,
                              const QuantizationResult& q,
                              double m_factor = kDefaultMFactor);

}  // namespace sbridge
