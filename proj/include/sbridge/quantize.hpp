#pragma once

#include <vector>

#include "sbridge/numerics.hpp"
#include "sbridge/rng.hpp"

namespace sbridge {

class Rng;

// Vector quantization of n points into m Voronoi regions.
//
// Tie-breaking is fixed everywhere so a (data, seed) pair maps to exactly one
// result: equidistant points go to the lowest centroid index, and all
// floating-point reductions run in a thread-count-independent block order.
struct QuantizationResult {
    Matrix centroids;             // m x d
    std::vector<int> assignment;  // per point, index of the nearest centroid
    std::vector<int> counts;      // per region, number of assigned points
    double wcss = 0.0;            // sum of squared distances to assigned centroids
    std::vector<double> wcss_history;  // objective after each assignment pass
    int iterations = 0;
};

inline constexpr int kDefaultRestarts = 10;
inline constexpr int kDefaultLloydMaxIter = 300;
inline constexpr double kDefaultLloydTol = 1e-6;

// k-means++ seeding: first centroid uniform, each further centroid drawn with
// probability proportional to the squared distance to the nearest centroid
// chosen so far. When every remaining distance is zero (duplicate-only
// residue) the next centroid is drawn uniformly among unchosen points.
// Throws InvalidM unless 1 <= m <= n.
Matrix kmeanspp_seed(const Eigen::Ref<const Matrix>& x, int m, Rng& rng);

// Continuation of the same D^2 scheme from an existing centroid set up to
// m_target rows; used to extend a smaller solution with extra centroids.
Matrix kmeanspp_extend(const Eigen::Ref<const Matrix>& x,
                       const Eigen::Ref<const Matrix>& centroids, int m_target,
                       Rng& rng);

// Lloyd iterations from the given centroids until the largest centroid move
// is <= tol or max_iter passes ran. Regions left empty by an assignment pass
// are repaired immediately: the centroid moves onto the point farthest from
// its current centroid (donor region must keep at least one member; ties take
// the lowest point index). A final assignment pass guarantees the returned
// assignment is the exact nearest-centroid map of the returned centroids,
// and wcss is recomputed exactly from it. wcss_history is non-increasing.
QuantizationResult lloyd(const Eigen::Ref<const Matrix>& x, Matrix centroids,
                         int max_iter = kDefaultLloydMaxIter,
                         double tol = kDefaultLloydTol);

// Best of `restarts` seed+Lloyd runs (strictly lower wcss wins; the earliest
// restart wins ties). Restart r draws from rng.split(r).
QuantizationResult kmeans_fit(const Eigen::Ref<const Matrix>& x, int m,
                              const Rng& rng, int restarts = kDefaultRestarts,
                              int max_iter = kDefaultLloydMaxIter,
                              double tol = kDefaultLloydTol);

// Nearest-centroid index per row of x, using the same expanded-form kernel
// and tie rule as the assignment passes inside lloyd.
std::vector<int> nearest_centroids(const Eigen::Ref<const Matrix>& x,
                                   const Matrix& centroids);

struct WcssPoint {
    int m = 0;
    double wcss = 0.0;
};

// Best-of-restarts WCSS for each candidate m, returned in ascending m order
// (duplicates collapsed). Each m additionally warm-starts from the previous
// best solution extended by kmeanspp_extend, which makes the reported curve
// non-increasing in m. Candidate m outside [1, n] throws InvalidM.
std::vector<WcssPoint> wcss_curve(const Eigen::Ref<const Matrix>& x,
                                  std::vector<int> m_values, const Rng& rng,
                                  int restarts = kDefaultRestarts,
                                  int max_iter = kDefaultLloydMaxIter,
                                  double tol = kDefaultLloydTol);

}  // namespace sbridge
