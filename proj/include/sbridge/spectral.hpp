#pragma once

#include <vector>

#include "sbridge/numerics.hpp"
#include "sbridge/rng.hpp"

namespace sbridge {

// Spectral clustering of the region graph (normalized symmetric Laplacian).

// Embedding: rows of the K eigenvectors of L = I - D^-1/2 A D^-1/2 with the
// smallest eigenvalues, then each row scaled to unit length (zero rows are
// left as is). Throws KFeasibility unless 1 <= K <= order and IsolatedRegion
// if some region has zero total affinity.
Eigen::MatrixXd laplacian_embedding(const SymMatrix& affinity, int K);

// K-means++ (10 restarts) on the embedding rows. The returned labels are
// canonical (first region of each cluster in row order gets the next id) and
// cover all of [0, K); a collapsed embedding that cannot fill K clusters
// throws KFeasibility.
std::vector<int> spectral_cluster(const SymMatrix& affinity, int K,
                                  const Rng& rng, int restarts = 10);

// Relabels so cluster ids appear in order of first occurrence; the partition
// is unchanged.
std::vector<int> canonicalize_labels(std::vector<int> labels);

}  // namespace sbridge
