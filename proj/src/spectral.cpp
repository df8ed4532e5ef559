#include "sbridge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>

#include "sbridge/quantize.hpp"

namespace sbridge {

Eigen::MatrixXd laplacian_embedding(const SymMatrix& affinity, int K) {
    const Eigen::Index m = affinity.order();
    if (m == 0) throw EmptyInput("laplacian_embedding: empty affinity");
    if (K < 1 || K > m)
        throw KFeasibility("laplacian_embedding: K must be in [1, m], got " +
                           std::to_string(K));

    const Vector degrees = affinity.row_sums();
    Vector dinv(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(degrees[i] > 0.0))
            throw IsolatedRegion("laplacian_embedding: region " +
                                 std::to_string(i) + " has zero total affinity");
        dinv[i] = 1.0 / std::sqrt(degrees[i]);
    }

    Eigen::MatrixXd lap(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = -dinv[i] * affinity(i, j) * dinv[j];
            lap(i, j) = lap(j, i) = v;
        }
        lap(i, i) += 1.0;
    }

    const EigenPairs ep = sym_eigen(std::move(lap));
    Eigen::MatrixXd u = ep.vectors.leftCols(K);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double norm = u.row(i).norm();
        if (norm > 0.0) u.row(i) /= norm;
    }
    return u;
}

std::vector<int> spectral_cluster(const SymMatrix& affinity, int K,
                                  const Rng& rng, int restarts) {
    if (affinity.order() == 1) {
        if (K != 1) throw KFeasibility("spectral_cluster: K must be 1 for a single region");
        return {0};
    }
    const Eigen::MatrixXd u = laplacian_embedding(affinity, K);
    Matrix rows = u;  // row-major copy for the quantizer
    const QuantizationResult q = kmeans_fit(rows, K, rng, restarts);

    std::vector<char> seen(static_cast<std::size_t>(K), 0);
    for (int a : q.assignment) seen[static_cast<std::size_t>(a)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw KFeasibility(
            "spectral_cluster: embedding collapsed, fewer than K clusters");
    return canonicalize_labels(q.assignment);
}

std::vector<int> canonicalize_labels(std::vector<int> labels) {
    std::unordered_map<int, int> remap;
    remap.reserve(labels.size());
    for (int& v : labels) {
        auto it = remap.find(v);
        if (it == remap.end())
            it = remap.emplace(v, static_cast<int>(remap.size())).first;
        v = it->second;
    }
    return labels;
}

}  // namespace sbridge
