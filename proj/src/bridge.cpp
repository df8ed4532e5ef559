#include "sbridge/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sbridge/parallel.hpp"

namespace sbridge {
namespace {

void check_quantization(const Eigen::Ref<const Matrix>& x,
                        const QuantizationResult& q) {
    const auto n = static_cast<std::size_t>(x.rows());
    const auto m = static_cast<std::size_t>(q.centroids.rows());
    if (q.centroids.cols() != x.cols())
        throw DimensionError("bridge: centroid dimension mismatch");
    if (q.assignment.size() != n)
        throw LengthMismatch("bridge: assignment length differs from point count");
    if (q.counts.size() != m)
        throw LengthMismatch("bridge: counts length differs from region count");
    std::vector<int> tally(m, 0);
    for (int a : q.assignment) {
        if (a < 0 || static_cast<std::size_t>(a) >= m)
            throw IndexError("bridge: assignment index out of range");
        ++tally[static_cast<std::size_t>(a)];
    }
    if (tally != q.counts)
        throw LengthMismatch("bridge: counts do not match the assignment");
}

// Pairwise squared centroid distances; coincident pairs are fatal because
// the projection segment degenerates.
Eigen::MatrixXd segment_norms2(const Matrix& c) {
    const Eigen::Index m = c.rows();
    Eigen::MatrixXd l2(m, m);
    l2.diagonal().setZero();
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = k + 1; l < m; ++l) {
            const double v = (c.row(k) - c.row(l)).squaredNorm();
            if (v == 0.0)
                throw CoincidentCentroids("bridge: regions " + std::to_string(k) +
                                          " and " + std::to_string(l) +
                                          " share a centroid");
            l2(k, l) = l2(l, k) = v;
        }
    }
    return l2;
}

std::vector<std::vector<Eigen::Index>> region_members(
    const QuantizationResult& q) {
    std::vector<std::vector<Eigen::Index>> members(
        static_cast<std::size_t>(q.centroids.rows()));
    for (std::size_t k = 0; k < members.size(); ++k)
        members[k].reserve(static_cast<std::size_t>(q.counts[k]));
    for (std::size_t i = 0; i < q.assignment.size(); ++i)
        members[static_cast<std::size_t>(q.assignment[i])].push_back(
            static_cast<Eigen::Index>(i));
    return members;
}

}  // namespace

ProjectionCoeffs projection_coeffs(const Eigen::Ref<const Matrix>& points,
                                   const Eigen::RowVectorXd& mu_k,
                                   const Eigen::RowVectorXd& mu_l) {
    if (mu_k.size() != mu_l.size() || points.cols() != mu_k.size())
        throw DimensionError("projection_coeffs: dimension mismatch");
    const Eigen::RowVectorXd seg = mu_l - mu_k;
    const double l2 = seg.squaredNorm();
    if (l2 == 0.0)
        throw CoincidentCentroids("projection_coeffs: centroids coincide");

    ProjectionCoeffs out;
    const auto n = static_cast<std::size_t>(points.rows());
    out.t.resize(n);
    out.alpha.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double raw =
            (points.row(static_cast<Eigen::Index>(i)) - mu_k).dot(seg) / l2;
        const double t = std::clamp(raw, 0.0, 1.0);
        out.t[i] = t;
        out.alpha[i] = std::min(t, 1.0 - t);
    }
    return out;
}

SymMatrix raw_affinity(const Eigen::Ref<const Matrix>& x,
                       const QuantizationResult& q) {
    require_finite(x, "raw_affinity");
    check_quantization(x, q);
    const Eigen::Index m = q.centroids.rows();
    SymMatrix a(m);
    if (m == 1) return a;
    const Eigen::MatrixXd l2 = segment_norms2(q.centroids);

    // Points regrouped by region and centered on their centroid, so each
    // region is one contiguous block feeding a single matrix product.
    const Eigen::Index n = x.rows();
    std::vector<Eigen::Index> start(static_cast<std::size_t>(m) + 1, 0);
    for (Eigen::Index k = 0; k < m; ++k)
        start[static_cast<std::size_t>(k) + 1] =
            start[static_cast<std::size_t>(k)] + q.counts[static_cast<std::size_t>(k)];
    Matrix grouped(n, x.cols());
    {
        std::vector<Eigen::Index> pos(start.begin(), start.end() - 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(q.assignment[static_cast<std::size_t>(i)]);
            grouped.row(pos[k]++) =
                x.row(i) - q.centroids.row(static_cast<Eigen::Index>(k));
        }
    }

    // numer(k, l) = sum over region k's points of <x - mu_k, mu_l - mu_k>+^2.
    // Each region accumulates its own row over a transposed segment buffer
    // whose rows are contiguous, so the inner loops vectorize; rows are
    // written by exactly one block, so the result is independent of the
    // worker count.
    const Eigen::Index d = x.cols();
    using RowArray = Eigen::Array<double, 1, Eigen::Dynamic>;
    Eigen::MatrixXd numer(m, m);
    for_blocks(static_cast<std::size_t>(m), 1,
               [&](std::size_t block, std::size_t, std::size_t) {
                   const auto k = static_cast<Eigen::Index>(block);
                   const Eigen::Index nk = q.counts[block];
                   if (nk == 0) {
                       numer.row(k).setZero();
                       return;
                   }
                   // seg_t(j, l) = centroids(l, j) - centroids(k, j)
                   Matrix seg_t = q.centroids.transpose();
                   seg_t.colwise() -= q.centroids.row(k).transpose();
                   RowArray acc = RowArray::Zero(m);
                   RowArray proj(m);
                   const Eigen::Index end = start[block] + nk;
                   for (Eigen::Index r = start[block]; r < end; ++r) {
                       proj = grouped(r, 0) * seg_t.row(0).array();
                       for (Eigen::Index j = 1; j < d; ++j)
                           proj += grouped(r, j) * seg_t.row(j).array();
                       acc += proj.max(0.0).square();
                   }
                   numer.row(k) = acc.matrix();
               });

    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = k + 1; l < m; ++l) {
            const double pair_n = q.counts[static_cast<std::size_t>(k)] +
                                  q.counts[static_cast<std::size_t>(l)];
            a.set(k, l, (numer(k, l) + numer(l, k)) /
                            (pair_n * l2(k, l) * l2(k, l)));
        }
    }
    return a;
}

SymMatrix raw_affinity_naive(const Eigen::Ref<const Matrix>& x,
                             const QuantizationResult& q) {
    require_finite(x, "raw_affinity_naive");
    check_quantization(x, q);
    const Eigen::Index m = q.centroids.rows();
    SymMatrix a(m);
    if (m == 1) return a;
    const auto members = region_members(q);

    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = k + 1; l < m; ++l) {
            const auto& vk = members[static_cast<std::size_t>(k)];
            const auto& vl = members[static_cast<std::size_t>(l)];
            Matrix pair_points(vk.size() + vl.size(), x.cols());
            Eigen::Index row = 0;
            for (Eigen::Index i : vk) pair_points.row(row++) = x.row(i);
            for (Eigen::Index i : vl) pair_points.row(row++) = x.row(i);

            const ProjectionCoeffs pc = projection_coeffs(
                pair_points, q.centroids.row(k), q.centroids.row(l));
            double sum = 0.0;
            for (double alpha : pc.alpha) sum += alpha * alpha;
            a.set(k, l, sum / static_cast<double>(pair_points.rows()));
        }
    }
    return a;
}

double bridge_inertia_gap(const Eigen::Ref<const Matrix>& x,
                          const QuantizationResult& q, int k, int l) {
    require_finite(x, "bridge_inertia_gap");
    check_quantization(x, q);
    const Eigen::Index m = q.centroids.rows();
    if (k < 0 || l < 0 || k >= m || l >= m || k == l)
        throw IndexError("bridge_inertia_gap: invalid region pair");

    const Eigen::RowVectorXd mu_k = q.centroids.row(k);
    const Eigen::RowVectorXd mu_l = q.centroids.row(l);
    const Eigen::RowVectorXd seg = mu_l - mu_k;
    const double l2 = seg.squaredNorm();
    if (l2 == 0.0)
        throw CoincidentCentroids("bridge_inertia_gap: centroids coincide");

    double inertia_own = 0.0;
    double inertia_bridge = 0.0;
    Eigen::Index pair_n = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const int a = q.assignment[static_cast<std::size_t>(i)];
        if (a != k && a != l) continue;
        ++pair_n;
        const Eigen::RowVectorXd& mu_own = (a == k) ? mu_k : mu_l;
        inertia_own += (x.row(i) - mu_own).squaredNorm();
        const double t = std::clamp((x.row(i) - mu_k).dot(seg) / l2, 0.0, 1.0);
        inertia_bridge += (x.row(i) - (mu_k + t * seg)).squaredNorm();
    }
    return std::abs(inertia_own - inertia_bridge) /
           (static_cast<double>(pair_n) * l2);
}

AffinityTransform transform_affinity(const SymMatrix& raw, double m_factor) {
    if (!(m_factor > 1.0))
        throw InvalidM("transform_affinity: m_factor must be > 1");
    const Eigen::Index m = raw.order();
    if (m == 0) throw EmptyInput("transform_affinity: empty affinity");
    for (double v : raw.packed())
        if (!std::isfinite(v) || v < 0.0)
            throw Error(ErrorKind::config,
                        "transform_affinity: affinities must be finite and nonnegative");

    SymMatrix shifted(m);
    {
        auto out = shifted.packed();
        auto in = raw.packed();
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::sqrt(in[i]);
    }
    const double shift = 0.5 * shifted.max_entry();
    for (double& v : shifted.packed()) v -= shift;

    // Quantiles run over the full m x m square (off-diagonal entries twice),
    // matching how the affinity enters the Laplacian.
    std::vector<double> flat = shifted.entries_square();
    const double probs[] = {0.10, 0.90};
    const std::vector<double> qs = quantiles(std::move(flat), probs);
    const double spread = qs[1] - qs[0];

    AffinityTransform out;
    out.transformed = SymMatrix(m);
    if (spread < 1e-12) {
        out.degenerate_spread = true;
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i + 1; j < m; ++j) out.transformed.set(i, j, 1.0);
        return out;
    }
    out.gamma = std::log(m_factor) / spread;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j)
            out.transformed.set(i, j, std::exp(out.gamma * shifted(i, j)));
    return out;
}

AffinityMatrix build_affinity(const Eigen::Ref<const Matrix>& x,
                              const QuantizationResult& q, double m_factor) {
    AffinityMatrix out;
    out.raw = raw_affinity(x, q);
    AffinityTransform t = transform_affinity(out.raw, m_factor);
    out.transformed = std::move(t.transformed);
    out.gamma = t.gamma;
    out.m_factor = m_factor;
    out.degenerate_spread = t.degenerate_spread;
    return out;
}

}  // namespace sbridge
