#include "sbridge/quantize.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "sbridge/parallel.hpp"

namespace sbridge {
namespace {

// Fixed block size for the assignment pass; block-local GEMMs keep the
// arithmetic order identical for every SB_THREADS setting.
constexpr std::size_t kAssignBlock = 1024;

// Nearest-centroid pass. Distances are compared in the expanded form
// |x|^2 - 2<x,mu> + |mu|^2; the |x|^2 term is common to all centroids, so the
// argmin scans |mu|^2 - 2<x,mu> and the squared distance is recovered after
// the fact (clamped at zero against rounding). Ties keep the lowest index.
void assign_points(const Eigen::Ref<const Matrix>& x, const Matrix& centroids,
                   const Vector& xnorm, std::vector<int>& assignment,
                   Vector& mind2) {
    const Eigen::Index m = centroids.rows();
    const Vector cnorm = centroids.rowwise().squaredNorm();
    for_blocks(static_cast<std::size_t>(x.rows()), kAssignBlock,
               [&](std::size_t, std::size_t begin, std::size_t end) {
                   const auto b = static_cast<Eigen::Index>(begin);
                   const auto len = static_cast<Eigen::Index>(end - begin);
                   const Matrix g = x.middleRows(b, len) * centroids.transpose();
                   for (Eigen::Index i = 0; i < len; ++i) {
                       int arg = 0;
                       double best = cnorm[0] - 2.0 * g(i, 0);
                       for (Eigen::Index k = 1; k < m; ++k) {
                           const double v = cnorm[k] - 2.0 * g(i, k);
                           if (v < best) {
                               best = v;
                               arg = static_cast<int>(k);
                           }
                       }
                       assignment[static_cast<std::size_t>(b + i)] = arg;
                       mind2[b + i] = std::max(0.0, xnorm[b + i] + best);
                   }
               });
}

void recount(const std::vector<int>& assignment, std::vector<int>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int a : assignment) ++counts[static_cast<std::size_t>(a)];
}

// Moves each empty centroid onto the point farthest from its assigned
// centroid. The donor region must keep at least one member and the donated
// point must sit at a strictly positive distance; ties take the lowest point
// index. Returns whether anything changed.
bool repair_empty(const Eigen::Ref<const Matrix>& x, Matrix& centroids,
                  std::vector<int>& assignment, std::vector<int>& counts,
                  Vector& mind2) {
    bool changed = false;
    const auto m = static_cast<Eigen::Index>(counts.size());
    for (Eigen::Index k = 0; k < m; ++k) {
        if (counts[static_cast<std::size_t>(k)] != 0) continue;
        Eigen::Index donor = -1;
        double best = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            if (counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])] <= 1)
                continue;
            if (mind2[i] > best) {
                best = mind2[i];
                donor = i;
            }
        }
        if (donor < 0) continue;
        centroids.row(k) = x.row(donor);
        auto& a = assignment[static_cast<std::size_t>(donor)];
        --counts[static_cast<std::size_t>(a)];
        a = static_cast<int>(k);
        counts[static_cast<std::size_t>(k)] = 1;
        mind2[donor] = 0.0;
        changed = true;
    }
    return changed;
}

// Per-region means; regions that are still empty keep their previous row.
void update_means(const Eigen::Ref<const Matrix>& x,
                  const std::vector<int>& assignment,
                  const std::vector<int>& counts, const Matrix& centroids,
                  Matrix& next) {
    next.setZero();
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        next.row(assignment[static_cast<std::size_t>(i)]) += x.row(i);
    for (Eigen::Index k = 0; k < next.rows(); ++k) {
        const int c = counts[static_cast<std::size_t>(k)];
        if (c > 0)
            next.row(k) /= static_cast<double>(c);
        else
            next.row(k) = centroids.row(k);
    }
}

// min-distance update against one extra centroid, expanded form.
void fold_distance(const Eigen::Ref<const Matrix>& x, const Vector& xnorm,
                   const Eigen::RowVectorXd& c, Vector& d2) {
    const Vector g = x * c.transpose();
    const double cn = c.squaredNorm();
    d2 = d2.cwiseMin(xnorm - 2.0 * g + Vector::Constant(x.rows(), cn))
             .cwiseMax(0.0);
}

// Draws indices proportional to d2 (chosen points carry exact zeros); falls
// back to a uniform draw over unchosen points when all weights vanish.
Eigen::Index draw_next_center(const Vector& d2, const std::vector<char>& chosen,
                              Rng& rng) {
    const double total = d2.sum();
    if (total > 0.0) {
        const double u = rng.next_double() * total;
        double acc = 0.0;
        Eigen::Index last_positive = -1;
        for (Eigen::Index i = 0; i < d2.size(); ++i) {
            if (d2[i] <= 0.0) continue;
            acc += d2[i];
            last_positive = i;
            if (acc > u) return i;
        }
        return last_positive;  // cumulative rounding pushed u past the total
    }
    std::uint64_t unchosen = 0;
    for (char c : chosen)
        if (!c) ++unchosen;
    std::uint64_t r = rng.next_below(unchosen);
    for (Eigen::Index i = 0; i < d2.size(); ++i) {
        if (chosen[static_cast<std::size_t>(i)]) continue;
        if (r == 0) return i;
        --r;
    }
    return -1;  // unreachable: unchosen counted above
}

Matrix seed_from(const Eigen::Ref<const Matrix>& x,
                 const Eigen::Ref<const Matrix>& existing, int m_target,
                 Rng& rng) {
    const Eigen::Index n = x.rows();
    Matrix c(m_target, x.cols());
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    const Vector xnorm = x.rowwise().squaredNorm();
    Vector d2;
    Eigen::Index filled = existing.rows();

    if (filled == 0) {
        const auto first = static_cast<Eigen::Index>(
            rng.next_below(static_cast<std::uint64_t>(n)));
        c.row(0) = x.row(first);
        chosen[static_cast<std::size_t>(first)] = 1;
        d2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
        fold_distance(x, xnorm, c.row(0), d2);
        d2[first] = 0.0;
        filled = 1;
    } else {
        c.topRows(filled) = existing;
        d2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
        for (Eigen::Index k = 0; k < filled; ++k)
            fold_distance(x, xnorm, c.row(k), d2);
    }

    for (; filled < m_target; ++filled) {
        const Eigen::Index pick = draw_next_center(d2, chosen, rng);
        c.row(filled) = x.row(pick);
        chosen[static_cast<std::size_t>(pick)] = 1;
        fold_distance(x, xnorm, c.row(filled), d2);
        d2[pick] = 0.0;
    }
    return c;
}

}  // namespace

Matrix kmeanspp_seed(const Eigen::Ref<const Matrix>& x, int m, Rng& rng) {
    require_finite(x, "kmeanspp_seed");
    if (m < 1 || m > x.rows())
        throw InvalidM("kmeanspp_seed: m must be in [1, n], got " + std::to_string(m));
    return seed_from(x, Matrix(0, x.cols()), m, rng);
}

Matrix kmeanspp_extend(const Eigen::Ref<const Matrix>& x,
                       const Eigen::Ref<const Matrix>& centroids, int m_target,
                       Rng& rng) {
    require_finite(x, "kmeanspp_extend");
    require_finite(centroids, "kmeanspp_extend centroids");
    if (centroids.cols() != x.cols())
        throw DimensionError("kmeanspp_extend: centroid dimension mismatch");
    if (m_target < centroids.rows() || m_target > x.rows())
        throw InvalidM("kmeanspp_extend: target m must be in [existing, n]");
    return seed_from(x, centroids, m_target, rng);
}

QuantizationResult lloyd(const Eigen::Ref<const Matrix>& x, Matrix centroids,
                         int max_iter, double tol) {
    require_finite(x, "lloyd");
    require_finite(centroids, "lloyd centroids");
    if (centroids.cols() != x.cols())
        throw DimensionError("lloyd: centroid dimension mismatch");
    const Eigen::Index n = x.rows();
    const Eigen::Index m = centroids.rows();
    if (m < 1 || m > n)
        throw InvalidM("lloyd: centroid count must be in [1, n]");
    if (max_iter < 1) throw Error(ErrorKind::config, "lloyd: max_iter must be >= 1");
    if (!(tol >= 0.0)) throw Error(ErrorKind::config, "lloyd: tol must be >= 0");

    const Vector xnorm = x.rowwise().squaredNorm();
    QuantizationResult r;
    r.assignment.assign(static_cast<std::size_t>(n), 0);
    r.counts.assign(static_cast<std::size_t>(m), 0);
    Vector mind2(n);
    Matrix next(m, x.cols());

    for (int iter = 0; iter < max_iter; ++iter) {
        assign_points(x, centroids, xnorm, r.assignment, mind2);
        recount(r.assignment, r.counts);
        repair_empty(x, centroids, r.assignment, r.counts, mind2);
        r.wcss_history.push_back(mind2.sum());
        r.iterations = iter + 1;

        update_means(x, r.assignment, r.counts, centroids, next);
        const double move = (next - centroids).rowwise().norm().maxCoeff();
        centroids.swap(next);
        if (move <= tol) break;
    }

    // The returned assignment must be the exact nearest-centroid map of the
    // returned centroids; repairs may move centroids, so re-run until stable.
    for (Eigen::Index round = 0; round <= m; ++round) {
        assign_points(x, centroids, xnorm, r.assignment, mind2);
        recount(r.assignment, r.counts);
        if (std::none_of(r.counts.begin(), r.counts.end(),
                         [](int c) { return c == 0; }))
            break;
        if (round == m || !repair_empty(x, centroids, r.assignment, r.counts, mind2))
            throw Error(ErrorKind::numeric,
                        "lloyd: a region stayed empty; data has fewer than m "
                        "distinct points");
        r.wcss_history.push_back(mind2.sum());
    }

    r.wcss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        r.wcss += (x.row(i) - centroids.row(r.assignment[static_cast<std::size_t>(i)]))
                      .squaredNorm();
    r.centroids = std::move(centroids);
    return r;
}

std::vector<int> nearest_centroids(const Eigen::Ref<const Matrix>& x,
                                   const Matrix& centroids) {
    require_finite(x, "nearest_centroids");
    require_finite(centroids, "nearest_centroids centroids");
    if (centroids.cols() != x.cols())
        throw DimensionError("nearest_centroids: centroid dimension mismatch");
    std::vector<int> assignment(static_cast<std::size_t>(x.rows()), 0);
    Vector mind2(x.rows());
    assign_points(x, centroids, x.rowwise().squaredNorm(), assignment, mind2);
    return assignment;
}

QuantizationResult kmeans_fit(const Eigen::Ref<const Matrix>& x, int m,
                              const Rng& rng, int restarts, int max_iter,
                              double tol) {
    if (restarts < 1)
        throw Error(ErrorKind::config, "kmeans_fit: restarts must be >= 1");
    QuantizationResult best;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        Rng stream = rng.split(static_cast<std::uint64_t>(r));
        Matrix seeds = kmeanspp_seed(x, m, stream);
        QuantizationResult run = lloyd(x, std::move(seeds), max_iter, tol);
        if (!have || run.wcss < best.wcss) {
            best = std::move(run);
            have = true;
        }
    }
    return best;
}

std::vector<WcssPoint> wcss_curve(const Eigen::Ref<const Matrix>& x,
                                  std::vector<int> m_values, const Rng& rng,
                                  int restarts, int max_iter, double tol) {
    if (m_values.empty()) throw EmptyInput("wcss_curve: no candidate values");
    for (int m : m_values)
        if (m < 1 || m > x.rows())
            throw InvalidM("wcss_curve: candidate m must be in [1, n], got " +
                           std::to_string(m));
    std::sort(m_values.begin(), m_values.end());
    m_values.erase(std::unique(m_values.begin(), m_values.end()), m_values.end());

    std::vector<WcssPoint> curve;
    curve.reserve(m_values.size());
    QuantizationResult prev;
    bool have_prev = false;
    for (int m : m_values) {
        // Splitting on m itself makes each point reproducible independently
        // of which other candidates were requested.
        const Rng base = rng.split(static_cast<std::uint64_t>(m));
        QuantizationResult best = kmeans_fit(x, m, base, restarts, max_iter, tol);
        if (have_prev) {
            Rng ext = base.split(static_cast<std::uint64_t>(restarts));
            Matrix warm = kmeanspp_extend(x, prev.centroids, m, ext);
            QuantizationResult cand = lloyd(x, std::move(warm), max_iter, tol);
            if (cand.wcss < best.wcss) best = std::move(cand);
        }
        curve.push_back({m, best.wcss});
        prev = std::move(best);
        have_prev = true;
    }
    return curve;
}

}  // namespace sbridge
