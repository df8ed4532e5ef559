#include "sbridge/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

namespace sbridge {

void require_finite(const Eigen::Ref<const Matrix>& x, const char* what) {
    if (x.rows() == 0 || x.cols() == 0)
        throw EmptyInput(std::string(what) + ": input matrix is empty");
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (!std::isfinite(x(i, j)))
                throw Error(ErrorKind::data,
                            std::string(what) + ": non-finite value at row " +
                                std::to_string(i) + ", column " + std::to_string(j));
        }
    }
}

SymMatrix::SymMatrix(Eigen::Index order)
    : order_(order),
      v_(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0) {
    if (order < 0) throw DimensionError("SymMatrix: negative order");
}

Eigen::MatrixXd SymMatrix::dense() const {
    Eigen::MatrixXd a(order_, order_);
    for (Eigen::Index i = 0; i < order_; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = (*this)(i, j);
    return a;
}

Vector SymMatrix::row_sums() const {
    Vector sums = Vector::Zero(order_);
    for (Eigen::Index i = 0; i < order_; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = (*this)(i, j);
            sums[i] += v;
            sums[j] += v;
        }
        sums[i] += (*this)(i, i);
    }
    return sums;
}

double SymMatrix::max_entry() const {
    double best = -std::numeric_limits<double>::infinity();
    for (double v : v_) best = std::max(best, v);
    return best;
}

std::vector<double> SymMatrix::entries_square() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(order_) * order_);
    for (Eigen::Index i = 0; i < order_; ++i)
        for (Eigen::Index j = 0; j < order_; ++j) out.push_back((*this)(i, j));
    return out;
}

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = j + 1; i < a.rows(); ++i) sum += a(i, j) * a(i, j);
    return std::sqrt(2.0 * sum);
}

// One Jacobi rotation J(p, q, theta) applied as A <- J^T A J, V <- V J,
// chosen so the (p, q) entry is annihilated exactly.
void jacobi_rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p,
                   Eigen::Index q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Eigen::Index n = a.rows();
    const double app = a(p, p);
    const double aqq = a(q, q);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a(i, p);
        const double aiq = a(i, q);
        a(i, p) = a(p, i) = c * aip - s * aiq;
        a(i, q) = a(q, i) = s * aip + c * aiq;
    }
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = a(q, p) = 0.0;

    for (Eigen::Index i = 0; i < n; ++i) {
        const double vip = v(i, p);
        const double viq = v(i, q);
        v(i, p) = c * vip - s * viq;
        v(i, q) = s * vip + c * viq;
    }
}

// Deterministic sign: the largest-magnitude component of each eigenvector
// (lowest index on ties) is made nonnegative.
void fix_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index arg = 0;
        double best = std::abs(vectors(0, j));
        for (Eigen::Index i = 1; i < vectors.rows(); ++i) {
            const double mag = std::abs(vectors(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (vectors(arg, j) < 0.0) vectors.col(j) = -vectors.col(j);
    }
}

}  // namespace

EigenPairs sym_eigen(Eigen::MatrixXd a, double tol) {
    const Eigen::Index n = a.rows();
    if (n == 0) throw EmptyInput("sym_eigen: empty matrix");
    if (n != a.cols()) throw DimensionError("sym_eigen: matrix is not square");
    if (!(tol > 0.0)) throw Error(ErrorKind::config, "sym_eigen: tol must be positive");

    // Exact symmetry keeps the rotations well defined even if the caller's
    // matrix carries rounding asymmetry.
    a = ((a + a.transpose()) * 0.5).eval();

    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double threshold = tol * std::max(1.0, a.norm());
    constexpr int kMaxSweeps = 100;

    bool converged = off_diagonal_norm(a) <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
        converged = off_diagonal_norm(a) <= threshold;
    }
    if (!converged)
        throw NonConvergence("sym_eigen: Jacobi sweeps exceeded the iteration cap");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

    EigenPairs out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        out.vectors.col(j) = v.col(order[j]);
    }
    fix_signs(out.vectors);
    return out;
}

EigenPairs sym_eigen(const SymMatrix& a, double tol) {
    return sym_eigen(a.dense(), tol);
}

namespace {

double interpolate_sorted(const std::vector<double>& sorted, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorKind::config, "quantile: p must be in [0, 1]");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile(std::span<const double> values, double p) {
    if (values.empty()) throw EmptyInput("quantile: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return interpolate_sorted(sorted, p);
}

std::vector<double> quantiles(std::vector<double> values, std::span<const double> ps) {
    if (values.empty()) throw EmptyInput("quantile: empty sample");
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(ps.size());
    for (double p : ps) out.push_back(interpolate_sorted(values, p));
    return out;
}

Matrix pca(const Eigen::Ref<const Matrix>& x, Eigen::Index h) {
    require_finite(x, "pca");
    if (h < 1 || h > x.cols())
        throw DimensionError("pca: component count must be in [1, columns]");

    const Eigen::Index n = x.rows();
    Eigen::RowVectorXd mean = x.colwise().mean();
    Matrix centered = x.rowwise() - mean;
    const double denom = static_cast<double>(std::max<Eigen::Index>(n - 1, 1));
    Eigen::MatrixXd cov = (centered.transpose() * centered) / denom;

    EigenPairs ep = sym_eigen(std::move(cov));
    const Eigen::Index d = x.cols();
    Eigen::MatrixXd directions(d, h);
    for (Eigen::Index j = 0; j < h; ++j)
        directions.col(j) = ep.vectors.col(d - 1 - j);
    return centered * directions;
}

}  // namespace sbridge
