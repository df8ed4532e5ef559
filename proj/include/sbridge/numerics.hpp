#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "sbridge/errors.hpp"

namespace sbridge {

// Observations are rows. Row-major storage keeps each sample contiguous,
// which the blocked distance kernels rely on.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Throws EmptyInput for a 0-row or 0-column matrix and a data-kind Error if
// any entry is NaN or infinite; `what` names the caller in the message.
void require_finite(const Eigen::Ref<const Matrix>& x, const char* what);

// Symmetric matrix storing the lower triangle once, so A(i,j) == A(j,i) is
// exact by construction rather than up to rounding.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(Eigen::Index order);

    Eigen::Index order() const noexcept { return order_; }

    double operator()(Eigen::Index i, Eigen::Index j) const noexcept {
        return v_[idx(i, j)];
    }
    void set(Eigen::Index i, Eigen::Index j, double value) noexcept {
        v_[idx(i, j)] = value;
    }

    Eigen::MatrixXd dense() const;
    Vector row_sums() const;
    double max_entry() const;

    // All order^2 entries (each off-diagonal value appears twice), row by row.
    std::vector<double> entries_square() const;

    // Packed triangle, mutable access for in-place transforms.
    std::span<double> packed() noexcept { return v_; }
    std::span<const double> packed() const noexcept { return v_; }

private:
    std::size_t idx(Eigen::Index i, Eigen::Index j) const noexcept {
        if (i < j) std::swap(i, j);
        return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
    }

    Eigen::Index order_ = 0;
    std::vector<double> v_;
};

struct EigenPairs {
    Vector values;            // ascending
    Eigen::MatrixXd vectors;  // column i pairs with values[i]; orthonormal
};

// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
//
// Convergence: sweeps run until the off-diagonal Frobenius norm drops below
// tol * max(1, ||A||_F); more than 100 sweeps raises NonConvergence.
// Output order: eigenvalues ascending, equal values keeping their relative
// order. Sign: each eigenvector is flipped, if needed, so its
// largest-magnitude component (lowest index on ties) is nonnegative. Both
// conventions make the decomposition a pure function of the input matrix.
EigenPairs sym_eigen(Eigen::MatrixXd a, double tol = 1e-12);
EigenPairs sym_eigen(const SymMatrix& a, double tol = 1e-12);

// Quantile with linear interpolation between order statistics: for sorted v
// of length n, the p-quantile is v[h] interpolated at h = p * (n - 1).
// Throws EmptyInput on an empty sample and Error(config) if p is outside
// [0, 1]. quantiles() shares one sort across several probabilities.
double quantile(std::span<const double> values, double p);
std::vector<double> quantiles(std::vector<double> values, std::span<const double> ps);

// Projection of the mean-centered data onto the top-h principal directions
// (eigenvectors of the sample covariance, descending eigenvalue order).
Matrix pca(const Eigen::Ref<const Matrix>& x, Eigen::Index h);

}  // namespace sbridge
