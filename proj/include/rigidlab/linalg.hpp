#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rigidlab {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Singular values (descending) with optional singular vectors.
struct SVDResult {
    Eigen::VectorXd singular_values;
    DenseMatrix u;
    DenseMatrix v;
    bool has_vectors = false;

    double max() const { return singular_values.size() ? singular_values(0) : 0.0; }

    /// Number of singular values at or below `rel_tol * max()`, counting the
    /// missing ones of a wide matrix as zero.
    int null_count(double rel_tol, int cols) const;
};

/// Dense SVD. Throws std::invalid_argument on non-finite entries.
SVDResult svd(const DenseMatrix& a, bool vectors = false);

/// Singular values only; tall matrices are first reduced to their square R
/// factor, which has the same singular values.
Eigen::VectorXd singular_values(const DenseMatrix& a);

/// Orthonormal basis of the numerical null space (relative threshold).
DenseMatrix null_space(const DenseMatrix& a, double rel_tol);

/// Sum with a fixed pairwise reduction tree; the result depends only on the
/// order of `values`, never on threading.
double pairwise_sum(const double* values, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace rigidlab
