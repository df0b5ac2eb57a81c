#include "rigidlab/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <stdexcept>

namespace rigidlab {

int SVDResult::null_count(double rel_tol, int cols) const {
    const double cut = rel_tol * max();
    int count = 0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i)
        if (singular_values(i) <= cut) ++count;
    if (cols > singular_values.size()) count += cols - static_cast<int>(singular_values.size());
    return count;
}

namespace {

void require_finite(const DenseMatrix& a) {
    if (!a.allFinite()) throw std::invalid_argument("svd: matrix has non-finite entries");
}

}  // namespace

SVDResult svd(const DenseMatrix& a, bool vectors) {
    require_finite(a);
    SVDResult out;
    if (a.size() == 0) return out;
    if (vectors) {
        Eigen::BDCSVD<DenseMatrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.singular_values = dec.singularValues();
        out.u = dec.matrixU();
        out.v = dec.matrixV();
        out.has_vectors = true;
    } else {
        out.singular_values = singular_values(a);
    }
    return out;
}

Eigen::VectorXd singular_values(const DenseMatrix& a) {
    require_finite(a);
    if (a.size() == 0) return {};
    if (a.rows() > 2 * a.cols()) {
        Eigen::HouseholderQR<DenseMatrix> qr(a);
        DenseMatrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
        return Eigen::BDCSVD<DenseMatrix>(r).singularValues();
    }
    return Eigen::BDCSVD<DenseMatrix>(a).singularValues();
}

DenseMatrix null_space(const DenseMatrix& a, double rel_tol) {
    require_finite(a);
    const Eigen::Index n = a.cols();
    if (a.rows() == 0) return DenseMatrix::Identity(n, n);
    Eigen::JacobiSVD<DenseMatrix> dec(a, Eigen::ComputeFullV);
    const auto& s = dec.singularValues();
    const double cut = rel_tol * (s.size() ? s(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return dec.matrixV().rightCols(n - rank);
}

double pairwise_sum(const double* values, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += values[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

}  // namespace rigidlab
