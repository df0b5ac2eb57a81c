#include "rigidlab/highdim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rigidlab/errors.hpp"
#include "rigidlab/linalg.hpp"

namespace rigidlab {

int generalized_kronecker(std::span<const int> upper, std::span<const int> lower, int max_index) {
    if (upper.size() != lower.size()) throw std::invalid_argument("generalized kronecker: tuple lengths differ");
    for (int v : upper)
        if (v < 1 || v > max_index) throw std::out_of_range("generalized kronecker: index out of range");
    for (int v : lower)
        if (v < 1 || v > max_index) throw std::out_of_range("generalized kronecker: index out of range");
    const std::size_t k = upper.size();
    std::vector<int> perm(k, -1);
    std::vector<bool> used(k, false);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b)
            if (upper[a] == upper[b]) return 0;
        for (std::size_t b = 0; b < k; ++b)
            if (!used[b] && lower[b] == upper[a]) {
                perm[a] = static_cast<int>(b);
                used[b] = true;
                break;
            }
        if (perm[a] < 0) return 0;
    }
    int sign = 1;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (perm[a] > perm[b]) sign = -sign;
    return sign;
}

BivectorDecomposition decompose_rotation_bivector(const Immersion& imm, const DeformationField& tau,
                                                  std::span<const double> x) {
    const int n = imm.dim();
    if (n < 2) throw PreconditionError("rotation bivector: n >= 2 required");
    const int m = n + 1;
    const FrameJets fj = frame_jets(imm, x, 2);
    const Vec<Jet> t = tau.evaluate(fj.r, x);
    // Omega = sum_j tau_j (r^j)^T + (Omega n) n^T,  Omega n = -sum_j (n . tau_j) r^j.
    Mat<Jet> dual = make_mat<Jet>(n, m);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < m; ++a) {
            Jet s = fj.metric_inv[j][0] * fj.tangents[0][a];
            for (int k = 1; k < n; ++k) s += fj.metric_inv[j][k] * fj.tangents[k][a];
            dual[j][a] = s;
        }
    Mat<Jet> tj = make_mat<Jet>(n, m);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < m; ++a) tj[j][a] = t[a].partial(j);
    Vec<Jet> on(m);
    for (int a = 0; a < m; ++a) {
        Jet s = -(dot(fj.normal, tj[0]) * dual[0][a]);
        for (int j = 1; j < n; ++j) s -= dot(fj.normal, tj[j]) * dual[j][a];
        on[a] = s;
    }
    Mat<Jet> omega = make_mat<Jet>(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            Jet s = on[a] * fj.normal[b];
            for (int j = 0; j < n; ++j) s += tj[j][a] * dual[j][b];
            omega[a][b] = s;
        }

    BivectorDecomposition out;
    out.omega.resize(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) out.omega(a, b) = omega[a][b].value();
    Eigen::MatrixXd frame(m, m), coframe(m, m);  // columns e_a and e^a
    for (int a = 0; a < m; ++a) {
        for (int j = 0; j < n; ++j) {
            frame(a, j) = fj.tangents[j][a].value();
            coframe(a, j) = dual[j][a].value();
        }
        frame(a, n) = coframe(a, n) = fj.normal[a].value();
    }
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd tv(m);
        for (int a = 0; a < m; ++a) tv(a) = tj[j][a].value();
        out.flex_residual = std::max(out.flex_residual, (tv - out.omega * frame.col(j)).cwiseAbs().maxCoeff());
    }
    out.w.resize(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd oi(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) oi(a, b) = omega[a][b].d(i);
        const Eigen::MatrixXd Wi = 0.5 * coframe.transpose() * oi * coframe;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                out.antisymmetry = std::max(out.antisymmetry, std::abs(Wi(a, b) + Wi(b, a)));
                if (a < n && b < n) out.tangential = std::max(out.tangential, std::abs(Wi(a, b)));
            }
        for (int j = 0; j < n; ++j) out.w(i, j) = frame.col(j).dot(oi * frame.col(n));
        out.W.push_back(Wi);
    }
    out.symmetry = (out.w - out.w.transpose()).cwiseAbs().maxCoeff();
    return out;
}

double linearized_gauss_constraint(const Eigen::MatrixXd& h, const Eigen::MatrixXd& w, int i, int j, int k, int l) {
    return h(k, j) * w(i, l) - h(l, j) * w(i, k) - (h(k, i) * w(j, l) - h(l, i) * w(j, k));
}

namespace {

Eigen::MatrixXd gauss_system(const Eigen::MatrixXd& h) {
    const int n = static_cast<int>(h.rows());
    const int u = n * (n + 1) / 2;
    std::vector<std::vector<int>> idx(n, std::vector<int>(n));
    for (int i = 0, c = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++c) idx[i][j] = idx[j][i] = c;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * n * n * n, u);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l, ++row) {
                    a(row, idx[i][l]) += h(k, j);
                    a(row, idx[i][k]) -= h(l, j);
                    a(row, idx[j][l]) -= h(k, i);
                    a(row, idx[j][k]) += h(l, i);
                }
    return a;
}

}  // namespace

GaussNullspace linearized_gauss_nullspace(const Eigen::MatrixXd& h, double rel_tol) {
    const int n = static_cast<int>(h.rows());
    if (h.cols() != n) throw std::invalid_argument("gauss null space: h must be square");
    if (n < 3) throw PreconditionError("gauss null space: n >= 3 required");
    if (h != h.transpose()) throw std::invalid_argument("gauss null space: h must be exactly symmetric");
    const Eigen::MatrixXd a = gauss_system(h);
    GaussNullspace out;
    out.unknowns = static_cast<int>(a.cols());
    out.constraints = static_cast<int>(a.rows());
    out.singular_values = singular_values(a);
    const Eigen::MatrixXd ns = null_space(a, rel_tol);
    out.dim = static_cast<int>(ns.cols());
    for (int c = 0; c < out.dim; ++c) {
        Eigen::MatrixXd w(n, n);
        for (int i = 0, p = 0; i < n; ++i)
            for (int j = i; j < n; ++j, ++p) w(i, j) = w(j, i) = ns(p, c);
        out.basis.push_back(w);
    }
    return out;
}

DRVerdict dr_rigidity_test(const Eigen::MatrixXd& h, double rank_tol) {
    DRVerdict v;
    const GaussNullspace direct = linearized_gauss_nullspace(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    v.eigenvalues = eig.eigenvalues();
    const double top = v.eigenvalues.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.eigenvalues.size(); ++i)
        if (std::abs(v.eigenvalues(i)) > rank_tol * top) ++v.rank;
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < v.eigenvalues.size(); ++i)
        if (std::abs(v.eigenvalues(i)) > rank_tol * top) diag(i, i) = v.eigenvalues(i);
    v.nullspace_dim = direct.dim;
    v.diagonal_nullspace_dim = linearized_gauss_nullspace(diag).dim;
    if (v.nullspace_dim != v.diagonal_nullspace_dim)
        throw ConsistencyError("rigidity test: null space dimension " + std::to_string(v.nullspace_dim) +
                               " for h but " + std::to_string(v.diagonal_nullspace_dim) + " after diagonalizing");
    const bool rank_ok = v.rank >= 3;
    if (rank_ok != (v.nullspace_dim == 0))
        throw ConsistencyError("rigidity test: rank " + std::to_string(v.rank) + " with null space dimension " +
                               std::to_string(v.nullspace_dim));
    v.verdict = rank_ok ? "rigid" : "not-certified";
    return v;
}

Eigen::MatrixXd random_rank_controlled(int n, int rank, std::mt19937_64& rng) {
    if (rank < 0 || rank > n) throw std::invalid_argument("random symmetric: rank out of range");
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::bernoulli_distribution sign(0.5);
    std::normal_distribution<double> g;
    Eigen::MatrixXd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < rank; ++i) d(i) = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    Eigen::MatrixXd h = q * d.asDiagonal() * q.transpose();
    return (0.5 * (h + h.transpose())).eval();
}

}  // namespace rigidlab
