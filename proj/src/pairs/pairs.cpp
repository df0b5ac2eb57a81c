#include "rigidlab/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rigidlab/catalog.hpp"
#include "rigidlab/darboux.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/linalg.hpp"
#include "rigidlab/quadrature.hpp"

namespace rigidlab {

IsometricPair::IsometricPair(Immersion a, Immersion b, double tol)
    : first(std::move(a)), second(std::move(b)), tolerance(tol) {
    if (first.dim() != second.dim()) throw std::invalid_argument("pair: chart dimensions differ");
    for (int i = 0; i < first.dim(); ++i)
        if (first.lo(i) != second.lo(i) || first.hi(i) != second.hi(i))
            throw std::invalid_argument("pair: chart domains differ");
    if (!(tolerance > 0)) throw std::invalid_argument("pair: tolerance must be positive");
}

std::vector<bool> IsometricPair::periodic_flags() const {
    std::vector<bool> p(dim());
    for (int i = 0; i < dim(); ++i) p[i] = first.periodic(i) && second.periodic(i);
    return p;
}

IsometricPair pair_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    return IsometricPair(surface_from_reference(j.at("first"), base_dir),
                         surface_from_reference(j.at("second"), base_dir), j.value("tolerance", 1e-10));
}

double check_isometric(const IsometricPair& pair, const std::vector<int>& sizes) {
    const auto nodes = grid_nodes(pair.first.lower(), pair.first.upper(), pair.periodic_flags(), sizes);
    std::vector<double> dev(nodes.size());
#pragma omp parallel for
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const FrameJets a = frame_jets(pair.first, nodes[k], 1);
        const FrameJets b = frame_jets(pair.second, nodes[k], 1);
        double worst = 0.0;
        for (int i = 0; i < a.dim; ++i)
            for (int j = 0; j < a.dim; ++j)
                worst = std::max(worst, std::abs(a.metric[i][j].value() - b.metric[i][j].value()));
        dev[k] = worst;
    }
    return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

namespace {

struct PairFrames {
    FrameJets a, b;
    PointFrame fa, fb;
};

PairFrames pair_frames(const IsometricPair& pair, std::span<const double> x, int order) {
    PairFrames p{frame_jets(pair.first, x, order), frame_jets(pair.second, x, order), {}, {}};
    p.fa = to_point_frame(p.a, x);
    p.fb = to_point_frame(p.b, x);
    return p;
}

DifferenceTensors differences(const PairFrames& p) {
    DifferenceTensors d;
    const Jet rho_a = 0.5 * dot(p.a.r, p.a.r);
    const Jet rho_b = 0.5 * dot(p.b.r, p.b.r);
    const Jet Phi = rho_b - rho_a;
    d.Phi = Phi.value();
    d.Phi_hessian = covariant_hessian(p.fa, Phi);
    d.W = p.fb.second_form - p.fa.second_form;
    d.hbar = p.fa.second_form + p.fb.second_form;
    d.mu = p.fa.position.dot(p.fa.normal);
    d.mu_tilde = p.fb.position.dot(p.fb.normal);
    d.det_gap = p.fb.second_form.determinant() - p.fa.second_form.determinant();
    return d;
}

}  // namespace

DifferenceTensors difference_tensors(const IsometricPair& pair, std::span<const double> x) {
    return differences(pair_frames(pair, x, 2));
}

double verify_w_formula(const IsometricPair& pair, std::span<const double> x) {
    const DifferenceTensors d = difference_tensors(pair, x);
    if (std::abs(d.mu + d.mu_tilde) <= kSupportDegenerate)
        throw PreconditionError("w formula: mu + mu~ vanishes at the point");
    return (d.W * (d.mu + d.mu_tilde) - 2.0 * d.Phi_hessian - d.hbar * (d.mu - d.mu_tilde)).cwiseAbs().maxCoeff();
}

GaussCodazzi verify_gauss_trace_and_codazzi(const IsometricPair& pair, std::span<const double> x) {
    const PairFrames p = pair_frames(pair, x, 3);
    const DifferenceTensors d = differences(p);
    const int n = pair.dim();
    GaussCodazzi out;
    const double hb = std::max(1.0, d.hbar.cwiseAbs().maxCoeff());
    if (std::abs(d.hbar.determinant()) > 1e-10 * std::pow(hb, n)) {
        out.trace_residual = std::abs((d.hbar.inverse().transpose().cwiseProduct(d.W)).sum());
    } else {
        if (n != 2) throw PreconditionError("gauss trace: hbar singular and the cofactor form needs n = 2");
        out.cofactor_form = true;
        out.trace_residual =
            std::abs(d.hbar(0, 0) * d.W(1, 1) + d.hbar(1, 1) * d.W(0, 0) - 2.0 * d.hbar(0, 1) * d.W(0, 1));
    }
    Mat<Jet> w = make_mat<Jet>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = p.b.second_form[i][j] - p.a.second_form[i][j];
    out.codazzi_residual = codazzi_residual(covariant_derivative(w, p.fa));
    return out;
}

EnergyPoint energy_point(const IsometricPair& pair, std::span<const double> x) {
    const PointFrame a = frame_at(pair.first, x);
    const PointFrame b = frame_at(pair.second, x);
    EnergyPoint e;
    e.hbar = a.second_form + b.second_form;
    e.metric = a.metric;
    e.det_metric = a.det_metric;
    e.mu_sum = a.position.dot(a.normal) + b.position.dot(b.normal);
    e.point = a.point;
    return e;
}

TensorField metric_field() {
    return [](const EnergyPoint& p) { return p.metric; };
}

double energy_density(const EnergyPoint& p, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd m = p.hbar.inverse();
    return p.hbar.determinant() / p.det_metric * (a * m * b * m).trace() * p.mu_sum;
}

namespace {

struct TensorRule {
    std::vector<double> x0, x1, w0, w1;
};

TensorRule energy_rule(const IsometricPair& pair, const std::vector<int>& sizes) {
    if (pair.dim() != 2) throw PreconditionError("energy inner product: surfaces (n = 2) only");
    if (sizes.size() != 2) throw std::invalid_argument("energy inner product: need two grid sizes");
    const auto periodic = pair.periodic_flags();
    QuadratureRule r[2];
    for (int a = 0; a < 2; ++a)
        r[a] = periodic[a] ? periodic_rule(pair.first.lo(a), pair.first.hi(a), sizes[a])
                           : composite_gauss(pair.first.lo(a), pair.first.hi(a), sizes[a], 16);
    return {r[0].nodes, r[1].nodes, r[0].weights, r[1].weights};
}

// Weighted integrand at node (i, j); throws on a positivity violation.
double energy_term(const IsometricPair& pair, const TensorField& a, const TensorField& b, const TensorRule& q,
                   std::size_t i, std::size_t j) {
    const double x[2] = {q.x0[i], q.x1[j]};
    const EnergyPoint p = energy_point(pair, x);
    if (!(p.hbar.determinant() > 0.0) || !(p.mu_sum > 0.0))
        throw PreconditionError("energy inner product: needs det hbar > 0 and mu + mu~ > 0 on the grid");
    return q.w0[i] * q.w1[j] * energy_density(p, a(p), b(p)) * std::sqrt(p.det_metric);
}

}  // namespace

double energy_inner_product(const IsometricPair& pair, const TensorField& a, const TensorField& b,
                            const std::vector<int>& sizes) {
    const TensorRule q = energy_rule(pair, sizes);
    const std::size_t n0 = q.x0.size(), n1 = q.x1.size();
    std::vector<double> terms(n0 * n1);
    bool violated = false;
#pragma omp parallel for collapse(2) reduction(|| : violated)
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            try {
                terms[i * n1 + j] = energy_term(pair, a, b, q, i, j);
            } catch (const PreconditionError&) {
                violated = true;
            }
        }
    if (violated) throw PreconditionError("energy inner product: needs det hbar > 0 and mu + mu~ > 0 on the grid");
    return pairwise_sum(terms);
}

double energy_inner_product_serial(const IsometricPair& pair, const TensorField& a, const TensorField& b,
                                   const std::vector<int>& sizes) {
    const TensorRule q = energy_rule(pair, sizes);
    std::vector<double> terms;
    terms.reserve(q.x0.size() * q.x1.size());
    for (std::size_t i = 0; i < q.x0.size(); ++i)
        for (std::size_t j = 0; j < q.x1.size(); ++j) terms.push_back(energy_term(pair, a, b, q, i, j));
    return pairwise_sum(terms);
}

double cofactor_divergence_identity(const Eigen::Matrix2d& hbar, const Eigen::Matrix2d& W) {
    const double d = hbar.determinant();
    const double hs = hbar.cwiseAbs().maxCoeff();
    if (!(std::abs(d) > 1e-14 * hs * hs)) throw PreconditionError("cofactor identity: hbar is singular");
    const Eigen::Matrix2d m = hbar.inverse();
    const double ws = std::max(1.0, W.cwiseAbs().maxCoeff());
    if (std::abs(m.cwiseProduct(W).sum()) > 1e-10 * ws * m.cwiseAbs().maxCoeff())
        throw PreconditionError("cofactor identity: W is not trace-free with respect to hbar");
    Eigen::Matrix2d want;
    want << -W(1, 1), W(1, 0), W(0, 1), -W(0, 0);
    return (d * m * W * m - want).cwiseAbs().maxCoeff() / ws;
}

}  // namespace rigidlab
