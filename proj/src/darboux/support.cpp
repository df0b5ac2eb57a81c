#include "rigidlab/darboux.hpp"

#include <algorithm>
#include <cmath>

#include "rigidlab/errors.hpp"

namespace rigidlab {

SupportData support_at(const FrameJets& fj, const PointFrame& frame) {
    const int n = fj.dim;
    const Jet rho = 0.5 * dot(fj.r, fj.r);
    SupportData s;
    s.rho = rho.value();
    s.grad_rho.resize(n);
    for (int i = 0; i < n; ++i) s.grad_rho(i) = rho.d(i);
    s.rho_hessian = covariant_hessian(frame, rho);
    s.mu = frame.position.dot(frame.normal);
    const double grad_sq = s.grad_rho.dot(frame.metric_inv * s.grad_rho);
    s.norm_residual = std::abs(s.mu * s.mu - (2.0 * s.rho - grad_sq));
    const Eigen::VectorXd rebuilt = frame.tangents * (frame.metric_inv * s.grad_rho) + s.mu * frame.normal;
    s.position_residual = (frame.position - rebuilt).norm();
    return s;
}

SupportData support_at(const Immersion& imm, std::span<const double> x) {
    const FrameJets fj = frame_jets(imm, x, 2);
    return support_at(fj, to_point_frame(fj, x));
}

double DarbouxTerms::scale() const { return std::max({1.0, std::abs(lhs), std::abs(rhs)}); }

DarbouxTerms darboux_terms(const Immersion& imm, std::span<const double> x) {
    if (imm.dim() != 2) throw PreconditionError("darboux residual: stated for surfaces (n = 2)");
    const FrameJets fj = frame_jets(imm, x, 2);
    const PointFrame f = to_point_frame(fj, x);
    const SupportData s = support_at(fj, f);
    return {(s.rho_hessian - f.metric).determinant(), f.curvature * f.det_metric * s.mu * s.mu};
}

double darboux_residual(const Immersion& imm, std::span<const double> x) { return darboux_terms(imm, x).residual(); }

ShapeIdentity verify_shape_identity(const Immersion& imm, std::span<const double> x) {
    const FrameJets fj = frame_jets(imm, x, 2);
    const PointFrame f = to_point_frame(fj, x);
    const SupportData s = support_at(fj, f);
    ShapeIdentity out;
    out.mu = s.mu;
    if (std::abs(s.mu) < kSupportDegenerate) {
        out.skipped = true;
        return out;
    }
    const Eigen::MatrixXd rhs = s.rho_hessian - f.metric;
    out.residual = (f.second_form * s.mu - rhs).cwiseAbs().maxCoeff();
    out.scale = std::max({1.0, rhs.cwiseAbs().maxCoeff(), (f.second_form * s.mu).cwiseAbs().maxCoeff()});
    return out;
}

}  // namespace rigidlab
