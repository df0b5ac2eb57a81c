#pragma once

#include <Eigen/Dense>

#include <span>

#include "rigidlab/geometry.hpp"

namespace rigidlab {

/// rho = |r|^2 / 2 and the support function mu = r . n with their derivatives.
struct SupportData {
    double rho = 0.0;
    Eigen::VectorXd grad_rho;     // rho_i
    Eigen::MatrixXd rho_hessian;  // rho_{i,j}
    double mu = 0.0;
    double norm_residual = 0.0;      // |mu^2 - (2 rho - |grad rho|^2)|
    double position_residual = 0.0;  // |r - (g^ij rho_i r_j + mu n)|
};

SupportData support_at(const Immersion& imm, std::span<const double> x);
SupportData support_at(const FrameJets& fj, const PointFrame& frame);

/// Both sides of det(rho_{i,j} - g_ij) = K det(g) mu^2.
struct DarbouxTerms {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual() const { return lhs - rhs; }
    double scale() const;
};

/// n = 2 only; PreconditionError otherwise.
DarbouxTerms darboux_terms(const Immersion& imm, std::span<const double> x);
double darboux_residual(const Immersion& imm, std::span<const double> x);

/// Componentwise max of |h_ij mu - (rho_{i,j} - g_ij)|; skipped when
/// |mu| < 1e-8 (support-degenerate point).
struct ShapeIdentity {
    double residual = 0.0;
    double scale = 1.0;
    double mu = 0.0;
    bool skipped = false;
};

ShapeIdentity verify_shape_identity(const Immersion& imm, std::span<const double> x);

inline constexpr double kSupportDegenerate = 1e-8;

}  // namespace rigidlab
