#pragma once

#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rigidlab/boundary.hpp"
#include "rigidlab/flex.hpp"
#include "rigidlab/geometry.hpp"
#include "rigidlab/pairs.hpp"
#include "rigidlab/report.hpp"

namespace rigidlab {

/// Relative tolerance shared by the pointwise identity checks.
inline constexpr double kIdentityTolerance = 1e-8;

/// Max-over-points residuals of a surface's pointwise identities. Points that
/// hit a degenerate frame are counted in the metadata, not silently dropped.
struct SurfaceIdentities {
    int points = 0;
    int degenerate_points = 0;
    int support_degenerate = 0;  // |mu| < 1e-8, shape identity skipped
    double frame = 0.0;          // metric symmetry / inverse, unit normal, normal orthogonality
    double second_form_symmetry = 0.0;
    double codazzi = 0.0;
    double curvature = 0.0;  // extrinsic vs intrinsic (surfaces only)
    double support_norm = 0.0;
    double support_position = 0.0;
    double darboux = 0.0;  // surfaces only
    double shape = 0.0;
    bool metric_positive = true;
};

SurfaceIdentities surface_identities(const Immersion& imm, const std::vector<std::vector<double>>& points);

/// Worst-case quantities of trivial motions A r + b (A skew) at points.
struct TrivialFlexResiduals {
    double first_order = 0.0;
    double rotation_vector = 0.0;  // |Y - axial(A)|
    double w = 0.0;
    double phi = 0.0;  // relative
    int phi_skipped = 0;
    double closedness = 0.0;
};

TrivialFlexResiduals trivial_flex_residuals(const Immersion& imm, const Eigen::Matrix3d& A, const Eigen::Vector3d& b,
                                            const std::vector<std::vector<double>>& points,
                                            const std::vector<int>& closed_grid);

Eigen::Matrix3d skew_matrix(const Eigen::Vector3d& a);

/// ||L tau|| / (sigma_max ||tau||) for the six basis trivial motions.
std::vector<double> trivial_kernel_residuals(const FlexOperator& op, const Immersion& imm, double sigma_max);

void add_surface_checks(Report& report, const Immersion& imm, const std::vector<std::vector<double>>& points,
                        int motions, std::mt19937_64& rng);
void add_pair_checks(Report& report, const IsometricPair& pair, const std::vector<int>& sizes);
/// Returns the kernel result so callers can emit the spectrum.
KernelResult add_flex_kernel_checks(Report& report, const Immersion& imm, int n0, int n1, double rel_tol,
                                    const std::optional<DeformationField>& field);
void add_pointwise_gauss_checks(Report& report, const Eigen::MatrixXd& h);
void add_boundary_checks(Report& report, const BoundaryProfile& profile, const ScalarFunction& f,
                         const std::string& f_text, double c1, double c2);

}  // namespace rigidlab
