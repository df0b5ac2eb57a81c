#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rigidlab/expr.hpp"
#include "rigidlab/geometry.hpp"

namespace rigidlab {

using ScalarFunction = std::function<double(double)>;

/// Expression in the single variable x1 as a function of one real.
ScalarFunction expression_function(const std::string& text);

/// Geodesic curvature of a closed boundary curve, given either as a function
/// of the turning angle theta (then the total turning is 2 pi by
/// construction) or as a function of arc length on [0, L].
class BoundaryProfile {
public:
    static BoundaryProfile from_theta(ScalarFunction kg, std::string description = "");
    static BoundaryProfile from_arclength(ScalarFunction kg, double length, std::string description = "");
    /// Expressions use the single variable x1.
    static BoundaryProfile from_theta_expression(const std::string& kg);
    static BoundaryProfile from_arclength_expression(const std::string& kg, double length);
    /// Two columns with a header naming the first one `theta` or `s`:
    /// ascending samples from 0 to the period end inclusive, second column k_g.
    static BoundaryProfile from_csv(const std::filesystem::path& path);

    double length() const { return length_; }
    double total_turning() const { return turning_; }
    bool theta_parametrized() const { return by_theta_; }
    const std::string& description() const { return description_; }
    double min_kg() const { return min_kg_; }

    /// k_g at turning angle theta in [0, total_turning].
    double kg(double theta) const;
    /// Arc length at turning angle theta.
    double arclength(double theta) const;
    /// Turning angle at arc length s (s-parametrized profiles only
    /// tabulate this; theta profiles invert by bisection).
    double turning(double s) const;

private:
    bool by_theta_ = true;
    ScalarFunction kg_theta_;
    ScalarFunction kg_s_;
    double length_ = 0.0;
    double turning_ = 0.0;
    double min_kg_ = 0.0;
    std::string description_;
    // s-parametrized: table over uniform s with theta_i and k_g(s_i).
    std::vector<double> s_tab_, theta_tab_, kg_tab_, inv_kg_tab_;
};

inline constexpr int kProfileTable = 4096;

/// Turning and closure conditions for a closed boundary.
struct DongReport {
    double turning_residual = 0.0;  // |closed-integral k_g ds - 2 pi|
    double closure_residual = 0.0;  // |closed-integral exp(i theta(s)) ds|
    std::optional<double> min_kt_kg;  // min over samples of K_t k_g (surfaces only)
    bool turning_holds = false;
    bool closure_holds = false;
    std::optional<bool> sign_holds;
    double length = 0.0;
};

inline constexpr double kDongTolerance = 1e-6;

DongReport dong_conditions(const BoundaryProfile& profile);

/// Direction of the t coordinate used for k_g and K_t on an embedded boundary.
enum class TDirection { Inward, Outward };

/// Boundary edge of an immersion via its geodesic chart: k_g = B_t(s, 0),
/// K_t from jets along the geodesic direction.
DongReport dong_conditions(const Immersion& imm, BoundaryEdge edge, TDirection dir, int n_s);

/// phi_s' = phi_t, phi_t' = -phi_s + f in theta, integrated with RK4 and
/// compared with the closed form.
struct BoundaryODESolution {
    std::vector<double> theta;
    std::vector<double> phi_s, phi_t;                // time-stepped
    std::vector<double> phi_s_exact, phi_t_exact;    // closed form
    std::vector<double> u, v;
    double c1 = 0.0, c2 = 0.0;
    double max_deviation = 0.0;
};

BoundaryODESolution solve_boundary_ode(const BoundaryProfile& profile, const ScalarFunction& f, double c1, double c2,
                                       int n_steps);

/// Gamma: x1 = int cos/k_g, x2 = int sin/k_g over theta; S = -closed-integral x2 dx1.
struct ReferenceCurve {
    std::vector<double> theta;
    std::vector<double> x1, x2;
    double area = 0.0;
    double closure_gap = 0.0;
    bool closed = false;  // closure_gap <= 1e-6
};

ReferenceCurve reference_curve(const BoundaryProfile& profile, int samples = 256);

/// Linear constraints of an admissible f: u(2 pi), v(2 pi) and
/// integral (-cos u + sin v)/k_g.
struct Admissibility {
    double u_end = 0.0;
    double v_end = 0.0;
    double mean_phi_s = 0.0;
    double scale = 1.0;
    bool admissible = false;
    std::string failed;  // first failing constraint, empty when admissible
};

inline constexpr double kAdmissibleTolerance = 1e-8;

Admissibility check_admissible(const BoundaryProfile& profile, const ScalarFunction& f);

struct UVData {
    double C = 0.0;
    std::vector<double> theta;
    std::vector<double> u, v, U, V;
    double U0 = 0.0, Upi = 0.0, U2pi = 0.0;
    double cot_residual = 0.0;  // max |U' cot - V'| away from 0, pi, 2 pi
};

/// PreconditionError (naming the failed constraint) unless f is admissible.
UVData uv_functions(const BoundaryProfile& profile, const ScalarFunction& f, int samples = 256);

struct EnergyInequality {
    double direct = 0.0;    // integral phi_s f d theta with c1 = c2 = 0
    double route_a = 0.0;   // 2 integral -v' u
    double route_b = 0.0;   // -integral csc^2 U^2 - 2 C^2 S
    double C = 0.0;
    double area = 0.0;
    double routes_gap = 0.0;
    double value = 0.0;     // route_a
};

/// Cells per quarter period of the composite Gauss rule used here.
inline constexpr int kBoundaryCells = 32;

EnergyInequality boundary_energy_inequality(const BoundaryProfile& profile, const ScalarFunction& f);

/// Least-squares projection of trigonometric polynomials of a fixed degree
/// onto the admissible subspace of a profile.
class AdmissibleProjector {
public:
    AdmissibleProjector(const BoundaryProfile& profile, int degree = 8);

    int size() const { return 2 * degree_ + 1; }
    Eigen::VectorXd project(const Eigen::VectorXd& coeffs) const;
    /// a0 + sum a_k cos k theta + b_k sin k theta, coeffs (a0, a1, b1, a2, b2, ...).
    ScalarFunction function(const Eigen::VectorXd& coeffs) const;
    Eigen::VectorXd random(std::mt19937_64& rng) const;
    const Eigen::MatrixXd& constraints() const { return g_; }

private:
    int degree_;
    Eigen::MatrixXd g_;  // 3 x size
};

/// Second-form values and t-derivatives on a flat boundary (K = 0, K_t != 0).
struct LemmaHHSample {
    double s = 0.0;
    double L = 0.0, M = 0.0, N = 0.0;
    double L_t = 0.0, K_t = 0.0, B_t = 0.0, K = 0.0;
    double N_expected = 0.0;    // sqrt(K_t / B_t)
    double L_t_expected = 0.0;  // sqrt(K_t B_t)
    double K_t_fd = 0.0;        // one-sided difference along the chart
    double B_t_fd = 0.0;
};

struct LemmaHHReport {
    std::vector<LemmaHHSample> samples;
    double max_L = 0.0, max_M = 0.0;
    double max_N_error = 0.0, max_L_t_error = 0.0;
    TDirection direction = TDirection::Inward;  // the one giving B_t > 0
    int normal_sign = 1;                        // applied to h so that N >= 0
};

/// PreconditionError when K != 0 on the boundary or K_t vanishes there.
LemmaHHReport lemma_hh_check(const Immersion& imm, BoundaryEdge edge, double depth, int n_s, int n_t);

}  // namespace rigidlab
