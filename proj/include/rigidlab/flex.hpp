#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigidlab/geometry.hpp"

namespace rigidlab {

/// Deformation field tau on an immersion: a trivial motion A r + b (A skew)
/// or explicit component expressions in the chart variables.
class DeformationField {
public:
    enum class Kind { Trivial, Expressions };

    static DeformationField trivial(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);
    static DeformationField expressions(std::vector<Expression> components);
    /// {"trivial": {"A": [[...]], "b": [...]}} or {"components": [...]}.
    static DeformationField from_json(const nlohmann::json& j, int chart_dim);

    Kind kind() const { return kind_; }
    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::VectorXd& b() const { return b_; }

    /// tau as jets, given position jets r over chart variables at x.
    Vec<Jet> evaluate(const Vec<Jet>& r, std::span<const double> x) const;
    Eigen::VectorXd value(const Immersion& imm, std::span<const double> x) const;

private:
    Kind kind_ = Kind::Trivial;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    std::vector<Expression> components_;
};

/// r_i . tau_j + r_j . tau_i.
Eigen::MatrixXd first_order_residual(const Immersion& imm, const DeformationField& tau, std::span<const double> x);

/// Pointwise rotation data of a flex on a surface (n = 2).
struct RotationData {
    Eigen::Vector2d u;  // n . tau_i (chart normal)
    double w = 0.0;
    Eigen::Vector3d Y;
    Eigen::Matrix2d a;  // Y_k = a_k^l r_l + (n . Y_k) n, a(k, l)
    Eigen::Vector2d normal_part;  // n . Y_k
    double rotation_residual = 0.0;  // max |tau_i - Y x r_i|
    double scale = 1.0;              // max |tau_i|, at least 1
    bool is_flex = true;             // rotation_residual <= 1e-8 * scale
};

RotationData rotation_data(const Immersion& imm, const DeformationField& tau, std::span<const double> x);

/// w_ij = Y_i . (n x r_j) with its covariant derivative.
struct WTensor {
    Eigen::Matrix2d w;
    std::vector<Eigen::MatrixXd> dw;  // dw[k](i, j) = w_ij,k
    double symmetry_residual = 0.0;   // |w_12 - w_21|
    double trace_residual = 0.0;      // h^ij w_ij, cofactor form when h is singular
    double codazzi_residual = 0.0;    // max |w_ij,k - w_ik,j|
    bool cofactor_form = false;
};

WTensor w_tensor(const Immersion& imm, const DeformationField& tau, std::span<const double> x);

/// phi = r . tau; residual of w_ij = -phi_{i,j}/mu + h_ij (phi - grad phi . grad rho)/mu^2.
struct PhiRelation {
    double residual = 0.0;
    double scale = 1.0;
    double mu = 0.0;
    bool skipped = false;  // |mu| < 1e-8
    Eigen::Vector3d b;     // tau - Y x r
    double b_residual = 0.0;  // |b - (g^ij phi_i r_j + (phi - g^ij phi_i rho_j)/mu n)|
};

PhiRelation phi_relation_residual(const Immersion& imm, const DeformationField& tau, std::span<const double> x);

/// max over grid nodes of |d_1(Y_2 . E) - d_2(Y_1 . E)|. PreconditionError if
/// E fails dr . dE = 0 (max |first_order_residual(E)| > 1e-10 scale).
double closed_one_form_residual(const Immersion& imm, const DeformationField& tau, const DeformationField& E,
                                const std::vector<int>& sizes);

/// E(x) = (n1 x n2) x (x + c1 n1 + c2 n2) with
/// [[1, n1.n2], [n1.n2, 1]] (c1, c2) = -(mu1, mu2).
struct BoundaryAdaptedField {
    double c1 = 0.0;
    double c2 = 0.0;
    Eigen::Vector3d axis;  // n1 x n2
    DeformationField field;
    std::string description;
};

BoundaryAdaptedField boundary_adapted_field(const Eigen::Vector3d& n1, const Eigen::Vector3d& n2, double mu1,
                                            double mu2);

/// Grid over a 2-d chart. Periodic axes use nodes lo + k h, the others
/// cell-centred nodes lo + (k + 1/2) h. A non-periodic end is closed by
/// reflection when the periodic tangent vanishes there (pole or polar
/// centre): virtual node -1-k maps to k shifted by half a period.
struct FlexGrid {
    int size[2] = {0, 0};
    double lo[2] = {0, 0};
    double step[2] = {0, 0};
    bool periodic[2] = {false, false};
    bool reflect_lo[2] = {false, false};
    bool reflect_hi[2] = {false, false};
    int outer = 0;  // node index = i_outer * size[inner] + i_inner

    int inner() const { return 1 - outer; }
    int nodes() const { return size[0] * size[1]; }
    int node(int i0, int i1) const;
    double coord(int axis, int k) const;
};

FlexGrid make_flex_grid(const Immersion& imm, int n0, int n1);

/// Discrete dr . dtau = 0: three rows per node for the fourth-order stencil
/// family and three for the first-order edge family, both applied to r and
/// tau alike so trivial motions are exact kernel vectors.
struct FlexOperator {
    FlexGrid grid;
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;  // (6 * nodes) x (3 * nodes)
    std::vector<Eigen::Vector3d> positions;               // r at each node
    int rows_per_node = 6;
};

FlexOperator assemble_flex_operator(const Immersion& imm, int n0, int n1);
FlexOperator assemble_flex_operator_serial(const Immersion& imm, int n0, int n1);

/// Grid values of a field, 3 per node, in the operator's unknown order.
Eigen::VectorXd sample_field(const FlexOperator& op, const DeformationField& tau, const Immersion& imm);

struct KernelResult {
    int dim = 0;
    int unknowns = 0;
    int expected = 6;  // (n+1)(n+2)/2
    double rel_tol = 1e-8;
    double sigma_max = 0.0;
    double largest_accepted = 0.0;  // largest singular value counted as zero
    double smallest_rejected = 0.0;
    double gap_ratio = 0.0;         // smallest_rejected / largest_accepted (inf if the latter is 0)
    std::vector<double> singular_values;  // descending
    std::string method;                   // "rotation-blocks" or "dense"
    std::string verdict;                  // "rigid", "flexible", "indeterminate"
};

inline constexpr int kDenseUnknownLimit = 20000;
inline constexpr double kGapRatio = 10.0;

/// Singular values via the rotation-symmetric block decomposition when the
/// node positions are invariant under a rigid motion composed with a shift
/// along the periodic axis, otherwise a dense SVD (at most 20000 unknowns).
KernelResult kernel_dimension(const FlexOperator& op, double rel_tol);
KernelResult kernel_dimension_dense(const FlexOperator& op, double rel_tol);

}  // namespace rigidlab
