#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "rigidlab/expr.hpp"
#include "rigidlab/small_tensor.hpp"

namespace rigidlab {

/// `Outward` takes the chart normal N with det[r_1, ..., r_n, N] > 0;
/// `Inward` negates it. Catalog charts are arranged so that `Outward` points
/// away from the enclosed region.
enum class Orientation { Outward, Inward };

/// Parametrized hypersurface r: [lo, hi]^n -> R^(n+1).
class Immersion {
public:
    Immersion() = default;
    Immersion(std::string name, std::vector<Expression> components, std::vector<double> lo,
              std::vector<double> hi, std::vector<bool> periodic,
              Orientation orientation = Orientation::Outward);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    int ambient_dim() const { return dim_ + 1; }
    const std::vector<Expression>& components() const { return components_; }
    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    bool periodic(int axis) const { return periodic_[axis]; }
    const std::vector<double>& lower() const { return lo_; }
    const std::vector<double>& upper() const { return hi_; }
    const std::vector<bool>& periodic_flags() const { return periodic_; }
    Orientation orientation() const { return orientation_; }

    Immersion with_orientation(Orientation o) const;
    Immersion renamed(std::string name) const;

    bool contains(std::span<const double> x, double slack = 0.0) const;

    std::vector<Jet> position(std::span<const Jet> vars) const;
    std::vector<Jet> position(std::span<const double> x, int order) const;
    Eigen::VectorXd point(std::span<const double> x) const;

private:
    std::string name_;
    int dim_ = 0;
    std::vector<Expression> components_;
    std::vector<double> lo_, hi_;
    std::vector<bool> periodic_;
    Orientation orientation_ = Orientation::Outward;
};

/// Sample nodes of a tensor grid over a chart box: uniform nodes on
/// periodic axes, cell-centred nodes otherwise. `sizes[i]` nodes per axis.
std::vector<std::vector<double>> grid_nodes(const std::vector<double>& lo, const std::vector<double>& hi,
                                            const std::vector<bool>& periodic, const std::vector<int>& sizes);

/// Rigid (or general affine) image x -> A x + b of an immersion, built by
/// composing the component expressions.
Immersion transformed(const Immersion& imm, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                      std::string name);

/// Frame quantities as jets, so derived fields can be differentiated again.
/// With position jets of order p: tangents and normals carry order p-1,
/// second-derivative quantities (h, Christoffels) order p-2.
struct FrameJets {
    int dim = 0;
    int order = 0;
    Vec<Jet> r;
    Mat<Jet> tangents;     // tangents[i][a] = d r^a / dx^i
    Mat<Jet> metric;       // g_ij
    Mat<Jet> metric_inv;   // g^ij
    Jet det_metric;
    Vec<Jet> normal;       // unit normal, oriented
    Vec<Jet> chart_normal; // unit chart normal (Outward convention)
    std::vector<Mat<Jet>> second_derivs;  // second_derivs[i][j][a]
    Mat<Jet> second_form;                 // h_ij = r_ij . n
    std::vector<Mat<Jet>> christoffel;    // christoffel[k][i][j] = Gamma^k_ij
};

/// Builds the jet frame at `x` from position jets of order `order` (>= 1).
/// Throws DegenerateError when the tangent Gram determinant is below
/// 1e-12 * (max tangent norm)^(2n).
FrameJets frame_jets(const Immersion& imm, std::span<const double> x, int order = 3);

/// Point values of the first and second fundamental forms and connection.
struct PointFrame {
    Eigen::VectorXd point;     // chart coordinates
    Eigen::VectorXd position;  // r
    Eigen::MatrixXd tangents;  // (n+1) x n, columns r_i
    Eigen::VectorXd normal;
    Eigen::MatrixXd metric;
    Eigen::MatrixXd metric_inv;
    double det_metric = 0.0;
    Eigen::MatrixXd second_form;
    std::vector<Eigen::MatrixXd> christoffel;  // christoffel[k](i, j)
    double curvature = 0.0;                    // det(h) / det(g)

    int dim() const { return static_cast<int>(metric.rows()); }
};

PointFrame to_point_frame(const FrameJets& fj, std::span<const double> x);
PointFrame frame_at(const Immersion& imm, std::span<const double> x);

/// f_{,ij} - Gamma^k_ij f_{,k} for a scalar jet of order >= 2.
Eigen::MatrixXd covariant_hessian(const PointFrame& frame, const Jet& f);
Eigen::MatrixXd covariant_hessian(const Immersion& imm, const Expression& f, std::span<const double> x);

/// Covariant derivative of a symmetric 2-tensor given as order >= 1 jets:
/// result[k](i, j) = T_{ij,k}.
std::vector<Eigen::MatrixXd> covariant_derivative(const Mat<Jet>& tensor, const PointFrame& frame);

/// h_{ij,k}; result[k](i, j).
std::vector<Eigen::MatrixXd> second_form_derivatives(const Immersion& imm, std::span<const double> x);

/// max |T_{ij,k} - T_{ik,j}| over all index triples.
double codazzi_residual(const std::vector<Eigen::MatrixXd>& dt);

/// Intrinsic Gaussian curvature from the metric alone (Brioschi); n = 2 only.
double brioschi_curvature(const Immersion& imm, std::span<const double> x);

/// Uniformly random interior point (margin as a fraction of each
/// non-periodic extent).
template <class Rng>
std::vector<double> random_interior_point(const Immersion& imm, Rng& rng, double margin = 0.02);

/// A domain edge {x_axis = lo or hi}; the other coordinate must be periodic
/// and parametrizes the boundary curve.
struct BoundaryEdge {
    int axis = 1;
    bool high = false;
};

/// Geodesic coordinates (s, t) near a boundary curve: t is arc length along
/// inward unit-speed geodesics normal to the boundary, s is boundary arc
/// length. Samples are indexed [i * (n_t + 1) + k] for boundary sample i and
/// t-step k.
struct GeodesicChart {
    BoundaryEdge edge;
    int n_s = 0;
    int n_t = 0;
    double depth = 0.0;
    double length = 0.0;            // boundary length
    std::vector<double> sigma;      // chart parameter of boundary samples
    std::vector<double> arclength;  // s at each boundary sample
    std::vector<double> speed;      // ds / dsigma
    std::vector<double> t;          // k * depth / n_t
    std::vector<Eigen::Vector2d> chart_point;
    std::vector<double> B;
    std::vector<double> B_t;
    std::vector<double> offdiag;  // g(d_s, d_t) / (|d_s| |d_t|)
    // Boundary (t = 0) data in chart coordinates.
    std::vector<Eigen::Vector2d> inward;      // d/dt
    std::vector<Eigen::Vector2d> along;       // d/ds
    std::vector<Eigen::Vector2d> along_rate;  // d/dt of d/ds
    std::vector<double> geodesic_curvature;   // k_g = B_t(s, 0)

    double max_offdiag() const;
    double max_b0_error() const;
    std::size_t index(int i, int k) const { return static_cast<std::size_t>(i) * (n_t + 1) + k; }
};

/// Integrates geodesics (and their Jacobi fields) inward from `n_s` boundary
/// samples with a fixed-step fourth-order Runge-Kutta scheme.
/// Throws PreconditionError when a geodesic leaves the domain and
/// DegenerateError on a caustic (B -> 0).
GeodesicChart geodesic_boundary_chart(const Immersion& imm, BoundaryEdge edge, double depth, int n_s,
                                      int n_t);

}  // namespace rigidlab

#include "rigidlab/geometry_inl.hpp"
