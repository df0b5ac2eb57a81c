#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "rigidlab/geometry.hpp"

namespace rigidlab {

/// Two immersions over the same chart box. The pair counts an axis as
/// periodic only when both charts are periodic along it.
struct IsometricPair {
    Immersion first;
    Immersion second;
    double tolerance = 1e-10;

    IsometricPair() = default;
    IsometricPair(Immersion a, Immersion b, double tol = 1e-10);

    int dim() const { return first.dim(); }
    std::vector<bool> periodic_flags() const;
};

/// {"first": ref, "second": ref, "tolerance": t}; refs as in surface_from_reference.
IsometricPair pair_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// sup over the grid of |g~_ij - g_ij|.
double check_isometric(const IsometricPair& pair, const std::vector<int>& sizes);

struct DifferenceTensors {
    double Phi = 0.0;          // rho~ - rho
    Eigen::MatrixXd W;         // h~ - h
    Eigen::MatrixXd hbar;      // h + h~
    double mu = 0.0;
    double mu_tilde = 0.0;
    double det_gap = 0.0;      // det h~ - det h
    Eigen::MatrixXd Phi_hessian;  // Phi_{i,j}
};

DifferenceTensors difference_tensors(const IsometricPair& pair, std::span<const double> x);

/// max |W_ij (mu + mu~) - 2 Phi_{i,j} - hbar_ij (mu - mu~)|.
/// PreconditionError when |mu + mu~| <= 1e-8.
double verify_w_formula(const IsometricPair& pair, std::span<const double> x);

struct GaussCodazzi {
    double trace_residual = 0.0;    // hbar^ij W_ij, or the cofactor form when hbar is singular
    double codazzi_residual = 0.0;  // max |W_ij,k - W_ik,j|
    bool cofactor_form = false;
};

GaussCodazzi verify_gauss_trace_and_codazzi(const IsometricPair& pair, std::span<const double> x);

/// Pointwise data entering the energy inner product.
struct EnergyPoint {
    Eigen::MatrixXd hbar;
    Eigen::MatrixXd metric;
    double det_metric = 0.0;
    double mu_sum = 0.0;  // mu + mu~
    Eigen::VectorXd point;
};

EnergyPoint energy_point(const IsometricPair& pair, std::span<const double> x);

/// Symmetric 2-tensor field on the chart.
using TensorField = std::function<Eigen::MatrixXd(const EnergyPoint&)>;

TensorField metric_field();

/// (det hbar / det g) hbar^ij hbar^kl a_ik b_jl (mu + mu~), without the volume factor.
double energy_density(const EnergyPoint& p, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Quadrature of the energy density against dV_g: periodic trapezoid with
/// `sizes[i]` points on periodic axes, Gauss-Legendre with 16 nodes in each
/// of `sizes[i]` cells otherwise. n = 2 only. PreconditionError where
/// det hbar <= 0 or mu + mu~ <= 0.
double energy_inner_product(const IsometricPair& pair, const TensorField& a, const TensorField& b,
                            const std::vector<int>& sizes);
double energy_inner_product_serial(const IsometricPair& pair, const TensorField& a, const TensorField& b,
                                   const std::vector<int>& sizes);

/// Residual of det(hbar) hbar^ij hbar^kl W_jl = [[-W22, W21], [W12, -W11]]_ik.
/// PreconditionError unless det hbar != 0 and hbar^ij W_ij = 0 (relative 1e-10).
double cofactor_divergence_identity(const Eigen::Matrix2d& hbar, const Eigen::Matrix2d& W);

}  // namespace rigidlab
