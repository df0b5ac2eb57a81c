#pragma once

#include <Eigen/Dense>

#include <random>
#include <span>
#include <string>
#include <vector>

#include "rigidlab/flex.hpp"
#include "rigidlab/geometry.hpp"

namespace rigidlab {

/// delta^{upper}_{lower}: sign of the permutation taking `lower` to `upper`,
/// 0 on repeated indices or when the tuples are not permutations of each
/// other. Indices are 1-based in [1, max_index]; std::out_of_range otherwise.
int generalized_kronecker(std::span<const int> upper, std::span<const int> lower, int max_index);

/// dtau = Omega dr with Omega skew; W_i^{ab} = 1/2 e^a . Omega_i e^b in the
/// frame r_1..r_n, n (e^a the dual frame); w_ij = r_j . Omega_i n.
struct BivectorDecomposition {
    Eigen::MatrixXd omega;              // (n+1) x (n+1)
    std::vector<Eigen::MatrixXd> W;     // W[i](a, b), 0-based, index n is the normal
    Eigen::MatrixXd w;                  // n x n
    double tangential = 0.0;            // max |W_i^{jc}|, j, c < n
    double antisymmetry = 0.0;          // max |W_i^{ab} + W_i^{ba}|
    double symmetry = 0.0;              // max |w_ij - w_ji|
    double flex_residual = 0.0;         // max |tau_i - Omega r_i|
};

BivectorDecomposition decompose_rotation_bivector(const Immersion& imm, const DeformationField& tau,
                                                  std::span<const double> x);

/// h_kj w_il - h_lj w_ik - (h_ki w_jl - h_li w_jk), 0-based indices.
double linearized_gauss_constraint(const Eigen::MatrixXd& h, const Eigen::MatrixXd& w, int i, int j, int k, int l);

struct GaussNullspace {
    int dim = 0;
    int unknowns = 0;                       // n(n+1)/2
    int constraints = 0;                    // n^4
    std::vector<Eigen::MatrixXd> basis;     // orthonormal in the packed (i <= j) coordinates
    Eigen::VectorXd singular_values;
};

/// Null space of the linearized Gauss system over symmetric w. Relative SVD
/// threshold; an all-zero system has the full space as null space.
GaussNullspace linearized_gauss_nullspace(const Eigen::MatrixXd& h, double rel_tol = 1e-10);

struct DRVerdict {
    int rank = 0;
    int nullspace_dim = 0;
    int diagonal_nullspace_dim = 0;  // same system after eigen-diagonalizing h
    Eigen::VectorXd eigenvalues;
    std::string verdict;             // "rigid" or "not-certified"
};

/// "rigid" iff rank h >= 3 and the null space is trivial. ConsistencyError if
/// the two tests disagree, or the diagonalized system gives another dimension.
DRVerdict dr_rigidity_test(const Eigen::MatrixXd& h, double rank_tol = 1e-10);

/// Random symmetric n x n matrix of the given rank: eigenvalue magnitudes in
/// [0.5, 2] with random signs, conjugated by a random orthogonal matrix.
Eigen::MatrixXd random_rank_controlled(int n, int rank, std::mt19937_64& rng);

}  // namespace rigidlab
