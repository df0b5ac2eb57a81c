#include <doctest.h>

#include <cmath>
#include <random>

#include "rigidlab/catalog.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/flex.hpp"
#include "rigidlab/highdim.hpp"
#include "test_util.hpp"

using namespace rigidlab;
using testutil::surface;

namespace {

// Independent oracle: columns from the constraint evaluator, rank by full-pivot LU.
int brute_force_dim(const Eigen::MatrixXd& h) {
    const int n = static_cast<int>(h.rows());
    std::vector<Eigen::MatrixXd> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
            e(i, j) = e(j, i) = 1.0;
            basis.push_back(e);
        }
    Eigen::MatrixXd a(n * n * n * n, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        int row = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) a(row++, c) = linearized_gauss_constraint(h, basis[c], i, j, k, l);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-9);
    return static_cast<int>(basis.size()) - static_cast<int>(lu.rank());
}

Eigen::MatrixXd diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(d.size());
    int i = 0;
    for (double x : d) v(i++) = x;
    return v.asDiagonal();
}

Immersion s3_patch() {
    return surface("s3", {"cos(x3)*cos(x2)*cos(x1)", "cos(x3)*cos(x2)*sin(x1)", "cos(x3)*sin(x2)", "sin(x3)"},
                   {0, -1, -1}, {6, 1, 1}, {false, false, false});
}

}  // namespace

TEST_CASE("generalized kronecker") {
    const int a[] = {1, 2}, b[] = {2, 1}, c[] = {1, 1, 2}, d[] = {1, 2, 3};
    CHECK(generalized_kronecker(a, a, 3) == 1);
    CHECK(generalized_kronecker(a, b, 3) == -1);
    CHECK(generalized_kronecker(c, d, 3) == 0);
    const int e[] = {3, 1, 2}, f[] = {1, 2, 4};
    CHECK(generalized_kronecker(e, d, 3) == 1);
    CHECK(generalized_kronecker(d, f, 4) == 0);
    CHECK_THROWS_AS(generalized_kronecker(d, f, 3), std::out_of_range);
    const int z[] = {0, 1};
    CHECK_THROWS_AS(generalized_kronecker(z, a, 3), std::out_of_range);
    // Antisymmetry in the upper indices on random 4-tuples.
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(1, 5);
    for (int t = 0; t < 200; ++t) {
        int u[4], l[4];
        for (int i = 0; i < 4; ++i) {
            u[i] = pick(rng);
            l[i] = pick(rng);
        }
        int s[4] = {u[1], u[0], u[2], u[3]};
        CHECK(generalized_kronecker(s, l, 5) == -generalized_kronecker(u, l, 5));
    }
}

TEST_CASE("rotation bivector: trivial motions on an S3 patch") {
    const Immersion s = s3_patch();
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        Eigen::Matrix4d a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = g(rng);
        a = (a - a.transpose()).eval();
        const auto tau = DeformationField::trivial(a, Eigen::Vector4d(g(rng), g(rng), g(rng), g(rng)));
        const auto x = random_interior_point(s, rng);
        const BivectorDecomposition d = decompose_rotation_bivector(s, tau, x);
        CHECK((d.omega - a).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(d.flex_residual < 1e-12);
        CHECK(d.w.cwiseAbs().maxCoeff() < 1e-8);
        CHECK(d.tangential < 1e-8);
        CHECK(d.symmetry < 1e-10);
        CHECK(d.antisymmetry < 1e-12);
    }
    const auto b = DeformationField::trivial(Eigen::Matrix4d::Zero(), Eigen::Vector4d(1, 2, 3, 4));
    const double x[] = {1.0, 0.2, -0.3};
    const BivectorDecomposition d = decompose_rotation_bivector(s, b, x);
    for (const auto& w : d.W) CHECK(w.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation bivector: surface case matches the w tensor") {
    const Immersion p = catalog_surface("plane");
    std::vector<Expression> c = {Expression::parse("0", 2), Expression::parse("0", 2), Expression::parse("x1*x2", 2)};
    const auto bend = DeformationField::expressions(c);
    const double x[] = {0.3, -0.6};
    const BivectorDecomposition d = decompose_rotation_bivector(p, bend, x);
    const WTensor w = w_tensor(p, bend, x);
    CHECK((d.w - w.w).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(d.tangential < 1e-14);
    CHECK(d.w.cwiseAbs().maxCoeff() > 0.5);
}

TEST_CASE("gauss null space: worked examples") {
    CHECK(linearized_gauss_nullspace(diag({1, 2, 3})).dim == 0);
    const GaussNullspace z = linearized_gauss_nullspace(Eigen::MatrixXd::Zero(3, 3));
    CHECK(z.dim == 6);
    CHECK(z.constraints == 81);
    const GaussNullspace r2 = linearized_gauss_nullspace(diag({1, 1, 0}));
    CHECK(r2.dim == 2);
    CHECK(brute_force_dim(diag({1, 1, 0})) == 2);
    for (const auto& w : r2.basis) {
        CHECK(std::abs(w(0, 0) + w(1, 1)) < 1e-12);
        CHECK(std::abs(w(2, 2)) < 1e-12);
        CHECK(std::abs(w(0, 2)) < 1e-12);
        CHECK(std::abs(w(1, 2)) < 1e-12);
    }
    CHECK_THROWS_AS(linearized_gauss_nullspace(diag({1, 2})), PreconditionError);
}

TEST_CASE("gauss constraint: diagonal specialization") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    const Eigen::MatrixXd h = diag({g(rng), g(rng), g(rng)});
    Eigen::MatrixXd w(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) w(i, j) = w(j, i) = g(rng);
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        CHECK(linearized_gauss_constraint(h, w, b, a, a, b) == h(a, a) * w(b, b) + h(b, b) * w(a, a));
}

TEST_CASE("rigidity test: named cases") {
    std::mt19937_64 rng(4);
    Eigen::MatrixXd z(4, 4);
    std::normal_distribution<double> g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) z(i, j) = g(rng);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(z).householderQ();
    Eigen::MatrixXd h = q * diag({1, 2, 3, 4}) * q.transpose();
    h = (0.5 * (h + h.transpose())).eval();
    CHECK(dr_rigidity_test(h).verdict == "rigid");
    const Eigen::Vector4d v(1, -2, 0.5, 3);
    const DRVerdict r1 = dr_rigidity_test(v * v.transpose());
    CHECK(r1.verdict == "not-certified");
    CHECK(r1.nullspace_dim > 0);
    const DRVerdict sd = dr_rigidity_test(diag({5, -3, 2, 0}));
    CHECK(sd.verdict == "rigid");
    CHECK(sd.rank == 3);
    CHECK(brute_force_dim(diag({5, -3, 2, 0})) == 0);
    CHECK(dr_rigidity_test(diag({1, 2, 3})).nullspace_dim == 0);
    CHECK(dr_rigidity_test(diag({1, 1, 0})).nullspace_dim == 2);
}

TEST_CASE("rigidity test: 1000 random rank-controlled draws") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick_n(3, 5);
    int rigid = 0, uncertified = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = pick_n(rng);
        const int rank = std::uniform_int_distribution<int>(0, n)(rng);
        const Eigen::MatrixXd h = random_rank_controlled(n, rank, rng);
        DRVerdict v;
        REQUIRE_NOTHROW(v = dr_rigidity_test(h));
        CHECK(v.rank == rank);
        CHECK((v.nullspace_dim == 0) == (rank >= 3));
        if (t % 10 == 0) CHECK(brute_force_dim(h) == v.nullspace_dim);
        (rank >= 3 ? rigid : uncertified)++;
    }
    CHECK(rigid > 100);
    CHECK(uncertified > 100);
}

TEST_CASE("gauss null space: invariant under orthogonal conjugation") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        const int n = 3 + t % 3;
        const Eigen::MatrixXd h = random_rank_controlled(n, t % (n + 1), rng);
        Eigen::MatrixXd z(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) z(i, j) = g(rng);
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(z).householderQ();
        Eigen::MatrixXd hq = q * h * q.transpose();
        hq = (0.5 * (hq + hq.transpose())).eval();
        CHECK(linearized_gauss_nullspace(h).dim == linearized_gauss_nullspace(hq).dim);
    }
}
