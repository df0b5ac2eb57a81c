#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rigidlab/catalog.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/pairs.hpp"
#include "test_util.hpp"

using namespace rigidlab;
using testutil::surface;
constexpr double pi = std::numbers::pi;

namespace {

IsometricPair cylinder_pair() {
    return {surface("c1", {"cos(x1)", "sin(x1)", "x2"}, {0, -1}, {2 * pi, 1}, {true, false}),
            surface("c2", {"2*cos(x1/2)", "2*sin(x1/2)", "x2"}, {0, -1}, {2 * pi, 1}, {false, false})};
}

Immersion rotated_sphere(double tx) {
    const double a = pi / 6;
    Eigen::Matrix3d r;
    r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return transformed(catalog_surface("sphere"), r, Eigen::Vector3d(tx, 0, 0), "rotated");
}

Eigen::Matrix2d random_sym(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::Matrix2d m;
    m << n(rng), n(rng), 0, n(rng);
    m(1, 0) = m(0, 1);
    return m;
}

}  // namespace

TEST_CASE("pairs: isometry check") {
    CHECK(check_isometric(cylinder_pair(), {16, 16}) < 1e-12);
    const IsometricPair rigid(catalog_surface("sphere"), rotated_sphere(0.0));
    CHECK(check_isometric(rigid, {16, 16}) < 1e-12);
    const IsometricPair bad(catalog_surface("sphere"), catalog_surface("ellipsoid", {2, 1, 1}));
    CHECK(check_isometric(bad, {16, 16}) > 1e-2);
    CHECK(cylinder_pair().periodic_flags() == std::vector<bool>{false, false});
}

TEST_CASE("pairs: cylinder difference tensors") {
    const auto pair = cylinder_pair();
    for (double u : {0.3, 2.0, 5.5}) {
        const double x[] = {u, 0.25};
        const DifferenceTensors d = difference_tensors(pair, x);
        CHECK(std::abs(d.Phi - 1.5) < 1e-14);
        CHECK(std::abs(d.W(0, 0) - 0.5) < 1e-14);
        CHECK(std::abs(d.W(0, 1)) < 1e-14);
        CHECK(std::abs(d.W(1, 1)) < 1e-14);
        CHECK(d.Phi_hessian.norm() < 1e-13);
        CHECK(std::abs(d.det_gap) < 1e-14);
        CHECK(verify_w_formula(pair, x) < 1e-10);
        const GaussCodazzi gc = verify_gauss_trace_and_codazzi(pair, x);
        CHECK(gc.cofactor_form);
        CHECK(gc.trace_residual < 1e-12);
        CHECK(gc.codazzi_residual < 1e-10);
    }
}

TEST_CASE("pairs: identical and rigid pairs") {
    const Immersion e = catalog_surface("ellipsoid");
    const IsometricPair same(e, e);
    const double x[] = {0.9, 0.4};
    const DifferenceTensors d = difference_tensors(same, x);
    CHECK(d.Phi == 0.0);
    CHECK(d.W.norm() == 0.0);
    CHECK(verify_w_formula(same, x) < 1e-12);

    const IsometricPair rigid(catalog_surface("sphere"), rotated_sphere(0.7));
    std::mt19937_64 rng(3);
    double phi_lo = 1e9, phi_hi = -1e9;
    for (int k = 0; k < 50; ++k) {
        const auto p = random_interior_point(rigid.first, rng);
        const DifferenceTensors r = difference_tensors(rigid, p);
        CHECK(r.W.cwiseAbs().maxCoeff() < 1e-12);
        phi_lo = std::min(phi_lo, r.Phi);
        phi_hi = std::max(phi_hi, r.Phi);
        CHECK(verify_w_formula(rigid, p) < 1e-8);
        const GaussCodazzi gc = verify_gauss_trace_and_codazzi(rigid, p);
        CHECK(gc.trace_residual < 1e-12);
        CHECK(gc.codazzi_residual < 1e-10);
    }
    CHECK(phi_hi - phi_lo > 0.1);
}

TEST_CASE("pairs: Codazzi of W on catalog self-pairs and rigid images") {
    std::mt19937_64 rng(17);
    for (const auto& entry : catalog_entries()) {
        const Immersion s = catalog_surface(entry.name);
        Eigen::Matrix3d r = Eigen::AngleAxisd(0.4, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
        const IsometricPair pair(s, transformed(s, r, Eigen::Vector3d(0.1, 0.2, 0.3), "moved"));
        for (int k = 0; k < 20; ++k) {
            const auto p = random_interior_point(s, rng);
            CHECK_MESSAGE(verify_gauss_trace_and_codazzi(pair, p).codazzi_residual < 1e-7, entry.name);
        }
    }
}

TEST_CASE("energy: identical unit spheres give 16 pi") {
    const IsometricPair pair(catalog_surface("sphere"), catalog_surface("sphere"));
    const double e = energy_inner_product(pair, metric_field(), metric_field(), {32, 8});
    CHECK(testutil::rel_err(e, 16 * pi) < 1e-6);
    CHECK(energy_inner_product_serial(pair, metric_field(), metric_field(), {32, 8}) == e);
    const TensorField zero = [](const EnergyPoint&) { return Eigen::MatrixXd::Zero(2, 2).eval(); };
    CHECK(energy_inner_product(pair, zero, metric_field(), {16, 4}) == 0.0);
}

TEST_CASE("energy: symmetric, bilinear, pointwise positive") {
    const IsometricPair pair(catalog_surface("ellipsoid"), catalog_surface("ellipsoid"));
    const TensorField a = [](const EnergyPoint& p) {
        Eigen::MatrixXd m(2, 2);
        m << std::sin(p.point(0)), p.point(1), p.point(1), 1.0 + std::cos(p.point(0));
        return m;
    };
    const TensorField b = [](const EnergyPoint& p) {
        Eigen::MatrixXd m(2, 2);
        m << 1.0, std::cos(p.point(0)) * p.point(1), std::cos(p.point(0)) * p.point(1), -2.0;
        return m;
    };
    const TensorField ab = [&](const EnergyPoint& p) { return (2.0 * a(p) - 3.0 * b(p)).eval(); };
    const std::vector<int> grid = {16, 4};
    const double aa = energy_inner_product(pair, a, a, grid);
    const double ab_ = energy_inner_product(pair, a, b, grid);
    const double ba = energy_inner_product(pair, b, a, grid);
    const double bb = energy_inner_product(pair, b, b, grid);
    CHECK(std::abs(ab_ - ba) < 1e-12 * std::abs(ab_));
    const double lin = energy_inner_product(pair, ab, a, grid);
    CHECK(std::abs(lin - (2 * aa - 3 * ba)) < 1e-10 * (std::abs(aa) + std::abs(ba)));
    CHECK(aa > 0);
    CHECK(bb > 0);

    std::mt19937_64 rng(23);
    for (int k = 0; k < 100; ++k) {
        const auto x = random_interior_point(pair.first, rng);
        const EnergyPoint p = energy_point(pair, x);
        const Eigen::Matrix2d alpha = random_sym(rng);
        const double dens = energy_density(p, alpha, alpha);
        CHECK(dens > 0);
        const Eigen::Matrix2d m = p.hbar.inverse() * alpha;
        const double want = p.hbar.determinant() / p.det_metric * (m * m).trace() * p.mu_sum;
        CHECK(std::abs(dens - want) <= 1e-12 * std::abs(want));
    }
}

TEST_CASE("energy: cylinder pair violates positivity") {
    CHECK_THROWS_AS(energy_inner_product(cylinder_pair(), metric_field(), metric_field(), {8, 4}),
                    PreconditionError);
    CHECK_THROWS_AS(energy_inner_product_serial(cylinder_pair(), metric_field(), metric_field(), {8, 4}),
                    PreconditionError);
}

TEST_CASE("cofactor identity") {
    Eigen::Matrix2d w;
    w << 1, 0, 0, -1;
    CHECK(cofactor_divergence_identity(Eigen::Matrix2d::Identity(), w) < 1e-15);
    CHECK(cofactor_divergence_identity(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero()) == 0.0);
    CHECK_THROWS_AS(cofactor_divergence_identity(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()),
                    PreconditionError);

    std::mt19937_64 rng(29);
    for (int k = 0; k < 1000; ++k) {
        Eigen::Matrix2d q = random_sym(rng);
        const Eigen::Matrix2d hbar = q * q.transpose() + 0.1 * Eigen::Matrix2d::Identity();
        Eigen::Matrix2d W = random_sym(rng);
        const Eigen::Matrix2d m = hbar.inverse();
        W -= (m.cwiseProduct(W).sum() / m.cwiseProduct(hbar).sum()) * hbar;
        CHECK(cofactor_divergence_identity(hbar, W) < 1e-12);
    }
}

TEST_CASE("pairs: construction errors") {
    CHECK_THROWS_AS(IsometricPair(catalog_surface("sphere"), catalog_surface("plane")), std::invalid_argument);
}
