#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "rigidlab/boundary.hpp"
#include "rigidlab/catalog.hpp"
#include "rigidlab/errors.hpp"
#include "test_util.hpp"

using namespace rigidlab;
using testutil::surface;
constexpr double pi = std::numbers::pi;

namespace {

const ScalarFunction sin2 = [](double t) { return std::sin(2 * t); };
const ScalarFunction zero = [](double) { return 0.0; };

BoundaryProfile unit_circle() { return BoundaryProfile::from_theta_expression("1"); }

}  // namespace

TEST_CASE("profile: construction") {
    const BoundaryProfile c = unit_circle();
    CHECK(std::abs(c.length() - 2 * pi) < 1e-13);
    CHECK(c.total_turning() == 2 * pi);
    const BoundaryProfile s = BoundaryProfile::from_arclength_expression("2", pi);
    CHECK(std::abs(s.total_turning() - 2 * pi) < 1e-13);
    CHECK(std::abs(s.arclength(pi) - pi / 2) < 1e-13);
    CHECK(std::abs(s.kg(1.0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(BoundaryProfile::from_theta_expression("cos(x1)"), PreconditionError);
    CHECK_THROWS_AS(BoundaryProfile::from_arclength_expression("1", -1), std::invalid_argument);
}

TEST_CASE("profile: s-parametrized table matches theta parametrization") {
    // k_g(s) = 1 + 0.3 cos s has theta(s) = s + 0.3 sin s.
    const BoundaryProfile p = BoundaryProfile::from_arclength_expression("1 + 0.3*cos(x1)", 2 * pi);
    CHECK(std::abs(p.total_turning() - 2 * pi) < 1e-12);
    for (double s : {0.3, 1.7, 4.0}) {
        const double theta = s + 0.3 * std::sin(s);
        CHECK(std::abs(p.turning(s) - theta) < 1e-10);
        CHECK(std::abs(p.arclength(theta) - s) < 1e-10);
        CHECK(std::abs(p.kg(theta) - (1 + 0.3 * std::cos(s))) < 1e-10);
    }
}

TEST_CASE("profile: CSV input") {
    const auto dir = std::filesystem::temp_directory_path() / "rigidlab_test_profile";
    std::filesystem::create_directories(dir);
    {
        std::ofstream o(dir / "theta.csv");
        o.precision(17);
        o << "theta,kg\n";
        for (int i = 0; i <= 64; ++i) o << 2 * pi * i / 64 << "," << 1.0 << "\n";
        std::ofstream b(dir / "bad.csv");
        b << "angle,kg\n0,1\n";
    }
    const BoundaryProfile p = BoundaryProfile::from_csv(dir / "theta.csv");
    CHECK(std::abs(p.length() - 2 * pi) < 1e-12);
    CHECK(std::abs(reference_curve(p).area - pi) < 1e-10);
    CHECK_THROWS_AS(BoundaryProfile::from_csv(dir / "bad.csv"), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryProfile::from_csv(dir / "missing.csv"), std::invalid_argument);
}

TEST_CASE("turning and closure: profiles") {
    const DongReport c = dong_conditions(unit_circle());
    CHECK(c.turning_residual == 0.0);
    CHECK(c.closure_residual < 1e-12);
    CHECK(c.turning_holds);
    CHECK(c.closure_holds);
    CHECK_FALSE(c.min_kt_kg.has_value());
    const DongReport two = dong_conditions(BoundaryProfile::from_arclength_expression("2", 2 * pi));
    CHECK(std::abs(two.turning_residual - 2 * pi) < 1e-12);
    CHECK_FALSE(two.turning_holds);
    // Perturbation with zero first harmonic keeps the curve closed.
    const DongReport e = dong_conditions(BoundaryProfile::from_theta_expression("1 + 0.3*cos(2*x1)"));
    CHECK(e.closure_residual < 1e-12);
    // A first-harmonic perturbation opens it.
    const DongReport o = dong_conditions(BoundaryProfile::from_theta_expression("1 + 0.3*cos(x1)"));
    CHECK_FALSE(o.closure_holds);
}

TEST_CASE("turning and closure: quartic cap boundary") {
    const Immersion cap = catalog_surface("quartic_cap");
    const DongReport out = dong_conditions(cap, {0, true}, TDirection::Outward, 64);
    CHECK(out.turning_residual < 1e-6);
    CHECK(out.closure_residual < 1e-6);
    REQUIRE(out.min_kt_kg.has_value());
    CHECK(*out.min_kt_kg > 0);
    CHECK(out.turning_holds);
    CHECK(out.closure_holds);
    CHECK(*out.sign_holds);
    CHECK(std::abs(out.length - 2 * pi) < 1e-10);
    const DongReport in = dong_conditions(cap, {0, true}, TDirection::Inward, 64);
    CHECK_FALSE(in.turning_holds);  // k_g = -1 with inward t
    CHECK(std::abs(*in.min_kt_kg - *out.min_kt_kg) < 1e-12);
}

TEST_CASE("boundary ODE: closed form") {
    const auto h = solve_boundary_ode(unit_circle(), zero, 1.0, 0.0, 4096);
    for (std::size_t i = 0; i < h.theta.size(); ++i) CHECK(std::abs(h.phi_s_exact[i] - std::cos(h.theta[i])) < 1e-15);
    CHECK(h.max_deviation < 1e-10);
    const auto s = solve_boundary_ode(unit_circle(), sin2, 0.4, -1.3, 4096);
    CHECK(s.max_deviation < 1e-8);
    for (std::size_t i = 0; i < s.theta.size(); i += 97) {
        const double t = s.theta[i];
        CHECK(std::abs(s.u[i] - 2.0 / 3 * std::pow(std::sin(t), 3)) < 1e-13);
        CHECK(std::abs(s.v[i] - 2.0 / 3 * (1 - std::pow(std::cos(t), 3))) < 1e-13);
    }
    CHECK(std::abs(s.u.back()) < 1e-13);
    CHECK(std::abs(s.v.back()) < 1e-13);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    const BoundaryProfile e = BoundaryProfile::from_theta_expression("1 + 0.3*cos(2*x1)");
    for (int t = 0; t < 5; ++t) {
        const double a = g(rng), b = g(rng);
        const ScalarFunction f = [a, b](double x) { return a * std::cos(3 * x) + b * std::sin(x) * std::sin(x); };
        CHECK(solve_boundary_ode(e, f, g(rng), g(rng), 4096).max_deviation < 1e-8);
    }
}

TEST_CASE("reference curve") {
    const ReferenceCurve c = reference_curve(unit_circle());
    CHECK(std::abs(c.area - pi) < 1e-10);
    CHECK(c.closed);
    for (std::size_t i = 0; i < c.theta.size(); i += 16) {
        CHECK(std::abs(c.x1[i] - std::sin(c.theta[i])) < 1e-13);
        CHECK(std::abs(c.x2[i] - (1 - std::cos(c.theta[i]))) < 1e-13);
    }
    for (double k : {0.5, 2.0, 3.0}) {
        const ReferenceCurve r = reference_curve(BoundaryProfile::from_arclength(
            [k](double) { return k; }, 2 * pi / k));
        CHECK(std::abs(r.area - pi / (k * k)) < 1e-10);
    }
    const BoundaryProfile e = BoundaryProfile::from_theta_expression("1 + 0.3*cos(2*x1)");
    const ReferenceCurve ell = reference_curve(e, 1024);
    CHECK(ell.closure_gap < 1e-8);
    CHECK(ell.area > 0);
    // Curvature of Gamma recovered from samples by fourth-order differences.
    const double h = ell.theta[1] - ell.theta[0];
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < ell.theta.size(); ++i) {
        auto d1 = [&](const std::vector<double>& x) {
            return (x[i - 2] - 8 * x[i - 1] + 8 * x[i + 1] - x[i + 2]) / (12 * h);
        };
        auto d2 = [&](const std::vector<double>& x) {
            return (-x[i - 2] + 16 * x[i - 1] - 30 * x[i] + 16 * x[i + 1] - x[i + 2]) / (12 * h * h);
        };
        const double a1 = d1(ell.x1), a2 = d1(ell.x2), b1 = d2(ell.x1), b2 = d2(ell.x2);
        const double kappa = (a1 * b2 - a2 * b1) / std::pow(a1 * a1 + a2 * a2, 1.5);
        worst = std::max(worst, std::abs(kappa - e.kg(ell.theta[i])));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("uv functions") {
    const UVData d = uv_functions(unit_circle(), sin2);
    CHECK(std::abs(d.C) < 1e-14);
    for (std::size_t i = 0; i < d.theta.size(); ++i) CHECK(std::abs(d.U[i] - d.u[i]) < 1e-14);
    CHECK(d.cot_residual < 1e-12);
    const UVData z = uv_functions(unit_circle(), zero);
    CHECK(z.C == 0.0);
    for (double u : z.U) CHECK(u == 0.0);
    const ScalarFunction c = [](double) { return 0.5; };
    const Admissibility a = check_admissible(unit_circle(), c);
    CHECK_FALSE(a.admissible);
    CHECK(std::abs(a.mean_phi_s - pi) < 1e-12);  // 2 pi c
    CHECK(a.failed == "closed-integral phi_s ds = 0");
    CHECK_THROWS_AS(uv_functions(unit_circle(), c), PreconditionError);
    const ScalarFunction s1 = [](double t) { return std::sin(t); };
    CHECK(check_admissible(unit_circle(), s1).failed == "u(2 pi) = 0");
}

TEST_CASE("energy inequality: closed form and routes") {
    const EnergyInequality e = boundary_energy_inequality(unit_circle(), sin2);
    CHECK(std::abs(e.value + pi / 3) < 1e-8);
    CHECK(std::abs(e.direct + pi / 3) < 1e-8);
    CHECK(e.routes_gap < 1e-6);
    CHECK(boundary_energy_inequality(unit_circle(), zero).value == 0.0);
}

TEST_CASE("energy inequality: random admissible f") {
    std::mt19937_64 rng(13);
    for (const char* kg : {"1", "1 + 0.3*cos(2*x1)", "2 + sin(2*x1)*0.5 + 0.2*cos(4*x1)"}) {
        const BoundaryProfile p = BoundaryProfile::from_theta_expression(kg);
        const AdmissibleProjector proj(p);
        for (int t = 0; t < 100; ++t) {
            const Eigen::VectorXd c = proj.random(rng);
            CHECK((proj.project(c) - c).cwiseAbs().maxCoeff() < 1e-12);
            const ScalarFunction f = proj.function(c);
            const UVData d = uv_functions(p, f);
            CHECK(std::abs(d.U0) < 1e-14);
            CHECK(std::abs(d.Upi) < 1e-10);
            CHECK(std::abs(d.U2pi) < 1e-10);
            const EnergyInequality e = boundary_energy_inequality(p, f);
            CHECK_MESSAGE(e.value <= 1e-10, kg);
            CHECK_MESSAGE(e.routes_gap < 1e-6, kg);
            CHECK(std::abs(e.direct - e.value) < 1e-8);
        }
    }
}

TEST_CASE("flat boundary: quartic cap") {
    const LemmaHHReport r = lemma_hh_check(catalog_surface("quartic_cap"), {0, true}, 0.1, 32, 64);
    CHECK(r.samples.size() == 32);
    CHECK(r.direction == TDirection::Outward);
    CHECK(r.max_L <= 1e-6);
    CHECK(r.max_M <= 1e-6);
    CHECK(r.max_N_error <= 1e-4);
    CHECK(r.max_L_t_error <= 1e-4);
    for (const auto& s : r.samples) {
        CHECK(std::abs(s.N - 8.0) < 1e-8);
        CHECK(std::abs(s.K_t - 64.0) < 1e-6);
        CHECK(std::abs(s.B_t - 1.0) < 1e-8);
        CHECK(std::abs(s.K_t_fd - s.K_t) < 0.05 * s.K_t);
    }
}

TEST_CASE("flat boundary: preconditions") {
    const auto hemi = surface("hemisphere", {"cos(x2)*cos(x1)", "cos(x2)*sin(x1)", "sin(x2)"}, {0, 0},
                              {2 * pi, 1.4}, {true, false});
    CHECK_THROWS_AS(lemma_hh_check(hemi, {1, false}, 0.1, 16, 8), PreconditionError);
    CHECK_THROWS_AS(lemma_hh_check(catalog_surface("flat_disk"), {0, true}, 0.1, 16, 8), PreconditionError);
}
