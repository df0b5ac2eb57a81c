// One line per acceptance criterion; exit status 1 if any fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "rigidlab/boundary.hpp"
#include "rigidlab/catalog.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/flex.hpp"
#include "rigidlab/highdim.hpp"
#include "rigidlab/pairs.hpp"
#include "rigidlab/suites.hpp"

using namespace rigidlab;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Eigen::Vector3d normal3(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng), n(rng)};
}

// Brute-force null space dimension of the linearized Gauss system, written
// out from the constraint formula with unknowns w_ij = w_ji.
int brute_force_nullity(const Eigen::MatrixXd& h) {
    const int n = static_cast<int>(h.rows());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
    auto col = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (std::size_t c = 0; c < pairs.size(); ++c)
            if (pairs[c] == std::make_pair(a, b)) return static_cast<int>(c);
        return -1;
    };
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n * n * n, static_cast<Eigen::Index>(pairs.size()));
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l, ++row) {
                    m(row, col(i, l)) += h(k, j);
                    m(row, col(i, k)) -= h(l, j);
                    m(row, col(j, l)) -= h(k, i);
                    m(row, col(j, k)) += h(l, i);
                }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(pairs.size()) - static_cast<int>(lu.rank());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "rigidlab";

    run(1, "identity suite", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<Immersion> surfaces = {catalog_surface("sphere", {1.0}), catalog_surface("sphere", {2.0}),
                                                 catalog_surface("ellipsoid"),      catalog_surface("cylinder"),
                                                 catalog_surface("saddle"),         catalog_surface("quartic_cap")};
        std::mt19937_64 rng(101);
        double worst = 0.0;
        std::string where;
        for (const auto& s : surfaces) {
            std::vector<std::vector<double>> pts;
            for (int k = 0; k < 200; ++k) pts.push_back(random_interior_point(s, rng));
            const SurfaceIdentities r = surface_identities(s, pts);
            if (r.degenerate_points || !r.metric_positive || r.support_degenerate)
                return Outcome{false, s.name() + ": degenerate samples"};
            for (double v : {r.frame, r.second_form_symmetry, r.codazzi, r.support_norm, r.support_position,
                             r.darboux, r.shape})
                if (v > worst) {
                    worst = v;
                    where = s.name();
                }
        }
        const double t = elapsed(t0);
        return Outcome{worst <= 1e-8 && t <= 10.0, "6 surfaces x 200 points, worst relative residual " + sci(worst) +
                                                       " (" + where + "), " + sci(t) + " s <= 10 s"};
    });

    run(2, "cylinder pair R=1 vs R=2", [] {
        const IsometricPair pair(catalog_surface("cylinder", {1.0}),
                                 surface_from_json({{"name", "c2"},
                                                    {"dim", 2},
                                                    {"components", {"2*cos(x1/2)", "2*sin(x1/2)", "x2"}},
                                                    {"domain", {{0, 2 * pi}, {-1, 1}}},
                                                    {"periodic", {false, false}}}));
        const double metric = check_isometric(pair, {32, 32});
        std::mt19937_64 rng(202);
        double wuu = 0, wform = 0, cof = 0, cod = 0;
        bool all_cofactor = true;
        for (int k = 0; k < 200; ++k) {
            const auto x = random_interior_point(pair.first, rng);
            wuu = std::max(wuu, std::abs(difference_tensors(pair, x).W(0, 0) - 0.5));
            wform = std::max(wform, verify_w_formula(pair, x));
            const GaussCodazzi gc = verify_gauss_trace_and_codazzi(pair, x);
            all_cofactor = all_cofactor && gc.cofactor_form;
            cof = std::max(cof, gc.trace_residual);
            cod = std::max(cod, gc.codazzi_residual);
        }
        const bool ok = metric <= 1e-12 && wuu <= 1e-10 && wform <= 1e-10 && all_cofactor && cof <= 1e-12 &&
                        cod <= 1e-10;
        return Outcome{ok, "metric " + sci(metric) + ", |W_uu - 1/2| " + sci(wuu) + ", W formula " + sci(wform) +
                               ", cofactor form " + sci(cof) + ", Codazzi of W " + sci(cod)};
    });

    run(3, "cofactor-divergence identity", [] {
        std::mt19937_64 rng(303);
        std::normal_distribution<double> nd;
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            Eigen::Matrix2d q;
            q << nd(rng), nd(rng), nd(rng), nd(rng);
            const Eigen::Matrix2d hbar = q * q.transpose() + 0.1 * Eigen::Matrix2d::Identity();
            Eigen::Matrix2d W;
            W << nd(rng), nd(rng), 0, nd(rng);
            W(1, 0) = W(0, 1);
            const Eigen::Matrix2d m = hbar.inverse();
            W -= (m.cwiseProduct(W).sum() / m.cwiseProduct(hbar).sum()) * hbar;
            worst = std::max(worst, cofactor_divergence_identity(hbar, W));
        }
        return Outcome{worst <= 1e-12, "1000 draws, worst " + sci(worst)};
    });

    run(4, "energy positivity", [] {
        const IsometricPair pair(catalog_surface("sphere"), catalog_surface("sphere"));
        const double gg = energy_inner_product(pair, metric_field(), metric_field(), {32, 8});
        const double rel = std::abs(gg - 16 * pi) / (16 * pi);
        std::mt19937_64 rng(404);
        std::normal_distribution<double> nd;
        double least = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 100; ++k) {
            const EnergyPoint p = energy_point(pair, random_interior_point(pair.first, rng));
            Eigen::MatrixXd a(2, 2);
            a << nd(rng), nd(rng), 0, nd(rng);
            a(1, 0) = a(0, 1);
            least = std::min(least, energy_density(p, a, a));
        }
        return Outcome{rel <= 1e-6 && least >= 0.0,
                       "(g,g) = " + sci(gg) + " vs 16 pi, relative error " + sci(rel) + "; min (a,a) density " +
                           sci(least) + " over 100 draws"};
    });

    run(5, "trivial-flex suite", [] {
        std::mt19937_64 rng(505);
        TrivialFlexResiduals w;
        int count = 0;
        for (const auto& e : catalog_entries()) {
            const Immersion s = catalog_surface(e.name);
            for (int m = 0; m < 20; ++m, ++count) {
                const Eigen::Vector3d a = normal3(rng), b = normal3(rng);
                std::vector<std::vector<double>> pts;
                for (int k = 0; k < 5; ++k) pts.push_back(random_interior_point(s, rng));
                const TrivialFlexResiduals r = trivial_flex_residuals(s, skew_matrix(a), b, pts, {12, 8});
                w.first_order = std::max(w.first_order, r.first_order);
                w.rotation_vector = std::max(w.rotation_vector, r.rotation_vector);
                w.w = std::max(w.w, r.w);
                w.phi = std::max(w.phi, r.phi);
                w.closedness = std::max(w.closedness, r.closedness);
            }
        }
        const bool ok = w.first_order <= 1e-12 && w.rotation_vector <= 1e-8 && w.w <= 1e-10 && w.phi <= 1e-8 &&
                        w.closedness <= 1e-7;
        return Outcome{ok, std::to_string(count) + " motions: first order " + sci(w.first_order) + ", Y " +
                               sci(w.rotation_vector) + ", w " + sci(w.w) + ", phi " + sci(w.phi) + ", omega " +
                               sci(w.closedness)};
    });

    run(6, "kernel certification", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const KernelResult s = kernel_dimension(assemble_flex_operator(catalog_surface("sphere", {1.0}), 64, 32), 1e-8);
        const FlexOperator dop = assemble_flex_operator(catalog_surface("flat_disk"), 16, 16);
        const KernelResult d = kernel_dimension(dop, 1e-8);
        const double t = elapsed(t0);
        const bool ok = s.dim == 6 && s.gap_ratio >= 1e3 && d.dim == dop.grid.nodes() + 3 && t <= 60.0;
        return Outcome{ok, "sphere 64x32 dim " + std::to_string(s.dim) + " gap " + sci(s.gap_ratio) +
                               "; disk 16x16 dim " + std::to_string(d.dim) + " (nodes + 3 = " +
                               std::to_string(dop.grid.nodes() + 3) + "); " + sci(t) + " s"};
    });

    run(7, "pointwise Gauss rigidity", [] {
        std::mt19937_64 rng(707);
        int bad = 0, oracle_bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const int n = 3 + k % 3;
            const int rank = std::uniform_int_distribution<int>(0, n)(rng);
            const Eigen::MatrixXd h = random_rank_controlled(n, rank, rng);
            const DRVerdict v = dr_rigidity_test(h);
            if ((v.nullspace_dim == 0) != (rank >= 3) || v.rank != rank) ++bad;
            if (brute_force_nullity(h) != v.nullspace_dim) ++oracle_bad;
        }
        const int d123 = dr_rigidity_test(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix()).nullspace_dim;
        const int d110 = dr_rigidity_test(Eigen::Vector3d(1, 1, 0).asDiagonal().toDenseMatrix()).nullspace_dim;
        const int o123 = brute_force_nullity(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix());
        const int o110 = brute_force_nullity(Eigen::Vector3d(1, 1, 0).asDiagonal().toDenseMatrix());
        const bool ok = bad == 0 && oracle_bad == 0 && d123 == 0 && d110 == 2 && o123 == 0 && o110 == 2;
        return Outcome{ok, "1000 draws: " + std::to_string(bad) + " rank violations, " + std::to_string(oracle_bad) +
                               " oracle disagreements; diag(1,2,3) -> " + std::to_string(d123) + ", diag(1,1,0) -> " +
                               std::to_string(d110)};
    });

    run(8, "boundary suite", [] {
        const BoundaryProfile circle = BoundaryProfile::from_theta_expression("1");
        const EnergyInequality e = boundary_energy_inequality(circle, [](double t) { return std::sin(2 * t); });
        const double value_err = std::abs(e.value + pi / 3);
        double routes = e.routes_gap, worst = -std::numeric_limits<double>::infinity();
        int draws = 0, inadmissible = 0;
        std::mt19937_64 rng(808);
        for (const char* kg : {"1", "1 + 0.3*cos(2*x1)", "2 + sin(2*x1)*0.5 + 0.2*cos(4*x1)"}) {
            const BoundaryProfile p = BoundaryProfile::from_theta_expression(kg);
            const AdmissibleProjector proj(p);
            for (int t = 0; t < 100; ++t, ++draws) {
                const ScalarFunction f = proj.function(proj.random(rng));
                if (!check_admissible(p, f).admissible) ++inadmissible;
                const EnergyInequality r = boundary_energy_inequality(p, f);
                worst = std::max(worst, r.value);
                routes = std::max(routes, r.routes_gap);
            }
        }
        const double area_err = std::abs(reference_curve(circle).area - pi);
        const DongReport dong = dong_conditions(circle);
        const bool dong_ok = dong.turning_holds && dong.closure_holds && dong.turning_residual <= 1e-12 &&
                             dong.closure_residual <= 1e-12;
        const bool ok = value_err <= 1e-8 && routes <= 1e-6 && worst <= 1e-10 && inadmissible == 0 &&
                        area_err <= 1e-10 && dong_ok;
        return Outcome{ok, "sin 2theta value error " + sci(value_err) + ", routes gap " + sci(routes) + ", max over " +
                               std::to_string(draws) + " admissible f " + sci(worst) + ", |S - pi| " + sci(area_err) +
                               ", turning/closure residuals " + sci(dong.turning_residual) + "/" + sci(dong.closure_residual)};
    });

    run(9, "flat-boundary lemma on the quartic cap", [] {
        BoundaryEdge edge;
        for (const auto& e : catalog_entries())
            if (e.name == "quartic_cap") edge = e.boundary;
        const LemmaHHReport r = lemma_hh_check(catalog_surface("quartic_cap"), edge, 0.1, 32, 64);
        const bool ok = r.samples.size() == 32 && r.max_L <= 1e-6 && r.max_M <= 1e-6 && r.max_N_error <= 1e-4 &&
                        r.max_L_t_error <= 1e-4;
        return Outcome{ok, "32 samples: |L| " + sci(r.max_L) + ", |M| " + sci(r.max_M) + ", N error " +
                               sci(r.max_N_error) + ", L_t error " + sci(r.max_L_t_error)};
    });

    run(10, "determinism", [&cli] {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("rigidlab_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::vector<std::string> cmds = {"check-surface ellipsoid --grid 12x12 --random 40 --motions 4 --seed 17",
                                               "flex-kernel sphere --grid 32x16 --seed 17",
                                               "pair-check cylinder_pair.json --grid 16x16 --seed 17",
                                               "pointwise-gauss --h 1,2,3 --dim 3 --seed 17",
                                               "boundary --kg '1+0.3*cos(2*x1)' --f 'sin(2*x1)' --seed 17"};
        int same = 0;
        std::string bad;
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            std::string text[2];
            for (int run = 0; run < 2; ++run) {
                const fs::path out = dir / ("r" + std::to_string(i) + "_" + std::to_string(run) + ".json");
                const std::string line = "\"" + cli + "\" " + cmds[i] + " --report \"" + out.string() + "\" 2>/dev/null";
                const int rc = std::system(line.c_str());
                if (rc == -1 || !fs::exists(out)) return Outcome{false, "could not run: " + line};
                text[run] = slurp(out.string());
            }
            if (!text[0].empty() && text[0] == text[1]) ++same;
            else bad += " [" + cmds[i] + "]";
        }
        fs::remove_all(dir);
        return Outcome{same == static_cast<int>(cmds.size()),
                       std::to_string(same) + "/" + std::to_string(cmds.size()) + " commands byte-identical" + bad};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
