#include "rigidlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rigidlab/errors.hpp"
#include "rigidlab/quadrature.hpp"

namespace rigidlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Cubic Hermite interpolation on a sorted table.
double hermite(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& dy, double t) {
    if (t <= x.front()) return y.front() + dy.front() * (t - x.front());
    if (t >= x.back()) return y.back() + dy.back() * (t - x.back());
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * y[i] + h10 * h * dy[i] + h01 * y[i + 1] + h11 * h * dy[i + 1];
}

double min_sample(const ScalarFunction& f, double a, double b) {
    double m = f(a);
    for (int i = 1; i <= kProfileTable; ++i) m = std::min(m, f(a + (b - a) * i / kProfileTable));
    return m;
}

}  // namespace

ScalarFunction expression_function(const std::string& text) {
    const Expression e = Expression::parse(text, 1);
    return [e](double t) {
        const double x[1] = {t};
        return e.evaluate(std::span<const double>(x, 1), 0).value();
    };
}

BoundaryProfile BoundaryProfile::from_theta(ScalarFunction kg, std::string description) {
    BoundaryProfile p;
    p.by_theta_ = true;
    p.kg_theta_ = std::move(kg);
    p.description_ = std::move(description);
    p.min_kg_ = min_sample(p.kg_theta_, 0.0, kTwoPi);
    if (!(p.min_kg_ > 0.0)) throw PreconditionError("boundary profile: k_g must be positive everywhere");
    p.turning_ = kTwoPi;
    const auto& kgf = p.kg_theta_;
    p.length_ = gauss_legendre([&kgf](double t) { return 1.0 / kgf(t); }, 0.0, kTwoPi, 4 * kBoundaryCells);
    return p;
}

BoundaryProfile BoundaryProfile::from_arclength(ScalarFunction kg, double length, std::string description) {
    if (!(length > 0.0)) throw std::invalid_argument("boundary profile: length must be positive");
    BoundaryProfile p;
    p.by_theta_ = false;
    p.kg_s_ = std::move(kg);
    p.length_ = length;
    p.description_ = std::move(description);
    p.min_kg_ = min_sample(p.kg_s_, 0.0, length);
    if (!(p.min_kg_ > 0.0)) throw PreconditionError("boundary profile: k_g must be positive everywhere");
    p.s_tab_.resize(kProfileTable + 1);
    p.kg_tab_.resize(kProfileTable + 1);
    for (int i = 0; i <= kProfileTable; ++i) {
        p.s_tab_[i] = length * i / kProfileTable;
        p.kg_tab_[i] = p.kg_s_(p.s_tab_[i]);
    }
    for (double k : p.kg_tab_) p.inv_kg_tab_.push_back(1.0 / k);
    p.theta_tab_ = cumulative_integral(p.kg_s_, 0.0, p.s_tab_, 0.05);
    p.turning_ = p.theta_tab_.back();
    return p;
}

BoundaryProfile BoundaryProfile::from_theta_expression(const std::string& kg) {
    return from_theta(expression_function(kg), "k_g(theta) = " + kg);
}

BoundaryProfile BoundaryProfile::from_arclength_expression(const std::string& kg, double length) {
    std::ostringstream d;
    d.precision(17);
    d << "k_g(s) = " << kg << ", L = " << length;
    return from_arclength(expression_function(kg), length, d.str());
}

BoundaryProfile BoundaryProfile::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("boundary profile: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("boundary profile: empty CSV");
    const std::string col = line.substr(0, line.find(','));
    const bool by_theta = col == "theta";
    if (!by_theta && col != "s") throw std::invalid_argument("boundary profile: first CSV column must be theta or s");
    std::vector<double> x, y;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("boundary profile: malformed CSV row: " + line);
        x.push_back(std::stod(line.substr(0, comma)));
        y.push_back(std::stod(line.substr(comma + 1)));
    }
    if (x.size() < 5) throw std::invalid_argument("boundary profile: need at least 5 CSV samples");
    if (x.front() != 0.0) throw std::invalid_argument("boundary profile: CSV samples must start at 0");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("boundary profile: CSV samples must be increasing");
    if (by_theta && std::abs(x.back() - kTwoPi) > 1e-9)
        throw std::invalid_argument("boundary profile: theta samples must end at 2 pi");
    // Periodic Catmull-Rom slopes.
    const std::size_t n = x.size();
    std::vector<double> dy(n);
    const double period = x.back();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? n - 2 : i - 1, hi = i == n - 1 ? 1 : i + 1;
        double dx = x[hi] - x[lo];
        if (i == 0 || i == n - 1) dx += period;
        dy[i] = (y[hi] - y[lo]) / dx;
    }
    ScalarFunction f = [x, y, dy](double t) { return hermite(x, y, dy, t); };
    const std::string d = "k_g samples from " + path.filename().string();
    return by_theta ? from_theta(f, d) : from_arclength(f, period, d);
}

double BoundaryProfile::kg(double theta) const {
    if (by_theta_) return kg_theta_(theta);
    return kg_s_(arclength(theta));
}

double BoundaryProfile::arclength(double theta) const {
    if (by_theta_) {
        if (theta == 0.0) return 0.0;
        const auto& kgf = kg_theta_;
        const int cells = std::max(1, static_cast<int>(std::ceil(std::abs(theta) / 0.05)));
        return gauss_legendre([&kgf](double t) { return 1.0 / kgf(t); }, 0.0, theta, cells);
    }
    return hermite(theta_tab_, s_tab_, inv_kg_tab_, theta);
}

double BoundaryProfile::turning(double s) const {
    if (!by_theta_) return hermite(s_tab_, theta_tab_, kg_tab_, s);
    double lo = 0.0, hi = kTwoPi;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (arclength(mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Composite Gauss nodes on [0, T] with cell breaks at multiples of T/4 and the
// running integrals needed by the boundary identities.
struct ThetaGrid {
    std::vector<double> x, w, f, k, u, v, x1, x2;
};

ThetaGrid theta_grid(const BoundaryProfile& p, const ScalarFunction* f) {
    constexpr int cells = 4 * kBoundaryCells, nodes = 16;
    const double T = p.total_turning();
    const QuadratureRule r = composite_gauss(0.0, T, cells, nodes);
    ThetaGrid g;
    g.x = r.nodes;
    g.w = r.weights;
    const std::size_t n = g.x.size();
    g.k.resize(n);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.k[i] = p.kg(g.x[i]);
        a[i] = std::cos(g.x[i]) / g.k[i];
        b[i] = std::sin(g.x[i]) / g.k[i];
    }
    g.x1 = composite_gauss_cumulative(a, 0.0, T, cells, nodes);
    g.x2 = composite_gauss_cumulative(b, 0.0, T, cells, nodes);
    if (f) {
        g.f.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            g.f[i] = (*f)(g.x[i]);
            a[i] = g.f[i] * std::sin(g.x[i]);
            b[i] = g.f[i] * std::cos(g.x[i]);
        }
        g.u = composite_gauss_cumulative(a, 0.0, T, cells, nodes);
        g.v = composite_gauss_cumulative(b, 0.0, T, cells, nodes);
    }
    return g;
}

double enclosed_area(const ThetaGrid& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s -= g.w[i] * g.x2[i] * std::cos(g.x[i]) / g.k[i];
    return s;
}

void require_full_turn(const BoundaryProfile& p) {
    if (std::abs(p.total_turning() - kTwoPi) > 1e-8)
        throw PreconditionError("boundary: total turning of the profile is not 2 pi");
}

}  // namespace

DongReport dong_conditions(const BoundaryProfile& profile) {
    DongReport r;
    r.length = profile.length();
    r.turning_residual = std::abs(profile.total_turning() - kTwoPi);
    const ThetaGrid g = theta_grid(profile, nullptr);
    std::complex<double> c = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) c += g.w[i] * std::polar(1.0, g.x[i]) / g.k[i];
    r.closure_residual = std::abs(c);
    r.turning_holds = r.turning_residual <= kDongTolerance;
    r.closure_holds = r.closure_residual <= kDongTolerance;
    return r;
}

namespace {

Jet gauss_curvature_jet(const FrameJets& fj) {
    const Mat<Jet>& h = fj.second_form;
    return (h[0][0] * h[1][1] - h[0][1] * h[1][0]) / fj.det_metric;
}

}  // namespace

DongReport dong_conditions(const Immersion& imm, BoundaryEdge edge, TDirection dir, int n_s) {
    const GeodesicChart ch = geodesic_boundary_chart(imm, edge, 1e-3, n_s, 1);
    const double sign = dir == TDirection::Inward ? 1.0 : -1.0;
    const int b = 1 - edge.axis;
    const double period = imm.hi(b) - imm.lo(b);
    const double dsig = period / n_s;
    std::vector<double> rate(n_s), kt_kg(n_s);
#pragma omp parallel for
    for (int i = 0; i < n_s; ++i) {
        const Eigen::Vector2d x0 = ch.chart_point[ch.index(i, 0)];
        const FrameJets fj = frame_jets(imm, std::span<const double>(x0.data(), 2), 3);
        const Jet K = gauss_curvature_jet(fj);
        const double kt = sign * (K.d(0) * ch.inward[i](0) + K.d(1) * ch.inward[i](1));
        const double kg = sign * ch.geodesic_curvature[i];
        rate[i] = kg * ch.speed[i];
        kt_kg[i] = kt * kg;
    }
    DongReport r;
    r.length = ch.length;
    double total = 0.0;
    for (double x : rate) total += x;
    total *= dsig;
    r.turning_residual = std::abs(total - kTwoPi);
    const std::vector<double> theta = periodic_cumulative(rate, period);
    std::complex<double> c = 0.0;
    for (int i = 0; i < n_s; ++i) c += std::polar(1.0, theta[i]) * ch.speed[i] * dsig;
    r.closure_residual = std::abs(c);
    r.min_kt_kg = *std::min_element(kt_kg.begin(), kt_kg.end());
    r.turning_holds = r.turning_residual <= kDongTolerance;
    r.closure_holds = r.closure_residual <= kDongTolerance;
    r.sign_holds = *r.min_kt_kg > 0.0;
    return r;
}

BoundaryODESolution solve_boundary_ode(const BoundaryProfile& profile, const ScalarFunction& f, double c1, double c2,
                                       int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("boundary ODE: need at least one step");
    const double T = profile.total_turning();
    const double h = T / n_steps;
    BoundaryODESolution s;
    s.c1 = c1;
    s.c2 = c2;
    s.theta.resize(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k) s.theta[k] = k == n_steps ? T : k * h;
    s.u = cumulative_integral([&f](double t) { return f(t) * std::sin(t); }, 0.0, s.theta);
    s.v = cumulative_integral([&f](double t) { return f(t) * std::cos(t); }, 0.0, s.theta);
    auto rhs = [&f](double t, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -y[0] + f(t);
    };
    std::array<double, 2> y = {c1, c2};
    for (int k = 0; k <= n_steps; ++k) {
        if (k > 0) rk4_step(rhs, s.theta[k - 1], h, y);
        const double t = s.theta[k];
        const double ps = -std::cos(t) * (s.u[k] - c1) + std::sin(t) * (s.v[k] + c2);
        const double pt = std::sin(t) * (s.u[k] - c1) + std::cos(t) * (s.v[k] + c2);
        s.phi_s.push_back(y[0]);
        s.phi_t.push_back(y[1]);
        s.phi_s_exact.push_back(ps);
        s.phi_t_exact.push_back(pt);
        s.max_deviation = std::max({s.max_deviation, std::abs(y[0] - ps), std::abs(y[1] - pt)});
    }
    return s;
}

ReferenceCurve reference_curve(const BoundaryProfile& profile, int samples) {
    if (samples < 4) throw std::invalid_argument("reference curve: need at least 4 samples");
    ReferenceCurve c;
    const double T = profile.total_turning();
    for (int i = 0; i <= samples; ++i) c.theta.push_back(i == samples ? T : T * i / samples);
    auto kg = [&profile](double t) { return profile.kg(t); };
    c.x1 = cumulative_integral([&](double t) { return std::cos(t) / kg(t); }, 0.0, c.theta);
    c.x2 = cumulative_integral([&](double t) { return std::sin(t) / kg(t); }, 0.0, c.theta);
    c.closure_gap = std::hypot(c.x1.back(), c.x2.back());
    c.closed = c.closure_gap <= 1e-6;
    c.area = enclosed_area(theta_grid(profile, nullptr));
    return c;
}

Admissibility check_admissible(const BoundaryProfile& profile, const ScalarFunction& f) {
    require_full_turn(profile);
    const ThetaGrid g = theta_grid(profile, &f);
    Admissibility a;
    a.u_end = gauss_legendre([&f](double t) { return f(t) * std::sin(t); }, 0.0, kTwoPi, 4 * kBoundaryCells);
    a.v_end = gauss_legendre([&f](double t) { return f(t) * std::cos(t); }, 0.0, kTwoPi, 4 * kBoundaryCells);
    double fabs = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        a.mean_phi_s += g.w[i] * (-std::cos(g.x[i]) * g.u[i] + std::sin(g.x[i]) * g.v[i]) / g.k[i];
        fabs += g.w[i] * std::abs(g.f[i]);
    }
    a.scale = std::max(1.0, fabs * std::max(1.0, profile.length()));
    const double tol = kAdmissibleTolerance * a.scale;
    if (std::abs(a.u_end) > tol)
        a.failed = "u(2 pi) = 0";
    else if (std::abs(a.v_end) > tol)
        a.failed = "v(2 pi) = 0";
    else if (std::abs(a.mean_phi_s) > tol)
        a.failed = "closed-integral phi_s ds = 0";
    a.admissible = a.failed.empty();
    return a;
}

namespace {

void require_admissible(const BoundaryProfile& profile, const ScalarFunction& f) {
    const Admissibility a = check_admissible(profile, f);
    if (!a.admissible) {
        std::ostringstream m;
        m.precision(6);
        m << "boundary: f is not admissible, constraint " << a.failed << " fails (u(2pi) = " << a.u_end
          << ", v(2pi) = " << a.v_end << ", mean phi_s = " << a.mean_phi_s << ")";
        throw PreconditionError(m.str());
    }
}

double uv_constant(const BoundaryProfile& profile, const ScalarFunction& f) {
    const double upi = gauss_legendre([&f](double t) { return f(t) * std::sin(t); }, 0.0, std::numbers::pi,
                                      2 * kBoundaryCells);
    const double den = gauss_legendre([&profile](double t) { return std::sin(t) / profile.kg(t); }, 0.0,
                                      std::numbers::pi, 2 * kBoundaryCells);
    return -upi / den;
}

}  // namespace

UVData uv_functions(const BoundaryProfile& profile, const ScalarFunction& f, int samples) {
    require_admissible(profile, f);
    if (samples < 4 || samples % 2) throw std::invalid_argument("uv functions: samples must be even and >= 4");
    UVData d;
    d.C = uv_constant(profile, f);
    for (int i = 0; i <= samples; ++i) d.theta.push_back(kTwoPi * i / samples);
    d.u = cumulative_integral([&f](double t) { return f(t) * std::sin(t); }, 0.0, d.theta);
    d.v = cumulative_integral([&f](double t) { return f(t) * std::cos(t); }, 0.0, d.theta);
    auto kg = [&profile](double t) { return profile.kg(t); };
    const auto x1 = cumulative_integral([&](double t) { return std::cos(t) / kg(t); }, 0.0, d.theta);
    const auto x2 = cumulative_integral([&](double t) { return std::sin(t) / kg(t); }, 0.0, d.theta);
    for (int i = 0; i <= samples; ++i) {
        d.U.push_back(d.u[i] + d.C * x2[i]);
        d.V.push_back(d.v[i] + d.C * x1[i]);
        const double t = d.theta[i];
        const double dist = std::min({std::abs(t), std::abs(t - std::numbers::pi), std::abs(t - kTwoPi)});
        if (dist < 1e-3) continue;
        const double inner = f(t) + d.C / kg(t);
        const double up = std::sin(t) * inner, vp = std::cos(t) * inner;
        d.cot_residual = std::max(d.cot_residual, std::abs(up * std::cos(t) / std::sin(t) - vp));
    }
    d.U0 = d.U.front();
    d.Upi = d.U[samples / 2];
    d.U2pi = d.U.back();
    return d;
}

EnergyInequality boundary_energy_inequality(const BoundaryProfile& profile, const ScalarFunction& f) {
    require_admissible(profile, f);
    const ThetaGrid g = theta_grid(profile, &f);
    EnergyInequality e;
    e.C = uv_constant(profile, f);
    e.area = enclosed_area(g);
    double sing = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double c = std::cos(g.x[i]), s = std::sin(g.x[i]);
        e.direct += g.w[i] * g.f[i] * (-c * g.u[i] + s * g.v[i]);
        e.route_a += 2.0 * g.w[i] * (-g.f[i] * c * g.u[i]);
        const double U = g.u[i] + e.C * g.x2[i];
        sing += g.w[i] * (U / s) * (U / s);
    }
    e.route_b = -sing - 2.0 * e.C * e.C * e.area;
    e.routes_gap = std::abs(e.route_a - e.route_b);
    e.value = e.route_a;
    return e;
}

AdmissibleProjector::AdmissibleProjector(const BoundaryProfile& profile, int degree) : degree_(degree) {
    if (degree < 1) throw std::invalid_argument("admissible projector: degree must be >= 1");
    require_full_turn(profile);
    g_.resize(3, size());
    for (int j = 0; j < size(); ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
        e(j) = 1.0;
        const Admissibility a = check_admissible(profile, function(e));
        g_(0, j) = a.u_end;
        g_(1, j) = a.v_end;
        g_(2, j) = a.mean_phi_s;
    }
}

Eigen::VectorXd AdmissibleProjector::project(const Eigen::VectorXd& c) const {
    const Eigen::Matrix3d ggt = g_ * g_.transpose();
    return c - g_.transpose() * ggt.ldlt().solve(g_ * c);
}

ScalarFunction AdmissibleProjector::function(const Eigen::VectorXd& c) const {
    if (c.size() != size()) throw std::invalid_argument("admissible projector: coefficient count");
    const int deg = degree_;
    return [c, deg](double t) {
        double s = c(0);
        for (int k = 1; k <= deg; ++k) s += c(2 * k - 1) * std::cos(k * t) + c(2 * k) * std::sin(k * t);
        return s;
    };
}

Eigen::VectorXd AdmissibleProjector::random(std::mt19937_64& rng) const {
    std::normal_distribution<double> n;
    Eigen::VectorXd c(size());
    for (int i = 0; i < size(); ++i) c(i) = n(rng);
    return project(c);
}

LemmaHHReport lemma_hh_check(const Immersion& imm, BoundaryEdge edge, double depth, int n_s, int n_t) {
    const GeodesicChart ch = geodesic_boundary_chart(imm, edge, depth, n_s, n_t);
    const double dt = ch.t[1] - ch.t[0];
    LemmaHHReport rep;
    rep.samples.resize(n_s);
    double kscale = 1.0;
#pragma omp parallel for
    for (int i = 0; i < n_s; ++i) {
        const Eigen::Vector2d x0 = ch.chart_point[ch.index(i, 0)];
        const Eigen::Vector2d x1 = ch.chart_point[ch.index(i, 1)];
        const FrameJets fj = frame_jets(imm, std::span<const double>(x0.data(), 2), 3);
        const FrameJets fj1 = frame_jets(imm, std::span<const double>(x1.data(), 2), 2);
        const Mat<Jet>& h = fj.second_form;
        const Jet K = gauss_curvature_jet(fj);
        const Eigen::Vector2d v = ch.inward[i], X = ch.along[i], Xt = ch.along_rate[i];
        LemmaHHSample& s = rep.samples[i];
        s.s = ch.arclength[i];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double hab = h[a][b].value();
                s.L += hab * X(a) * X(b);
                s.M += hab * X(a) * v(b);
                s.N += hab * v(a) * v(b);
                s.L_t += (h[a][b].d(0) * v(0) + h[a][b].d(1) * v(1)) * X(a) * X(b) + 2.0 * hab * X(a) * Xt(b);
            }
        s.K = K.value();
        s.K_t = K.d(0) * v(0) + K.d(1) * v(1);
        s.B_t = ch.B_t[ch.index(i, 0)];
        s.K_t_fd = (gauss_curvature_jet(fj1).value() - s.K) / dt;
        s.B_t_fd = (ch.B[ch.index(i, 1)] - ch.B[ch.index(i, 0)]) / dt;
    }
    double max_k = 0.0, max_kt = 0.0, mean_bt = 0.0, mean_n = 0.0;
    for (const auto& s : rep.samples) {
        max_k = std::max(max_k, std::abs(s.K));
        max_kt = std::max(max_kt, std::abs(s.K_t));
        kscale = std::max(kscale, s.N * s.N);
        mean_bt += s.B_t;
        mean_n += s.N;
    }
    if (max_k > 1e-6 * kscale)
        throw PreconditionError("flat boundary: Gauss curvature does not vanish on the boundary (max |K| = " +
                                std::to_string(max_k) + ")");
    if (max_kt <= 1e-8 * kscale)
        throw PreconditionError("flat boundary: K_t vanishes on the boundary, the boundary ratios are indeterminate");
    const double tsign = mean_bt < 0 ? -1.0 : 1.0;
    rep.direction = tsign > 0 ? TDirection::Inward : TDirection::Outward;
    rep.normal_sign = mean_n < 0 ? -1 : 1;
    for (auto& s : rep.samples) {
        s.B_t *= tsign;
        s.K_t *= tsign;
        s.K_t_fd *= tsign;
        s.B_t_fd *= tsign;
        s.M *= tsign * rep.normal_sign;
        s.L_t *= tsign * rep.normal_sign;
        s.L *= rep.normal_sign;
        s.N *= rep.normal_sign;
        if (!(s.K_t / s.B_t > 0.0))
            throw PreconditionError("flat boundary: K_t and B_t have opposite signs on the boundary");
        s.N_expected = std::sqrt(s.K_t / s.B_t);
        s.L_t_expected = std::sqrt(s.K_t * s.B_t);
        rep.max_L = std::max(rep.max_L, std::abs(s.L));
        rep.max_M = std::max(rep.max_M, std::abs(s.M));
        rep.max_N_error = std::max(rep.max_N_error, std::abs(s.N - s.N_expected));
        rep.max_L_t_error = std::max(rep.max_L_t_error, std::abs(s.L_t - s.L_t_expected));
    }
    return rep;
}

}  // namespace rigidlab
