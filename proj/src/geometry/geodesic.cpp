#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>

#include "rigidlab/errors.hpp"
#include "rigidlab/geometry.hpp"
#include "rigidlab/quadrature.hpp"

namespace rigidlab {

double GeodesicChart::max_offdiag() const {
    double worst = 0.0;
    for (double v : offdiag) worst = std::max(worst, std::abs(v));
    return worst;
}

double GeodesicChart::max_b0_error() const {
    double worst = 0.0;
    for (int i = 0; i < n_s; ++i) worst = std::max(worst, std::abs(B[index(i, 0)] - 1.0));
    return worst;
}

namespace {

// Christoffel symbols and their first chart derivatives at x.
struct Connection {
    double gamma[2][2][2];      // [k][i][j]
    double dgamma[2][2][2][2];  // [m][k][i][j]
    double g[2][2];
};

Connection connection_at(const Immersion& imm, const double* x) {
    const FrameJets fj = frame_jets(imm, std::span<const double>(x, 2), 3);
    Connection c{};
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                c.gamma[k][i][j] = fj.christoffel[k][i][j].value();
                for (int m = 0; m < 2; ++m) c.dgamma[m][k][i][j] = fj.christoffel[k][i][j].d(m);
            }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c.g[i][j] = fj.metric[i][j].value();
    return c;
}

double gdot(const Connection& c, const double* a, const double* b) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += c.g[i][j] * a[i] * b[j];
    return s;
}

// State layout: x[0..1], v[2..3], J[4..5], P[6..7] with P = dJ/dt.
void geodesic_rhs(const Immersion& imm, std::span<const double> y, std::span<double> dy) {
    const Connection c = connection_at(imm, y.data());
    const double* v = y.data() + 2;
    const double* J = y.data() + 4;
    const double* P = y.data() + 6;
    for (int k = 0; k < 2; ++k) {
        double acc = 0.0, jac = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                acc += c.gamma[k][i][j] * v[i] * v[j];
                jac += 2.0 * c.gamma[k][i][j] * v[i] * P[j];
                for (int m = 0; m < 2; ++m) jac += c.dgamma[m][k][i][j] * J[m] * v[i] * v[j];
            }
        dy[k] = v[k];
        dy[2 + k] = -acc;
        dy[4 + k] = P[k];
        dy[6 + k] = -jac;
    }
}

struct Sample {
    double B, B_t, offdiag;
};

Sample measure(const Immersion& imm, const std::array<double, 8>& y, double lambda) {
    const Connection c = connection_at(imm, y.data());
    const double* v = y.data() + 2;
    const double* J = y.data() + 4;
    const double* P = y.data() + 6;
    double dj[2];  // covariant derivative of J along the geodesic
    for (int k = 0; k < 2; ++k) {
        dj[k] = P[k];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) dj[k] += c.gamma[k][i][j] * v[i] * J[j];
    }
    const double jn = std::sqrt(gdot(c, J, J));
    const double vn = std::sqrt(gdot(c, v, v));
    return {jn / lambda, gdot(c, J, dj) / (jn * lambda), gdot(c, J, v) / (jn * vn)};
}

}  // namespace

GeodesicChart geodesic_boundary_chart(const Immersion& imm, BoundaryEdge edge, double depth, int n_s,
                                      int n_t) {
    if (imm.dim() != 2) throw PreconditionError("geodesic chart: surfaces (n = 2) only");
    if (edge.axis != 0 && edge.axis != 1) throw PreconditionError("geodesic chart: edge axis must be 0 or 1");
    const int a = edge.axis;
    const int b = 1 - a;
    if (imm.periodic(a)) throw PreconditionError("geodesic chart: edge axis is periodic, not a boundary");
    if (!imm.periodic(b)) throw PreconditionError("geodesic chart: boundary edge is not a closed curve");
    if (n_s < 4 || n_t < 1 || !(depth > 0.0)) throw PreconditionError("geodesic chart: bad resolution or depth");

    GeodesicChart ch;
    ch.edge = edge;
    ch.n_s = n_s;
    ch.n_t = n_t;
    ch.depth = depth;
    const double period = imm.hi(b) - imm.lo(b);
    const double edge_value = edge.high ? imm.hi(a) : imm.lo(a);
    const double inward_sign = edge.high ? -1.0 : 1.0;
    const double h = depth / n_t;
    const std::size_t total = static_cast<std::size_t>(n_s) * (n_t + 1);

    ch.sigma.resize(n_s);
    ch.speed.resize(n_s);
    ch.t.resize(n_t + 1);
    for (int k = 0; k <= n_t; ++k) ch.t[k] = k * h;
    ch.chart_point.resize(total);
    ch.B.resize(total);
    ch.B_t.resize(total);
    ch.offdiag.resize(total);
    ch.inward.resize(n_s);
    ch.along.resize(n_s);
    ch.along_rate.resize(n_s);
    ch.geodesic_curvature.resize(n_s);

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_s; ++i) {
        try {
            std::array<double, 2> x0{};
            x0[a] = edge_value;
            x0[b] = imm.lo(b) + period * i / n_s;
            const FrameJets fj = frame_jets(imm, x0, 2);
            // Inward unit normal to the boundary: +- g^{-1} e_a / sqrt(g^aa), as jets
            // so that its derivative along the boundary seeds the Jacobi field.
            const Jet norm = sqrt(fj.metric_inv[a][a]);
            std::array<double, 8> y{};
            y[0] = x0[0];
            y[1] = x0[1];
            for (int k = 0; k < 2; ++k) {
                const Jet v0 = inward_sign * fj.metric_inv[k][a] / norm;
                y[2 + k] = v0.value();
                y[6 + k] = v0.d(b);
            }
            y[4 + b] = 1.0;
            const double lambda = std::sqrt(fj.metric[b][b].value());

            ch.sigma[i] = x0[b];
            ch.speed[i] = lambda;
            ch.inward[i] = {y[2], y[3]};
            ch.along[i] = {y[4] / lambda, y[5] / lambda};
            ch.along_rate[i] = {y[6] / lambda, y[7] / lambda};

            auto rhs = [&imm](double, std::span<const double> s, std::span<double> ds) { geodesic_rhs(imm, s, ds); };
            for (int k = 0; k <= n_t; ++k) {
                if (k > 0) {
                    rk4_step(rhs, (k - 1) * h, h, y);
                    if (y[a] < imm.lo(a) - 1e-12 || y[a] > imm.hi(a) + 1e-12)
                        throw PreconditionError("geodesic chart: geodesic leaves the chart domain at t = " +
                                                std::to_string(k * h));
                }
                const Sample smp = measure(imm, y, lambda);
                if (!(smp.B > 1e-8))
                    throw DegenerateError("geodesic chart: caustic (B -> 0) at t = " + std::to_string(k * h));
                const std::size_t idx = ch.index(i, k);
                ch.chart_point[idx] = {y[0], y[1]};
                ch.B[idx] = smp.B;
                ch.B_t[idx] = smp.B_t;
                ch.offdiag[idx] = smp.offdiag;
            }
            ch.geodesic_curvature[i] = ch.B_t[ch.index(i, 0)];
        } catch (...) {
#pragma omp critical(rigidlab_geodesic_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    ch.arclength = periodic_cumulative(ch.speed, period);
    double sum = 0.0;
    for (double s : ch.speed) sum += s;
    ch.length = sum * period / n_s;
    return ch;
}

}  // namespace rigidlab
