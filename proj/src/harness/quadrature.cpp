#include "rigidlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "rigidlab/linalg.hpp"

namespace rigidlab {

namespace {

QuadratureRule build_gauss(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre_rule(int nodes) {
    if (nodes < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(nodes);
    if (it == cache.end()) it = cache.emplace(nodes, build_gauss(nodes)).first;
    return it->second;
}

QuadratureRule composite_gauss(double a, double b, int cells, int nodes) {
    if (cells < 1) throw std::invalid_argument("composite_gauss: need at least one cell");
    const QuadratureRule& ref = gauss_legendre_rule(nodes);
    QuadratureRule rule;
    const double h = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        const double mid = a + (c + 0.5) * h;
        for (int k = 0; k < nodes; ++k) {
            rule.nodes.push_back(mid + 0.5 * h * ref.nodes[k]);
            rule.weights.push_back(0.5 * h * ref.weights[k]);
        }
    }
    return rule;
}

QuadratureRule periodic_rule(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("periodic_rule: need at least one point");
    QuadratureRule rule;
    const double h = (hi - lo) / n;
    for (int k = 0; k < n; ++k) {
        rule.nodes.push_back(lo + k * h);
        rule.weights.push_back(h);
    }
    return rule;
}

double periodic_trapezoid(std::span<const double> samples, double period) {
    if (samples.empty()) throw std::invalid_argument("periodic_trapezoid: no samples");
    return pairwise_sum(samples.data(), samples.size()) * period / static_cast<double>(samples.size());
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int cells,
                      int nodes) {
    const QuadratureRule rule = composite_gauss(a, b, cells, nodes);
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = rule.weights[i] * f(rule.nodes[i]);
    return pairwise_sum(terms);
}

std::vector<double> cumulative_integral(const std::function<double(double)>& f, double start,
                                        std::span<const double> points, double max_cell, int nodes) {
    std::vector<double> out(points.size());
    double acc = 0.0;
    double from = start;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double to = points[i];
        if (to < from) throw std::invalid_argument("cumulative_integral: points must be sorted");
        if (to > from) {
            const int cells = std::max(1, static_cast<int>(std::ceil((to - from) / max_cell)));
            acc += gauss_legendre(f, from, to, cells, nodes);
        }
        out[i] = acc;
        from = to;
    }
    return out;
}

namespace {

// Q(j, k) = integral over [-1, x_j] of the k-th Lagrange basis polynomial.
Eigen::MatrixXd integration_matrix(int nodes) {
    const QuadratureRule& ref = gauss_legendre_rule(nodes);
    Eigen::MatrixXd q(nodes, nodes);
    for (int j = 0; j < nodes; ++j) {
        const double hi = ref.nodes[j];
        for (int k = 0; k < nodes; ++k) {
            double acc = 0.0;
            for (int m = 0; m < nodes; ++m) {
                const double x = -1.0 + 0.5 * (hi + 1.0) * (ref.nodes[m] + 1.0);
                double l = 1.0;
                for (int p = 0; p < nodes; ++p)
                    if (p != k) l *= (x - ref.nodes[p]) / (ref.nodes[k] - ref.nodes[p]);
                acc += 0.5 * (hi + 1.0) * ref.weights[m] * l;
            }
            q(j, k) = acc;
        }
    }
    return q;
}

}  // namespace

std::vector<double> composite_gauss_cumulative(std::span<const double> values, double a, double b, int cells,
                                               int nodes) {
    if (cells < 1 || nodes < 1) throw std::invalid_argument("composite_gauss_cumulative: bad rule");
    if (values.size() != static_cast<std::size_t>(cells) * nodes)
        throw std::invalid_argument("composite_gauss_cumulative: sample count does not match the rule");
    static std::mutex mu;
    static std::map<int, Eigen::MatrixXd> cache;
    Eigen::MatrixXd q;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(nodes);
        if (it == cache.end()) it = cache.emplace(nodes, integration_matrix(nodes)).first;
        q = it->second;
    }
    const QuadratureRule& ref = gauss_legendre_rule(nodes);
    const double half = 0.5 * (b - a) / cells;
    std::vector<double> out(values.size());
    double acc = 0.0;
    for (int c = 0; c < cells; ++c) {
        const double* f = values.data() + static_cast<std::size_t>(c) * nodes;
        double total = 0.0;
        for (int j = 0; j < nodes; ++j) {
            double s = 0.0;
            for (int k = 0; k < nodes; ++k) s += q(j, k) * f[k];
            out[static_cast<std::size_t>(c) * nodes + j] = acc + half * s;
            total += ref.weights[j] * f[j];
        }
        acc += half * total;
    }
    return out;
}

std::vector<double> periodic_cumulative(std::span<const double> samples, double period) {
    const std::size_t n = samples.size();
    if (n == 0) throw std::invalid_argument("periodic_cumulative: no samples");
    const double mean = pairwise_sum(samples.data(), n) / static_cast<double>(n);
    const double h = period / static_cast<double>(n);
    const double w = 2.0 * std::numbers::pi / period;
    std::vector<double> out(n, 0.0);
    // f(x) = mean + sum_k a_k cos(k w x) + b_k sin(k w x); Nyquist term halved.
    const std::size_t kmax = n / 2;
    std::vector<double> a(kmax + 1, 0.0), b(kmax + 1, 0.0);
    for (std::size_t k = 1; k <= kmax; ++k) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = w * static_cast<double>(k) * h * static_cast<double>(j);
            sa += samples[j] * std::cos(phase);
            sb += samples[j] * std::sin(phase);
        }
        const double scale = (2 * k == n) ? 1.0 / n : 2.0 / n;
        a[k] = sa * scale;
        b[k] = (2 * k == n) ? 0.0 : sb * scale;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double x = h * static_cast<double>(j);
        double s = mean * x;
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double kw = w * static_cast<double>(k);
            s += a[k] * std::sin(kw * x) / kw + b[k] * (1.0 - std::cos(kw * x)) / kw;
        }
        out[j] = s;
    }
    return out;
}

void rk4_step(const std::function<void(double, std::span<const double>, std::span<double>)>& f,
              double t, double h, std::span<double> y) {
    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    f(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    f(t + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace rigidlab
