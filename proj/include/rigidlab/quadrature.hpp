#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rigidlab {

/// Nodes and weights of a quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `nodes` points on [-1, 1].
const QuadratureRule& gauss_legendre_rule(int nodes);

/// Composite Gauss-Legendre rule: [a, b] split into `cells` equal cells with
/// `nodes` points each.
QuadratureRule composite_gauss(double a, double b, int cells, int nodes);

/// Uniform periodic rule: `n` points lo + k*(hi-lo)/n with equal weights.
QuadratureRule periodic_rule(double lo, double hi, int n);

/// Trapezoid rule for uniform samples of a periodic function over one period.
double periodic_trapezoid(std::span<const double> samples, double period);

/// Composite Gauss-Legendre quadrature of `f` over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int cells,
                      int nodes = 16);

/// Running integrals: element i is the integral of `f` from `start` to
/// `points[i]`. `points` must be non-decreasing and >= start; each gap is
/// integrated with Gauss-Legendre cells no wider than `max_cell`.
std::vector<double> cumulative_integral(const std::function<double(double)>& f, double start,
                                        std::span<const double> points, double max_cell = 0.1,
                                        int nodes = 16);

/// Running integrals at the nodes of composite_gauss(a, b, cells, nodes),
/// given the integrand sampled there: each cell integrates its degree
/// nodes-1 interpolant, so no further evaluations are needed.
std::vector<double> composite_gauss_cumulative(std::span<const double> values, double a, double b, int cells,
                                               int nodes);

/// Running integral of a uniformly sampled periodic function, computed from
/// its trigonometric interpolant: element i is the integral from 0 to i*h.
std::vector<double> periodic_cumulative(std::span<const double> samples, double period);

/// Classical fourth-order Runge-Kutta step for y' = f(t, y).
void rk4_step(const std::function<void(double, std::span<const double>, std::span<double>)>& f,
              double t, double h, std::span<double> y);

}  // namespace rigidlab
