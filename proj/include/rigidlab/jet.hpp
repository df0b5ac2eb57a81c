#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rigidlab/errors.hpp"

namespace rigidlab {

/// Largest chart dimension supported by the jet arithmetic.
inline constexpr int kMaxDim = 4;

/// Largest derivative order carried by a jet.
inline constexpr int kMaxOrder = 3;

/// Truncated multivariate Taylor expansion of a scalar function.
///
/// Stores the value together with the full (symmetric) gradient, Hessian and
/// third-derivative tensors with respect to the chart variables, up to
/// `order()`. Arithmetic propagates derivatives exactly (Leibniz rule for
/// products, Faa di Bruno for composition), so every derivative is correct to
/// rounding. Entries above `order()` are kept at zero and must not be read.
class Jet {
public:
    /// Neutral zero: compatible with jets of any dimension and order.
    Jet() = default;

    static Jet constant(double c, int dim, int order);
    static Jet variable(int index, double value, int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }

    double value() const { return v_; }
    double d(int i) const { return g_[i]; }
    double d(int i, int j) const { return h_[i * kMaxDim + j]; }
    double d(int i, int j, int k) const { return t_[(i * kMaxDim + j) * kMaxDim + k]; }

    /// Partial derivative with respect to chart variable `k`, as a jet of one
    /// order lower.
    Jet partial(int k) const;

    /// Same expansion truncated to a lower order.
    Jet truncated(int order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double c) { v_ += c; return *this; }
    Jet& operator-=(double c) { v_ -= c; return *this; }
    Jet& operator*=(double c);
    Jet& operator/=(double c) { return *this *= 1.0 / c; }

    /// Composes a univariate function with this jet, given the function value
    /// and its first three derivatives at `value()`.
    Jet compose(double f0, double f1, double f2, double f3) const;

private:
    void set_d(int i, int j, double x) { h_[i * kMaxDim + j] = x; }
    void set_d(int i, int j, int k, double x) { t_[(i * kMaxDim + j) * kMaxDim + k] = x; }
    // Writes every index permutation, so symmetry holds bit-for-bit.
    void set_sym(int i, int j, double x) {
        set_d(i, j, x);
        set_d(j, i, x);
    }
    void set_sym(int i, int j, int k, double x) {
        set_d(i, j, k, x);
        set_d(i, k, j, x);
        set_d(j, i, k, x);
        set_d(j, k, i, x);
        set_d(k, i, j, x);
        set_d(k, j, i, x);
    }

    int dim_ = 0;
    int order_ = kMaxOrder;
    double v_ = 0.0;
    std::array<double, kMaxDim> g_{};
    std::array<double, kMaxDim * kMaxDim> h_{};
    std::array<double, kMaxDim * kMaxDim * kMaxDim> t_{};
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double c) { return a += c; }
inline Jet operator+(double c, Jet a) { return a += c; }
inline Jet operator-(Jet a, double c) { return a -= c; }
inline Jet operator-(double c, const Jet& a) { return (-a) += c; }
inline Jet operator*(Jet a, double c) { return a *= c; }
inline Jet operator*(double c, Jet a) { return a *= c; }
inline Jet operator/(Jet a, double c) { return a /= c; }
Jet operator/(double c, const Jet& a);

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet reciprocal(const Jet& x);
Jet ipow(const Jet& x, int n);

/// Scalar fallbacks so templated geometry code can run on plain doubles.
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace rigidlab
