#include "rigidlab/jet.hpp"

#include <algorithm>
#include <limits>

namespace rigidlab {

Jet Jet::constant(double c, int dim, int order) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("jet dimension out of range");
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order out of range");
    Jet j;
    j.dim_ = dim;
    j.order_ = order;
    j.v_ = c;
    return j;
}

Jet Jet::variable(int index, double value, int dim, int order) {
    Jet j = constant(value, dim, order);
    if (index < 0 || index >= dim) throw std::invalid_argument("jet variable index out of range");
    if (order >= 1) j.g_[index] = 1.0;
    return j;
}

Jet Jet::partial(int k) const {
    if (order_ < 1) throw std::logic_error("partial derivative of an order-0 jet");
    Jet r;
    r.dim_ = dim_;
    r.order_ = order_ - 1;
    r.v_ = g_[k];
    if (r.order_ >= 1)
        for (int i = 0; i < dim_; ++i) r.g_[i] = d(k, i);
    if (r.order_ >= 2)
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r.set_d(i, j, d(k, i, j));
    return r;
}

Jet Jet::truncated(int order) const {
    Jet r = *this;
    if (order >= order_) return r;
    r.order_ = order;
    if (order < 3) r.t_.fill(0.0);
    if (order < 2) r.h_.fill(0.0);
    if (order < 1) r.g_.fill(0.0);
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    r.v_ = -v_;
    for (auto& x : r.g_) x = -x;
    for (auto& x : r.h_) x = -x;
    for (auto& x : r.t_) x = -x;
    return r;
}

namespace {

void merge_shape(int& dim, int& order, const Jet& o) {
    dim = std::max(dim, o.dim());
    order = std::min(order, o.order());
}

}  // namespace

Jet& Jet::operator+=(const Jet& o) {
    merge_shape(dim_, order_, o);
    v_ += o.v_;
    for (int i = 0; i < kMaxDim; ++i) g_[i] += o.g_[i];
    for (std::size_t i = 0; i < h_.size(); ++i) h_[i] += o.h_[i];
    for (std::size_t i = 0; i < t_.size(); ++i) t_[i] += o.t_[i];
    return *this = truncated(order_);
}

Jet& Jet::operator-=(const Jet& o) {
    merge_shape(dim_, order_, o);
    v_ -= o.v_;
    for (int i = 0; i < kMaxDim; ++i) g_[i] -= o.g_[i];
    for (std::size_t i = 0; i < h_.size(); ++i) h_[i] -= o.h_[i];
    for (std::size_t i = 0; i < t_.size(); ++i) t_[i] -= o.t_[i];
    return *this = truncated(order_);
}

Jet& Jet::operator*=(double c) {
    v_ *= c;
    for (auto& x : g_) x *= c;
    for (auto& x : h_) x *= c;
    for (auto& x : t_) x *= c;
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    const Jet a = *this;
    int dim = a.dim_, order = a.order_;
    merge_shape(dim, order, o);
    Jet r = constant(a.v_ * o.v_, dim, order);
    const int n = dim;
    if (order >= 1)
        for (int i = 0; i < n; ++i) r.g_[i] = a.g_[i] * o.v_ + a.v_ * o.g_[i];
    if (order >= 2)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                r.set_sym(i, j,
                        a.d(i, j) * o.v_ + a.g_[i] * o.g_[j] + a.g_[j] * o.g_[i] +
                            a.v_ * o.d(i, j));
    if (order >= 3)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k)
                    r.set_sym(i, j, k,
                            a.d(i, j, k) * o.v_ + a.d(i, j) * o.g_[k] + a.d(i, k) * o.g_[j] +
                                a.d(j, k) * o.g_[i] + a.g_[i] * o.d(j, k) +
                                a.g_[j] * o.d(i, k) + a.g_[k] * o.d(i, j) +
                                a.v_ * o.d(i, j, k));
    return *this = r;
}

Jet& Jet::operator/=(const Jet& o) { return *this *= reciprocal(o); }

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
    Jet r = constant(f0, dim_, order_);
    const int n = dim_;
    if (order_ >= 1)
        for (int i = 0; i < n; ++i) r.g_[i] = f1 * g_[i];
    if (order_ >= 2)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) r.set_sym(i, j, f2 * g_[i] * g_[j] + f1 * d(i, j));
    if (order_ >= 3)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k)
                    r.set_sym(i, j, k,
                            f3 * g_[i] * g_[j] * g_[k] +
                                f2 * (d(i, j) * g_[k] + d(i, k) * g_[j] + d(j, k) * g_[i]) +
                                f1 * d(i, j, k));
    return r;
}

Jet operator/(double c, const Jet& a) { return reciprocal(a) * c; }

Jet reciprocal(const Jet& x) {
    const double v = x.value();
    if (v == 0.0) throw DomainError("division by zero");
    const double r = 1.0 / v;
    return x.compose(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

Jet sin(const Jet& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return x.compose(s, c, -s, -c);
}

Jet cos(const Jet& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return x.compose(c, -s, -c, s);
}

Jet tan(const Jet& x) {
    if (std::cos(x.value()) == 0.0) throw DomainError("tan evaluated at a pole");
    const double t = std::tan(x.value());
    const double s2 = 1.0 + t * t;
    return x.compose(t, s2, 2.0 * t * s2, 2.0 * s2 * (1.0 + 3.0 * t * t));
}

Jet exp(const Jet& x) {
    const double e = std::exp(x.value());
    return x.compose(e, e, e, e);
}

Jet log(const Jet& x) {
    const double v = x.value();
    if (!(v > 0.0)) throw DomainError("log of a non-positive number");
    const double r = 1.0 / v;
    return x.compose(std::log(v), r, -r * r, 2.0 * r * r * r);
}

Jet sqrt(const Jet& x) {
    const double v = x.value();
    if (v < 0.0 || (v == 0.0 && x.order() > 0)) throw DomainError("sqrt outside its domain");
    const double s = std::sqrt(v);
    if (x.order() == 0) return x.compose(s, 0.0, 0.0, 0.0);
    const double r = 1.0 / v;
    return x.compose(s, 0.5 * s * r, -0.25 * s * r * r, 0.375 * s * r * r * r);
}

Jet ipow(const Jet& x, int n) {
    const double v = x.value();
    if (n < 0 && v == 0.0) throw DomainError("negative power of zero");
    // f^(k)(v) = n (n-1) ... (n-k+1) v^(n-k); vanishing falling factorials
    // stay exactly zero so integer powers of zero are well defined.
    std::array<double, 4> f{};
    double falling = 1.0;
    for (int k = 0; k <= 3; ++k) {
        if (k > 0) falling *= static_cast<double>(n - k + 1);
        f[k] = falling == 0.0 ? 0.0 : falling * std::pow(v, n - k);
        if (!std::isfinite(f[k]) && k <= x.order()) throw DomainError("power outside its domain");
        if (k > x.order()) f[k] = 0.0;
    }
    return x.compose(f[0], f[1], f[2], f[3]);
}

}  // namespace rigidlab
