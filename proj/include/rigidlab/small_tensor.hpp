#pragma once

// Tiny dense helpers over std::vector that work for both double and Jet, so
// the same code yields values or exact derivatives of derived quantities.

#include <stdexcept>
#include <vector>

#include "rigidlab/jet.hpp"

namespace rigidlab {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
Mat<T> make_mat(std::size_t rows, std::size_t cols) {
    return Mat<T>(rows, std::vector<T>(cols, T{}));
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
Vec<T> cross3(const Vec<T>& a, const Vec<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
Mat<T> minor_of(const Mat<T>& m, std::size_t row, std::size_t col) {
    Mat<T> out;
    out.reserve(m.size() - 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row) continue;
        std::vector<T> r;
        r.reserve(m.size() - 1);
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (j != col) r.push_back(m[i][j]);
        out.push_back(std::move(r));
    }
    return out;
}

/// Laplace expansion; intended for n <= 5.
template <class T>
T det(const Mat<T>& m) {
    const std::size_t n = m.size();
    if (n == 0) return T{} + 1.0;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    T s{};
    for (std::size_t j = 0; j < n; ++j) {
        T term = m[0][j] * det(minor_of(m, 0, j));
        if (j % 2) s -= term;
        else s += term;
    }
    return s;
}

/// Inverse through the adjugate.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
    const std::size_t n = m.size();
    const T d = det(m);
    if (value_of(d) == 0.0) throw DomainError("singular matrix");
    Mat<T> out = make_mat<T>(n, n);
    if (n == 1) {
        out[0][0] = (T{} + 1.0) / d;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            T c = det(minor_of(m, j, i)) / d;
            out[i][j] = ((i + j) % 2) ? T{} - c : c;
        }
    return out;
}

/// Vector N with det[t_1, ..., t_n, N] = |N|^2 and |N|^2 = det of the Gram
/// matrix; `tangents[i]` is the i-th column, each of length n+1.
template <class T>
Vec<T> generalized_cross(const Mat<T>& tangents) {
    const std::size_t n = tangents.size();
    const std::size_t m = n + 1;
    for (const auto& t : tangents)
        if (t.size() != m) throw std::invalid_argument("generalized_cross: need n vectors in R^(n+1)");
    Vec<T> out(m);
    for (std::size_t a = 0; a < m; ++a) {
        Mat<T> minor;
        for (std::size_t row = 0; row < m; ++row) {
            if (row == a) continue;
            std::vector<T> r;
            for (std::size_t i = 0; i < n; ++i) r.push_back(tangents[i][row]);
            minor.push_back(std::move(r));
        }
        T d = det(minor);
        out[a] = ((a + n) % 2) ? T{} - d : d;
    }
    return out;
}

}  // namespace rigidlab
