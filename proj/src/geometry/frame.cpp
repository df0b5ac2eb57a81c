#include <algorithm>
#include <cmath>

#include "rigidlab/errors.hpp"
#include "rigidlab/geometry.hpp"

namespace rigidlab {

FrameJets frame_jets(const Immersion& imm, std::span<const double> x, int order) {
    if (order < 1 || order > kMaxOrder) throw std::invalid_argument("frame_jets: order must be 1..3");
    const int n = imm.dim();
    const int m = n + 1;
    FrameJets f;
    f.dim = n;
    f.order = order;
    f.r = imm.position(x, order);

    f.tangents = make_mat<Jet>(n, m);
    double max_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double sq = 0.0;
        for (int a = 0; a < m; ++a) {
            f.tangents[i][a] = f.r[a].partial(i);
            sq += f.tangents[i][a].value() * f.tangents[i][a].value();
        }
        max_norm = std::max(max_norm, std::sqrt(sq));
    }

    f.metric = make_mat<Jet>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            f.metric[i][j] = dot(f.tangents[i], f.tangents[j]);
            f.metric[j][i] = f.metric[i][j];
        }
    f.det_metric = det(f.metric);
    const double threshold = 1e-12 * std::pow(max_norm, 2 * n);
    if (!(f.det_metric.value() > threshold) || max_norm == 0.0)
        throw DegenerateError("degenerate tangents: Gram determinant below threshold");
    f.metric_inv = inverse(f.metric);

    Vec<Jet> cross = generalized_cross(f.tangents);
    const Jet len = sqrt(dot(cross, cross));
    f.chart_normal.resize(m);
    f.normal.resize(m);
    const double sign = imm.orientation() == Orientation::Outward ? 1.0 : -1.0;
    for (int a = 0; a < m; ++a) {
        f.chart_normal[a] = cross[a] / len;
        f.normal[a] = f.chart_normal[a] * sign;
    }

    if (order >= 2) {
        f.second_derivs.assign(n, make_mat<Jet>(n, m));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < m; ++a)
                    f.second_derivs[i][j][a] = (j >= i) ? f.tangents[i][a].partial(j) : f.second_derivs[j][i][a];
        f.second_form = make_mat<Jet>(n, n);
        Mat<Jet> lowered = make_mat<Jet>(n, n * n);  // r_ij . r_l, indexed [l][i*n+j]
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                f.second_form[i][j] = dot(f.second_derivs[i][j], f.normal);
                f.second_form[j][i] = f.second_form[i][j];
                for (int l = 0; l < n; ++l) {
                    lowered[l][i * n + j] = dot(f.second_derivs[i][j], f.tangents[l]);
                    lowered[l][j * n + i] = lowered[l][i * n + j];
                }
            }
        f.christoffel.assign(n, make_mat<Jet>(n, n));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Jet s{};
                    for (int l = 0; l < n; ++l) s += f.metric_inv[k][l] * lowered[l][i * n + j];
                    f.christoffel[k][i][j] = s;
                    f.christoffel[k][j][i] = s;
                }
    }
    return f;
}

namespace {

Eigen::MatrixXd values(const Mat<Jet>& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].value();
    return out;
}

Eigen::VectorXd values(const Vec<Jet>& v) {
    Eigen::VectorXd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].value();
    return out;
}

}  // namespace

PointFrame to_point_frame(const FrameJets& fj, std::span<const double> x) {
    if (fj.order < 2) throw std::invalid_argument("to_point_frame: need second-order frame jets");
    const int n = fj.dim;
    PointFrame p;
    p.point = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    p.position = values(fj.r);
    p.tangents.resize(n + 1, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a <= n; ++a) p.tangents(a, i) = fj.tangents[i][a].value();
    p.normal = values(fj.normal);
    p.metric = values(fj.metric);
    p.metric_inv = values(fj.metric_inv);
    p.det_metric = fj.det_metric.value();
    p.second_form = values(fj.second_form);
    p.christoffel.reserve(n);
    for (int k = 0; k < n; ++k) p.christoffel.push_back(values(fj.christoffel[k]));
    p.curvature = p.second_form.determinant() / p.det_metric;
    return p;
}

PointFrame frame_at(const Immersion& imm, std::span<const double> x) {
    return to_point_frame(frame_jets(imm, x, 2), x);
}

Eigen::MatrixXd covariant_hessian(const PointFrame& frame, const Jet& f) {
    if (f.order() < 2) throw std::invalid_argument("covariant_hessian: need a second-order jet");
    const int n = frame.dim();
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = f.d(i, j);
            for (int k = 0; k < n; ++k) s -= frame.christoffel[k](i, j) * f.d(k);
            out(i, j) = s;
        }
    return out;
}

Eigen::MatrixXd covariant_hessian(const Immersion& imm, const Expression& f, std::span<const double> x) {
    const PointFrame frame = frame_at(imm, x);
    return covariant_hessian(frame, f.evaluate(x, 2));
}

std::vector<Eigen::MatrixXd> covariant_derivative(const Mat<Jet>& t, const PointFrame& frame) {
    const int n = frame.dim();
    std::vector<Eigen::MatrixXd> out(n, Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = t[i][j].d(k);
                for (int m = 0; m < n; ++m)
                    s -= frame.christoffel[m](k, i) * t[m][j].value() + frame.christoffel[m](k, j) * t[i][m].value();
                out[k](i, j) = s;
            }
    return out;
}

std::vector<Eigen::MatrixXd> second_form_derivatives(const Immersion& imm, std::span<const double> x) {
    const FrameJets fj = frame_jets(imm, x, 3);
    return covariant_derivative(fj.second_form, to_point_frame(fj, x));
}

double codazzi_residual(const std::vector<Eigen::MatrixXd>& dt) {
    const int n = static_cast<int>(dt.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(dt[k](i, j) - dt[j](i, k)));
    return worst;
}

double brioschi_curvature(const Immersion& imm, std::span<const double> x) {
    if (imm.dim() != 2) throw PreconditionError("brioschi_curvature: chart dimension must be 2");
    const FrameJets fj = frame_jets(imm, x, 3);
    const Jet& e = fj.metric[0][0];
    const Jet& f = fj.metric[0][1];
    const Jet& g = fj.metric[1][1];
    const double E = e.value(), F = f.value(), G = g.value();
    Eigen::Matrix3d a, b;
    a << -0.5 * e.d(1, 1) + f.d(0, 1) - 0.5 * g.d(0, 0), 0.5 * e.d(0), f.d(0) - 0.5 * e.d(1),
        f.d(1) - 0.5 * g.d(0), E, F,
        0.5 * g.d(1), F, G;
    b << 0.0, 0.5 * e.d(1), 0.5 * g.d(0),
        0.5 * e.d(1), E, F,
        0.5 * g.d(0), F, G;
    const double w = E * G - F * F;
    return (a.determinant() - b.determinant()) / (w * w);
}

}  // namespace rigidlab
