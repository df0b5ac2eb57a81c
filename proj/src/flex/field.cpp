#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rigidlab/darboux.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/flex.hpp"

namespace rigidlab {

DeformationField DeformationField::trivial(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.rows() != A.cols() || b.size() != A.rows()) throw std::invalid_argument("trivial motion: shape mismatch");
    if (A != -A.transpose()) throw std::invalid_argument("trivial motion: A must be exactly skew");
    DeformationField f;
    f.kind_ = Kind::Trivial;
    f.A_ = A;
    f.b_ = b;
    return f;
}

DeformationField DeformationField::expressions(std::vector<Expression> components) {
    if (components.empty()) throw std::invalid_argument("deformation field: no components");
    DeformationField f;
    f.kind_ = Kind::Expressions;
    f.components_ = std::move(components);
    return f;
}

DeformationField DeformationField::from_json(const nlohmann::json& j, int chart_dim) {
    if (j.contains("trivial")) {
        const auto& t = j.at("trivial");
        const auto rows = t.at("A").get<std::vector<std::vector<double>>>();
        const auto b = t.at("b").get<std::vector<double>>();
        Eigen::MatrixXd A(rows.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("trivial motion: A must be square");
            for (std::size_t k = 0; k < rows.size(); ++k) A(i, k) = rows[i][k];
        }
        return trivial(A, Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())));
    }
    std::vector<Expression> comps;
    for (const auto& c : j.at("components")) comps.push_back(Expression::parse(c.get<std::string>(), chart_dim));
    return expressions(std::move(comps));
}

Vec<Jet> DeformationField::evaluate(const Vec<Jet>& r, std::span<const double> x) const {
    const std::size_t m = r.size();
    Vec<Jet> out(m);
    if (kind_ == Kind::Trivial) {
        if (static_cast<std::size_t>(A_.rows()) != m) throw std::invalid_argument("trivial motion: ambient dimension");
        for (std::size_t a = 0; a < m; ++a) {
            Jet s = r[0] * 0.0 + b_(a);
            for (std::size_t c = 0; c < m; ++c)
                if (A_(a, c) != 0.0) s += A_(a, c) * r[c];
            out[a] = s;
        }
        return out;
    }
    if (components_.size() != m) throw std::invalid_argument("deformation field: component count");
    const int n = static_cast<int>(x.size());
    std::vector<Jet> vars;
    for (int i = 0; i < n; ++i) vars.push_back(Jet::variable(i, x[i], n, r[0].order()));
    for (std::size_t a = 0; a < m; ++a) out[a] = components_[a].evaluate(vars);
    return out;
}

Eigen::VectorXd DeformationField::value(const Immersion& imm, std::span<const double> x) const {
    const Vec<Jet> t = evaluate(imm.position(x, 0), x);
    Eigen::VectorXd out(t.size());
    for (std::size_t a = 0; a < t.size(); ++a) out(a) = t[a].value();
    return out;
}

Eigen::MatrixXd first_order_residual(const Immersion& imm, const DeformationField& tau, std::span<const double> x) {
    const Vec<Jet> r = imm.position(x, 1);
    const Vec<Jet> t = tau.evaluate(r, x);
    const int n = imm.dim();
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < r.size(); ++a) s += r[a].d(i) * t[a].d(j) + r[a].d(j) * t[a].d(i);
            out(i, j) = s;
        }
    return out;
}

namespace {

Eigen::Vector3d values3(const Vec<Jet>& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

Vec<Jet> partial(const Vec<Jet>& v, int k) {
    Vec<Jet> out;
    for (const auto& c : v) out.push_back(c.partial(k));
    return out;
}

// Rotation vector as jets (order two lower than the position jets):
// Y = (u_2 r_1 - u_1 r_2)/sqrt|g| + w N with the chart normal N.
struct RotationJets {
    Vec<Jet> tau;
    Vec<Jet> tau_d[2];
    Vec<Jet> Y;
    Jet u[2];
    Jet w;
};

RotationJets rotation_jets(const FrameJets& fj, const DeformationField& field, std::span<const double> x) {
    if (fj.dim != 2) throw PreconditionError("rotation data: surfaces (n = 2) only");
    RotationJets rj;
    rj.tau = field.evaluate(fj.r, x);
    for (int i = 0; i < 2; ++i) rj.tau_d[i] = partial(rj.tau, i);
    const Jet root = sqrt(fj.det_metric);
    for (int i = 0; i < 2; ++i) rj.u[i] = dot(fj.chart_normal, rj.tau_d[i]);
    rj.w = (dot(fj.tangents[1], rj.tau_d[0]) - dot(fj.tangents[0], rj.tau_d[1])) / (2.0 * root);
    rj.Y.resize(3);
    for (int a = 0; a < 3; ++a)
        rj.Y[a] = (rj.u[1] * fj.tangents[0][a] - rj.u[0] * fj.tangents[1][a]) / root + rj.w * fj.chart_normal[a];
    return rj;
}

}  // namespace

RotationData rotation_data(const Immersion& imm, const DeformationField& tau, std::span<const double> x) {
    const FrameJets fj = frame_jets(imm, x, 3);
    const RotationJets rj = rotation_jets(fj, tau, x);
    RotationData out;
    out.u = {rj.u[0].value(), rj.u[1].value()};
    out.w = rj.w.value();
    out.Y = values3(rj.Y);
    double scale = 1.0, resid = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Eigen::Vector3d ti = values3(rj.tau_d[i]);
        const Eigen::Vector3d ri = values3(fj.tangents[i]);
        scale = std::max(scale, ti.norm());
        resid = std::max(resid, (ti - out.Y.cross(ri)).cwiseAbs().maxCoeff());
    }
    out.rotation_residual = resid;
    out.scale = scale;
    out.is_flex = resid <= 1e-8 * scale;
    const Eigen::Vector3d n = values3(fj.normal);
    for (int k = 0; k < 2; ++k) {
        const Eigen::Vector3d yk = values3(partial(rj.Y, k));
        out.normal_part(k) = yk.dot(n);
        for (int l = 0; l < 2; ++l) {
            double s = 0.0;
            for (int m = 0; m < 2; ++m) s += fj.metric_inv[l][m].value() * yk.dot(values3(fj.tangents[m]));
            out.a(k, l) = s;
        }
    }
    return out;
}

namespace {

// w_ij = Y_i . (n x r_j) as jets (order = position order - 3).
Mat<Jet> w_jets(const FrameJets& fj, const RotationJets& rj) {
    Mat<Jet> w = make_mat<Jet>(2, 2);
    for (int j = 0; j < 2; ++j) {
        const Vec<Jet> nr = cross3(fj.normal, fj.tangents[j]);
        for (int i = 0; i < 2; ++i) w[i][j] = dot(partial(rj.Y, i), nr);
    }
    return w;
}

}  // namespace

WTensor w_tensor(const Immersion& imm, const DeformationField& tau, std::span<const double> x) {
    const FrameJets fj = frame_jets(imm, x, 3);
    const PointFrame f = to_point_frame(fj, x);
    const RotationJets rj = rotation_jets(fj, tau, x);
    const Mat<Jet> w = w_jets(fj, rj);
    WTensor out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.w(i, j) = w[i][j].value();
    out.dw = covariant_derivative(w, f);
    out.symmetry_residual = std::abs(out.w(0, 1) - out.w(1, 0));
    const Eigen::Matrix2d h = f.second_form;
    const double hs = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (std::abs(h.determinant()) > 1e-10 * hs * hs) {
        out.trace_residual = std::abs(h.inverse().cwiseProduct(out.w).sum());
    } else {
        out.cofactor_form = true;
        out.trace_residual = std::abs(h(0, 0) * out.w(1, 1) + h(1, 1) * out.w(0, 0) - h(0, 1) * (out.w(0, 1) + out.w(1, 0)));
    }
    out.codazzi_residual = codazzi_residual(out.dw);
    return out;
}

PhiRelation phi_relation_residual(const Immersion& imm, const DeformationField& tau, std::span<const double> x) {
    const FrameJets fj = frame_jets(imm, x, 3);
    const PointFrame f = to_point_frame(fj, x);
    const RotationJets rj = rotation_jets(fj, tau, x);
    PhiRelation out;
    out.mu = f.position.dot(f.normal);
    const Eigen::Vector3d Y = values3(rj.Y);
    const Eigen::Vector3d r = f.position;
    out.b = values3(rj.tau) - Y.cross(r);
    if (std::abs(out.mu) < kSupportDegenerate) {
        out.skipped = true;
        return out;
    }
    const Jet phi = dot(fj.r, rj.tau);
    const Jet rho = 0.5 * dot(fj.r, fj.r);
    const Eigen::Vector2d dphi(phi.d(0), phi.d(1)), drho(rho.d(0), rho.d(1));
    const Eigen::Matrix2d ginv = f.metric_inv;
    const double cross_term = dphi.dot(ginv * drho);
    const Eigen::Matrix2d hess = covariant_hessian(f, phi);
    const Mat<Jet> wj = w_jets(fj, rj);
    Eigen::Matrix2d w;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) w(i, j) = wj[i][j].value();
    const Eigen::Matrix2d t1 = -hess / out.mu;
    const Eigen::Matrix2d t2 = f.second_form * (phi.value() - cross_term) / (out.mu * out.mu);
    out.residual = (w - t1 - t2).cwiseAbs().maxCoeff();
    out.scale = std::max({1.0, t1.cwiseAbs().maxCoeff(), t2.cwiseAbs().maxCoeff()});
    const Eigen::Vector3d rebuilt =
        f.tangents * (ginv * dphi) + (phi.value() - cross_term) / out.mu * f.normal;
    out.b_residual = (out.b - rebuilt).cwiseAbs().maxCoeff();
    return out;
}

double closed_one_form_residual(const Immersion& imm, const DeformationField& tau, const DeformationField& E,
                                const std::vector<int>& sizes) {
    if (imm.dim() != 2) throw PreconditionError("closed one-form: surfaces (n = 2) only");
    const auto nodes = grid_nodes(imm.lower(), imm.upper(), imm.periodic_flags(), sizes);
    std::vector<double> pre(nodes.size()), curl(nodes.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto& x = nodes[k];
        const FrameJets fj = frame_jets(imm, x, 3);
        const Vec<Jet> e = E.evaluate(fj.r, x);
        double p = 0.0, scale = 1.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0.0, sc = 0.0;
                for (int a = 0; a < 3; ++a) {
                    s += fj.tangents[i][a].value() * e[a].d(j) + fj.tangents[j][a].value() * e[a].d(i);
                    sc += std::abs(fj.tangents[i][a].value() * e[a].d(j));
                }
                p = std::max(p, std::abs(s));
                scale = std::max(scale, sc);
            }
        pre[k] = p / scale;
        const RotationJets rj = rotation_jets(fj, tau, x);
        const Jet w0 = dot(partial(rj.Y, 0), e);
        const Jet w1 = dot(partial(rj.Y, 1), e);
        curl[k] = std::abs(w1.d(0) - w0.d(1));
    }
    const double worst_pre = *std::max_element(pre.begin(), pre.end());
    if (worst_pre > 1e-10)
        throw PreconditionError("closed one-form: E violates dr . dE = 0 (relative residual " +
                                std::to_string(worst_pre) + ")");
    return *std::max_element(curl.begin(), curl.end());
}

BoundaryAdaptedField boundary_adapted_field(const Eigen::Vector3d& n1, const Eigen::Vector3d& n2, double mu1,
                                            double mu2) {
    const Eigen::Vector3d axis = n1.cross(n2);
    if (!(axis.norm() > 1e-10)) throw PreconditionError("boundary-adapted field: normals are parallel");
    Eigen::Matrix2d m;
    const double c = n1.dot(n2);
    m << 1.0, c, c, 1.0;
    const Eigen::Vector2d sol = m.partialPivLu().solve(Eigen::Vector2d(-mu1, -mu2));
    BoundaryAdaptedField out;
    out.c1 = sol(0);
    out.c2 = sol(1);
    out.axis = axis;
    Eigen::Matrix3d A;
    A << 0, -axis(2), axis(1), axis(2), 0, -axis(0), -axis(1), axis(0), 0;
    out.field = DeformationField::trivial(A, axis.cross(out.c1 * n1 + out.c2 * n2));
    out.description = "E(x) = (n1 x n2) x (x + c1 n1 + c2 n2)";
    return out;
}

}  // namespace rigidlab
