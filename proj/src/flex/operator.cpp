#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <numbers>

#include "rigidlab/errors.hpp"
#include "rigidlab/flex.hpp"
#include "rigidlab/linalg.hpp"

namespace rigidlab {

int FlexGrid::node(int i0, int i1) const {
    const int idx[2] = {i0, i1};
    return idx[outer] * size[inner()] + idx[inner()];
}

double FlexGrid::coord(int axis, int k) const {
    return periodic[axis] ? lo[axis] + k * step[axis] : lo[axis] + (k + 0.5) * step[axis];
}

namespace {

Eigen::Vector3d point3(const Immersion& imm, double x0, double x1) {
    const double x[2] = {x0, x1};
    const Eigen::VectorXd p = imm.point(x);
    return {p(0), p(1), p(2)};
}

// Decides whether the end `high` of non-periodic axis a closes by reflection.
bool detect_reflection(const Immersion& imm, const FlexGrid& g, int a, bool high) {
    const int p = 1 - a;
    if (!g.periodic[p]) return false;
    const double edge = high ? imm.hi(a) : imm.lo(a);
    const double period = imm.hi(p) - imm.lo(p);
    constexpr int kSamples = 8;
    for (int s = 0; s < kSamples; ++s) {
        double x[2];
        x[p] = imm.lo(p) + period * (s + 0.3) / kSamples;
        x[a] = edge;
        const auto r = imm.position(std::span<const double>(x, 2), 1);
        double rp = 0.0, ra = 0.0;
        for (const auto& c : r) {
            rp += c.d(p) * c.d(p);
            ra += c.d(a) * c.d(a);
        }
        if (std::sqrt(rp) > 1e-10 * std::max(1.0, std::sqrt(ra))) return false;
    }
    if (g.size[p] % 2 != 0)
        throw PreconditionError("flex grid: the periodic axis needs an even node count to close a degenerate edge");
    const double delta = 0.5 * g.step[a];
    const double sgn = high ? 1.0 : -1.0;
    for (int s = 0; s < kSamples; ++s) {
        const double xp = imm.lo(p) + period * (s + 0.3) / kSamples;
        double out[2], in[2];
        out[p] = xp;
        out[a] = edge + sgn * delta;
        in[p] = xp + 0.5 * period;
        in[a] = edge - sgn * delta;
        const Eigen::Vector3d ro = point3(imm, out[0], out[1]);
        const Eigen::Vector3d ri = point3(imm, in[0], in[1]);
        if ((ro - ri).norm() > 1e-9 * std::max(1.0, ri.norm()))
            throw PreconditionError("flex grid: degenerate edge on axis " + std::to_string(a) +
                                    " is not a reflection point of the chart");
    }
    return true;
}

struct Tap {
    int node;
    double coef;
};

// Resolves (axis, index offsets, coefficients) at node (i0, i1) to actual nodes.
void add_taps(const FlexGrid& g, int axis, const int i[2], std::initializer_list<std::pair<int, double>> st,
              double scale, std::vector<Tap>& out) {
    const int n = g.size[axis];
    const int other = 1 - axis;
    for (const auto& [off, c] : st) {
        int idx[2] = {i[0], i[1]};
        int m = i[axis] + off;
        bool flip = false;
        if (g.periodic[axis]) {
            m = ((m % n) + n) % n;
        } else if (m < 0) {
            m = -1 - m;
            flip = true;
        } else if (m >= n) {
            m = 2 * n - 1 - m;
            flip = true;
        }
        idx[axis] = m;
        if (flip) idx[other] = (idx[other] + g.size[other] / 2) % g.size[other];
        out.push_back({g.node(idx[0], idx[1]), c * scale});
    }
}

std::vector<Tap> c4_taps(const FlexGrid& g, int axis, const int i[2]) {
    const int n = g.size[axis], k = i[axis];
    const double s = 1.0 / (12.0 * g.step[axis]);
    std::vector<Tap> t;
    const bool lo_ok = g.periodic[axis] || k >= 2 || g.reflect_lo[axis];
    const bool hi_ok = g.periodic[axis] || k <= n - 3 || g.reflect_hi[axis];
    if (lo_ok && hi_ok)
        add_taps(g, axis, i, {{-2, 1.0}, {-1, -8.0}, {1, 8.0}, {2, -1.0}}, s, t);
    else if (!lo_ok && k == 0)
        add_taps(g, axis, i, {{0, -25.0}, {1, 48.0}, {2, -36.0}, {3, 16.0}, {4, -3.0}}, s, t);
    else if (!lo_ok)
        add_taps(g, axis, i, {{-1, -3.0}, {0, -10.0}, {1, 18.0}, {2, -6.0}, {3, 1.0}}, s, t);
    else if (k == n - 1)
        add_taps(g, axis, i, {{0, 25.0}, {-1, -48.0}, {-2, 36.0}, {-3, -16.0}, {-4, 3.0}}, s, t);
    else
        add_taps(g, axis, i, {{1, 3.0}, {0, 10.0}, {-1, -18.0}, {-2, 6.0}, {-3, -1.0}}, s, t);
    return t;
}

std::vector<Tap> fw_taps(const FlexGrid& g, int axis, const int i[2]) {
    const double s = 1.0 / g.step[axis];
    std::vector<Tap> t;
    if (g.periodic[axis] || i[axis] < g.size[axis] - 1 || g.reflect_hi[axis])
        add_taps(g, axis, i, {{0, -1.0}, {1, 1.0}}, s, t);
    else
        add_taps(g, axis, i, {{-1, -1.0}, {0, 1.0}}, s, t);
    return t;
}

Eigen::Vector3d apply(const std::vector<Tap>& taps, const std::vector<Eigen::Vector3d>& pos) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (const auto& t : taps) v += t.coef * pos[t.node];
    return v;
}

using Triplet = Eigen::Triplet<double>;

// Three rows of  dr . dtau  = 0 for one stencil family.
void family_rows(int row0, const std::vector<Tap>& ds, const std::vector<Tap>& dt, const Eigen::Vector3d& rs,
                 const Eigen::Vector3d& rt, std::vector<Triplet>& out) {
    for (const auto& t : ds)
        for (int c = 0; c < 3; ++c) {
            out.emplace_back(row0, 3 * t.node + c, 2.0 * rs(c) * t.coef);
            out.emplace_back(row0 + 1, 3 * t.node + c, rt(c) * t.coef);
        }
    for (const auto& t : dt)
        for (int c = 0; c < 3; ++c) {
            out.emplace_back(row0 + 1, 3 * t.node + c, rs(c) * t.coef);
            out.emplace_back(row0 + 2, 3 * t.node + c, 2.0 * rt(c) * t.coef);
        }
}

std::vector<Triplet> node_rows(const FlexGrid& g, const std::vector<Eigen::Vector3d>& pos, int i0, int i1) {
    const int i[2] = {i0, i1};
    const int row0 = 6 * g.node(i0, i1);
    std::vector<Triplet> out;
    const auto cs = c4_taps(g, 0, i), ct = c4_taps(g, 1, i);
    family_rows(row0, cs, ct, apply(cs, pos), apply(ct, pos), out);
    const auto fs = fw_taps(g, 0, i), ft = fw_taps(g, 1, i);
    family_rows(row0 + 3, fs, ft, apply(fs, pos), apply(ft, pos), out);
    return out;
}

FlexOperator prepare(const Immersion& imm, int n0, int n1) {
    FlexOperator op;
    op.grid = make_flex_grid(imm, n0, n1);
    const FlexGrid& g = op.grid;
    op.positions.resize(g.nodes());
    for (int a = 0; a < g.size[0]; ++a)
        for (int b = 0; b < g.size[1]; ++b) op.positions[g.node(a, b)] = point3(imm, g.coord(0, a), g.coord(1, b));
    op.matrix.resize(6 * g.nodes(), 3 * g.nodes());
    return op;
}

}  // namespace

FlexGrid make_flex_grid(const Immersion& imm, int n0, int n1) {
    if (imm.dim() != 2) throw PreconditionError("flex operator: surfaces (n = 2) only");
    if (n0 < 5 || n1 < 5) throw std::invalid_argument("flex operator: need at least 5 nodes per axis");
    FlexGrid g;
    g.size[0] = n0;
    g.size[1] = n1;
    for (int a = 0; a < 2; ++a) {
        g.lo[a] = imm.lo(a);
        g.periodic[a] = imm.periodic(a);
        g.step[a] = (imm.hi(a) - imm.lo(a)) / g.size[a];
    }
    for (int a = 0; a < 2; ++a) {
        if (g.periodic[a]) continue;
        g.reflect_lo[a] = detect_reflection(imm, g, a, false);
        g.reflect_hi[a] = detect_reflection(imm, g, a, true);
    }
    g.outer = (g.periodic[1] && !g.periodic[0]) ? 1 : 0;
    return g;
}

FlexOperator assemble_flex_operator(const Immersion& imm, int n0, int n1) {
    FlexOperator op = prepare(imm, n0, n1);
    const FlexGrid& g = op.grid;
    std::vector<std::vector<Triplet>> per(g.nodes());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nodes(); ++k) {
        const int a = k / n1, b = k % n1;
        per[g.node(a, b)] = node_rows(g, op.positions, a, b);
    }
    std::vector<Triplet> all;
    for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
    op.matrix.setFromTriplets(all.begin(), all.end());
    return op;
}

FlexOperator assemble_flex_operator_serial(const Immersion& imm, int n0, int n1) {
    FlexOperator op = prepare(imm, n0, n1);
    const FlexGrid& g = op.grid;
    std::vector<Triplet> all;
    for (int node = 0; node < g.nodes(); ++node) {
        const int io = node / g.size[g.inner()], ii = node % g.size[g.inner()];
        const int a = g.outer == 0 ? io : ii, b = g.outer == 0 ? ii : io;
        const auto rows = node_rows(g, op.positions, a, b);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    op.matrix.setFromTriplets(all.begin(), all.end());
    return op;
}

Eigen::VectorXd sample_field(const FlexOperator& op, const DeformationField& tau, const Immersion& imm) {
    const FlexGrid& g = op.grid;
    Eigen::VectorXd out(3 * g.nodes());
    for (int a = 0; a < g.size[0]; ++a)
        for (int b = 0; b < g.size[1]; ++b) {
            const double x[2] = {g.coord(0, a), g.coord(1, b)};
            out.segment<3>(3 * g.node(a, b)) = tau.value(imm, x);
        }
    return out;
}

namespace {

KernelResult classify(std::vector<double> sv, int unknowns, double rel_tol, std::string method) {
    KernelResult k;
    std::sort(sv.begin(), sv.end(), std::greater<>());
    k.unknowns = unknowns;
    k.rel_tol = rel_tol;
    k.method = std::move(method);
    while (static_cast<int>(sv.size()) < unknowns) sv.push_back(0.0);
    k.sigma_max = sv.empty() ? 0.0 : sv.front();
    const double cut = rel_tol * k.sigma_max;
    k.largest_accepted = 0.0;
    k.smallest_rejected = std::numeric_limits<double>::infinity();
    for (double s : sv) {
        if (s <= cut) {
            ++k.dim;
            k.largest_accepted = std::max(k.largest_accepted, s);
        } else {
            k.smallest_rejected = std::min(k.smallest_rejected, s);
        }
    }
    if (k.dim == unknowns) k.smallest_rejected = 0.0;
    k.gap_ratio = k.largest_accepted > 0.0 ? k.smallest_rejected / k.largest_accepted
                                           : std::numeric_limits<double>::infinity();
    if (k.dim == unknowns) k.gap_ratio = 0.0;
    if (k.gap_ratio < kGapRatio)
        k.verdict = "indeterminate";
    else if (k.dim == k.expected)
        k.verdict = "rigid";
    else if (k.dim > k.expected)
        k.verdict = "flexible";
    else
        k.verdict = "indeterminate";
    k.singular_values = std::move(sv);
    return k;
}

Eigen::Matrix3d rot_z(double angle) {
    return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

Eigen::Matrix3d kabsch(const std::vector<Eigen::Vector3d>& x, const std::vector<Eigen::Vector3d>& y) {
    Eigen::Vector3d cx = Eigen::Vector3d::Zero(), cy = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        cx += x[i];
        cy += y[i];
    }
    cx /= static_cast<double>(x.size());
    cy /= static_cast<double>(y.size());
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) h += (x[i] - cx) * (y[i] - cy).transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> s(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    d(2, 2) = (s.matrixV() * s.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
    return s.matrixV() * d * s.matrixU().transpose();
}

// Rotation R with slice(k+1) = R slice(k) + t for every k (cyclically), if any.
bool find_slice_symmetry(const FlexOperator& op, Eigen::Matrix3d& rot) {
    const FlexGrid& g = op.grid;
    if (!g.periodic[g.outer]) return false;
    const int np = g.size[g.outer], ni = g.size[g.inner()];
    auto slice = [&](int k) {
        return std::vector<Eigen::Vector3d>(op.positions.begin() + k * ni, op.positions.begin() + (k + 1) * ni);
    };
    double scale = 1.0;
    for (const auto& p : op.positions) scale = std::max(scale, p.norm());
    const auto s0 = slice(0), s1 = slice(1);
    const double angle = 2.0 * std::numbers::pi / np;
    for (const Eigen::Matrix3d& r : {kabsch(s0, s1), rot_z(angle), rot_z(-angle)}) {
        Eigen::Vector3d c0 = Eigen::Vector3d::Zero(), c1 = Eigen::Vector3d::Zero();
        for (int i = 0; i < ni; ++i) {
            c0 += s0[i];
            c1 += s1[i];
        }
        const Eigen::Vector3d t = (c1 - r * c0) / ni;
        bool ok = true;
        for (int k = 0; k < np && ok; ++k) {
            const int k1 = (k + 1) % np;
            for (int i = 0; i < ni && ok; ++i)
                ok = (op.positions[k1 * ni + i] - (r * op.positions[k * ni + i] + t)).norm() <= 1e-12 * scale;
        }
        Eigen::Matrix3d rn = Eigen::Matrix3d::Identity();
        for (int k = 0; k < np; ++k) rn = r * rn;
        if (ok && (rn - Eigen::Matrix3d::Identity()).norm() <= 1e-10) {
            rot = r;
            return true;
        }
    }
    return false;
}

std::vector<double> complex_singular_values(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd sq = m;
    if (m.rows() > m.cols()) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
        sq = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> s(sq);
    const Eigen::VectorXd v = s.singularValues();
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

KernelResult kernel_dimension_dense(const FlexOperator& op, double rel_tol) {
    const int unknowns = static_cast<int>(op.matrix.cols());
    if (unknowns > kDenseUnknownLimit)
        throw PreconditionError("flex kernel: " + std::to_string(unknowns) +
                                " unknowns exceed the dense limit of " + std::to_string(kDenseUnknownLimit));
    const Eigen::VectorXd v = singular_values(Eigen::MatrixXd(op.matrix));
    return classify(std::vector<double>(v.data(), v.data() + v.size()), unknowns, rel_tol, "dense");
}

KernelResult kernel_dimension(const FlexOperator& op, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("flex kernel: tolerance must be positive");
    Eigen::Matrix3d rot;
    if (!find_slice_symmetry(op, rot)) return kernel_dimension_dense(op, rel_tol);
    const FlexGrid& g = op.grid;
    const int np = g.size[g.outer], ni = g.size[g.inner()];
    const int rows = 6 * ni, cols = 3 * ni;
    // C_k = A[slice 0 rows, slice k cols] blockdiag(R^k).
    std::vector<Eigen::MatrixXd> c(np, Eigen::MatrixXd::Zero(rows, cols));
    for (int r = 0; r < rows; ++r)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(op.matrix, r); it; ++it)
            c[it.col() / cols](r, it.col() % cols) += it.value();
    Eigen::Matrix3d rk = Eigen::Matrix3d::Identity();
    for (int k = 0; k < np; ++k) {
        for (int i = 0; i < ni; ++i) c[k].middleCols<3>(3 * i) = (c[k].middleCols<3>(3 * i) * rk).eval();
        rk = rot * rk;
    }
    std::vector<std::vector<double>> per(np);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int m = 0; m < np; ++m) {
        try {
            Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(rows, cols);
            for (int k = 0; k < np; ++k) {
                const double ang = 2.0 * std::numbers::pi * ((static_cast<long>(m) * k) % np) / np;
                b += std::complex<double>(std::cos(ang), std::sin(ang)) * c[k].cast<std::complex<double>>();
            }
            per[m] = complex_singular_values(b);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    std::vector<double> all;
    for (const auto& v : per) all.insert(all.end(), v.begin(), v.end());
    return classify(std::move(all), static_cast<int>(op.matrix.cols()), rel_tol, "rotation-blocks");
}

}  // namespace rigidlab
