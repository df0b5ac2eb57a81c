#include "rigidlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rigidlab/darboux.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/highdim.hpp"

namespace rigidlab {

namespace {

struct PointResult {
    bool degenerate = false;
    bool support_degenerate = false;
    bool metric_positive = true;
    double frame = 0, sym = 0, codazzi = 0, curvature = 0, norm = 0, position = 0, darboux = 0, shape = 0;
};

PointResult point_identities(const Immersion& imm, std::span<const double> x) {
    PointResult r;
    try {
        const PointFrame f = frame_at(imm, x);
        const int n = f.dim();
        const double tn = std::max(1.0, f.tangents.norm());
        r.metric_positive = f.metric.llt().info() == Eigen::Success;
        r.frame = std::max({(f.metric - f.metric.transpose()).cwiseAbs().maxCoeff() / std::max(1.0, f.metric.norm()),
                            (f.metric * f.metric_inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
                            std::abs(f.normal.norm() - 1.0), (f.tangents.transpose() * f.normal).norm() / tn});
        r.sym = (f.second_form - f.second_form.transpose()).cwiseAbs().maxCoeff() /
                std::max(1.0, f.second_form.cwiseAbs().maxCoeff());
        const auto dt = second_form_derivatives(imm, x);
        double scale = 1.0;
        for (const auto& m : dt) scale = std::max(scale, m.cwiseAbs().maxCoeff());
        r.codazzi = codazzi_residual(dt) / scale;
        const SupportData s = support_at(imm, x);
        r.norm = s.norm_residual / std::max(1.0, 2 * s.rho);
        r.position = s.position_residual / std::max(1.0, std::sqrt(2 * s.rho));
        if (n == 2) {
            r.curvature = std::abs(f.curvature - brioschi_curvature(imm, x)) / std::max(1.0, std::abs(f.curvature));
            const DarbouxTerms d = darboux_terms(imm, x);
            r.darboux = std::abs(d.residual()) / d.scale();
        }
        const ShapeIdentity si = verify_shape_identity(imm, x);
        r.support_degenerate = si.skipped;
        if (!si.skipped) r.shape = si.residual / si.scale;
    } catch (const DegenerateError&) {
        r = PointResult{};
        r.degenerate = true;
    }
    return r;
}

nlohmann::json vec_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
    return a;
}

}  // namespace

Eigen::Matrix3d skew_matrix(const Eigen::Vector3d& a) {
    Eigen::Matrix3d m;
    m << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
    return m;
}

SurfaceIdentities surface_identities(const Immersion& imm, const std::vector<std::vector<double>>& points) {
    std::vector<PointResult> res(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < points.size(); ++k) res[k] = point_identities(imm, points[k]);
    SurfaceIdentities out;
    out.points = static_cast<int>(points.size());
    for (const auto& r : res) {
        if (r.degenerate) {
            ++out.degenerate_points;
            continue;
        }
        out.support_degenerate += r.support_degenerate;
        out.metric_positive = out.metric_positive && r.metric_positive;
        out.frame = std::max(out.frame, r.frame);
        out.second_form_symmetry = std::max(out.second_form_symmetry, r.sym);
        out.codazzi = std::max(out.codazzi, r.codazzi);
        out.curvature = std::max(out.curvature, r.curvature);
        out.support_norm = std::max(out.support_norm, r.norm);
        out.support_position = std::max(out.support_position, r.position);
        out.darboux = std::max(out.darboux, r.darboux);
        out.shape = std::max(out.shape, r.shape);
    }
    return out;
}

TrivialFlexResiduals trivial_flex_residuals(const Immersion& imm, const Eigen::Matrix3d& A, const Eigen::Vector3d& b,
                                            const std::vector<std::vector<double>>& points,
                                            const std::vector<int>& closed_grid) {
    const DeformationField tau = DeformationField::trivial(A, b);
    const Eigen::Vector3d axial(A(2, 1), A(0, 2), A(1, 0));
    std::vector<TrivialFlexResiduals> res(points.size());
    std::vector<char> skipped(points.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& x = points[k];
        auto& r = res[k];
        r.first_order = first_order_residual(imm, tau, x).cwiseAbs().maxCoeff();
        r.rotation_vector = (rotation_data(imm, tau, x).Y - axial).cwiseAbs().maxCoeff();
        r.w = w_tensor(imm, tau, x).w.cwiseAbs().maxCoeff();
        const PhiRelation phi = phi_relation_residual(imm, tau, x);
        if (phi.skipped) skipped[k] = 1;
        else r.phi = phi.residual / phi.scale;
    }
    TrivialFlexResiduals out;
    for (std::size_t k = 0; k < res.size(); ++k) {
        out.first_order = std::max(out.first_order, res[k].first_order);
        out.rotation_vector = std::max(out.rotation_vector, res[k].rotation_vector);
        out.w = std::max(out.w, res[k].w);
        out.phi = std::max(out.phi, res[k].phi);
        out.phi_skipped += skipped[k];
    }
    if (!closed_grid.empty()) {
        const Eigen::Vector3d axes[3] = {Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY()};
        const DeformationField es[3] = {DeformationField::trivial(Eigen::Matrix3d::Zero(), axes[0]),
                                        DeformationField::trivial(skew_matrix(axes[1]), Eigen::Vector3d::Zero()),
                                        DeformationField::trivial(skew_matrix(axes[2]), Eigen::Vector3d::Zero())};
        for (const auto& e : es) out.closedness = std::max(out.closedness, closed_one_form_residual(imm, tau, e, closed_grid));
    }
    return out;
}

std::vector<double> trivial_kernel_residuals(const FlexOperator& op, const Immersion& imm, double sigma_max) {
    std::vector<DeformationField> motions;
    for (int a = 0; a < 3; ++a) {
        motions.push_back(DeformationField::trivial(Eigen::Matrix3d::Zero(), Eigen::Vector3d::Unit(a)));
        motions.push_back(DeformationField::trivial(skew_matrix(Eigen::Vector3d::Unit(a)), Eigen::Vector3d::Zero()));
    }
    std::vector<double> out;
    for (const auto& m : motions) {
        const Eigen::VectorXd v = sample_field(op, m, imm);
        const double denom = sigma_max * v.norm();
        out.push_back(denom > 0 ? (op.matrix * v).norm() / denom : 0.0);
    }
    return out;
}

void add_surface_checks(Report& report, const Immersion& imm, const std::vector<std::vector<double>>& points,
                        int motions, std::mt19937_64& rng) {
    const SurfaceIdentities s = surface_identities(imm, points);
    const double tol = kIdentityTolerance;
    auto meta = [&](CheckEntry& e) {
        e.metadata["points"] = s.points - s.degenerate_points;
        e.metadata["surface"] = imm.name();
    };
    meta(report.condition("metric positive definite", "geometry", "first fundamental form is a Riemannian metric",
                          s.metric_positive, 0.0, 0.0));
    meta(report.residual("frame invariants", "geometry", "metric symmetric, g g^-1 = I, unit normal orthogonal to tangents",
                         s.frame, tol));
    meta(report.residual("second form symmetry", "geometry", "h_ij = h_ji", s.second_form_symmetry, tol));
    meta(report.residual("codazzi of h", "geometry", "h_ij,k = h_ik,j", s.codazzi, tol));
    if (imm.dim() == 2)
        meta(report.residual("extrinsic vs intrinsic curvature", "geometry", "det h / det g equals the Brioschi curvature",
                             s.curvature, 1e-6));
    meta(report.residual("support norm identity", "darboux", "mu^2 = 2 rho - |grad rho|^2", s.support_norm, tol));
    meta(report.residual("support position identity", "darboux", "r = g^ij rho_i r_j + mu n", s.support_position, tol));
    if (imm.dim() == 2)
        meta(report.residual("darboux equation", "darboux", "det(rho_ij - g_ij) = K |g| mu^2", s.darboux, tol));
    else
        report.skip("darboux equation", "darboux", "det(rho_ij - g_ij) = K |g| mu^2", CheckKind::Identity,
                    "stated for surfaces only");
    if (s.support_degenerate == s.points - s.degenerate_points)
        report.skip("shape identity", "darboux", "h_ij mu = rho_ij - g_ij", CheckKind::Identity,
                    "support-degenerate at every point (|mu| < 1e-8)");
    else {
        CheckEntry& e = report.residual("shape identity", "darboux", "h_ij mu = rho_ij - g_ij", s.shape, tol);
        meta(e);
        e.metadata["support_degenerate_points"] = s.support_degenerate;
    }
    if (s.degenerate_points > 0)
        report.data()["degenerate_points"] = s.degenerate_points;

    if (imm.dim() != 2 || imm.ambient_dim() != 3 || motions <= 0) return;
    std::normal_distribution<double> nd;
    TrivialFlexResiduals worst;
    // A handful of points per motion keeps the cost independent of the grid size.
    const std::size_t stride = std::max<std::size_t>(1, points.size() / 16);
    std::vector<std::vector<double>> sub;
    for (std::size_t k = 0; k < points.size(); k += stride) sub.push_back(points[k]);
    for (int m = 0; m < motions; ++m) {
        const Eigen::Vector3d a(nd(rng), nd(rng), nd(rng)), b(nd(rng), nd(rng), nd(rng));
        TrivialFlexResiduals r;
        try {
            r = trivial_flex_residuals(imm, skew_matrix(a), b, sub, {16, 16});
        } catch (const DegenerateError&) {
            r = trivial_flex_residuals(imm, skew_matrix(a), b, sub, {});
        }
        worst.first_order = std::max(worst.first_order, r.first_order);
        worst.rotation_vector = std::max(worst.rotation_vector, r.rotation_vector);
        worst.w = std::max(worst.w, r.w);
        worst.phi = std::max(worst.phi, r.phi);
        worst.closedness = std::max(worst.closedness, r.closedness);
        worst.phi_skipped += r.phi_skipped;
    }
    auto fm = [&](CheckEntry& e) -> CheckEntry& {
        e.metadata["motions"] = motions;
        e.metadata["points"] = static_cast<int>(sub.size());
        return e;
    };
    fm(report.residual("trivial flex: first order", "flex", "r_i . tau_j + r_j . tau_i = 0", worst.first_order, 1e-12));
    fm(report.residual("trivial flex: rotation vector constant", "flex", "Y equals the axial vector of A",
                       worst.rotation_vector, tol));
    fm(report.residual("trivial flex: w tensor", "flex", "w_ij = 0 for a trivial motion", worst.w, 1e-10));
    fm(report.residual("trivial flex: phi relation", "flex", "tau - Y x r expressed through phi", worst.phi, tol))
        .metadata["skipped_points"] = worst.phi_skipped;
    fm(report.residual("trivial flex: closed one-form", "flex", "Y . E is closed when E is a trivial motion",
                       worst.closedness, 1e-7));
}

void add_pair_checks(Report& report, const IsometricPair& pair, const std::vector<int>& sizes) {
    const double dev = check_isometric(pair, sizes);
    report.residual("isometry", "pairs", "g~ = g", dev, pair.tolerance);
    const auto nodes = grid_nodes(pair.first.lower(), pair.first.upper(), pair.periodic_flags(), sizes);
    std::vector<double> wf(nodes.size()), tr(nodes.size()), cz(nodes.size());
    std::vector<char> cof(nodes.size(), 0), bad(nodes.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        try {
            wf[k] = verify_w_formula(pair, nodes[k]);
            const GaussCodazzi gc = verify_gauss_trace_and_codazzi(pair, nodes[k]);
            tr[k] = gc.trace_residual;
            cz[k] = gc.codazzi_residual;
            cof[k] = gc.cofactor_form;
        } catch (const DegenerateError&) {
            bad[k] = 1;
        }
    }
    double w = 0, t = 0, c = 0;
    int cofactor = 0, degenerate = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (bad[k]) {
            ++degenerate;
            continue;
        }
        w = std::max(w, wf[k]);
        t = std::max(t, tr[k]);
        c = std::max(c, cz[k]);
        cofactor += cof[k];
    }
    const bool isometric = dev <= pair.tolerance;
    if (!isometric) {
        for (const char* n : {"difference tensor formula", "gauss trace of W", "codazzi of W"})
            report.skip(n, "pairs", "requires an isometric pair", CheckKind::Identity, "pair is not isometric");
        return;
    }
    report.residual("difference tensor formula", "pairs", "W = h~ - h from Phi and the support functions", w, 1e-10)
        .metadata["points"] = static_cast<int>(nodes.size()) - degenerate;
    report.residual("gauss trace of W", "pairs", "hbar^ij W_ij = 0 (cofactor form where hbar is singular)", t, 1e-10)
        .metadata["cofactor_points"] = cofactor;
    report.residual("codazzi of W", "pairs", "W_ij,k = W_ik,j", c, 1e-10);
    const char* anchor = "the energy form is positive on g";
    if (pair.dim() != 2) {
        report.skip("energy (g, g) non-negative", "pairs", anchor, CheckKind::Inequality, "surfaces only");
        return;
    }
    // Non-periodic axes use 16-node Gauss cells, so a quarter as many cells suffice.
    std::vector<int> cells = sizes;
    const auto periodic = pair.periodic_flags();
    for (int a = 0; a < 2; ++a)
        if (!periodic[a]) cells[a] = std::max(2, sizes[a] / 4);
    double gg = 0.0;
    try {
        gg = energy_inner_product(pair, metric_field(), metric_field(), cells);
    } catch (const PreconditionError& e) {
        report.skip("energy (g, g) non-negative", "pairs", anchor, CheckKind::Inequality, e.what());
        return;
    }
    report.add({"energy (g, g) non-negative", "pairs", anchor, CheckKind::Inequality, gg, 0.0,
                gg >= 0 ? Verdict::Pass : Verdict::Fail})
        .metadata["sense"] = ">=";
    report.data()["energy_gg"] = json_number(gg);
}

KernelResult add_flex_kernel_checks(Report& report, const Immersion& imm, int n0, int n1, double rel_tol,
                                    const std::optional<DeformationField>& field) {
    const FlexOperator op = assemble_flex_operator(imm, n0, n1);
    const KernelResult k = kernel_dimension(op, rel_tol);
    const Verdict v = k.verdict == "rigid" ? Verdict::Pass
                      : k.verdict == "flexible" ? Verdict::Fail
                                                : Verdict::Indeterminate;
    CheckEntry& e = report.add({"kernel dimension", "flex", "infinitesimal rigidity: kernel spanned by trivial motions",
                                CheckKind::Kernel, static_cast<double>(k.dim), static_cast<double>(k.expected), v});
    e.metadata["rel_tol"] = json_number(k.rel_tol);
    e.metadata["gap_ratio"] = json_number(k.gap_ratio);
    e.metadata["method"] = k.method;
    e.metadata["unknowns"] = k.unknowns;
    e.metadata["nodes"] = op.grid.nodes();
    e.metadata["sigma_max"] = json_number(k.sigma_max);
    e.metadata["certificate"] = k.verdict;
    Eigen::VectorXd tail(std::min<std::size_t>(12, k.singular_values.size()));
    for (Eigen::Index i = 0; i < tail.size(); ++i)
        tail(i) = k.singular_values[k.singular_values.size() - 1 - static_cast<std::size_t>(i)];
    e.metadata["smallest_singular_values"] = vec_json(tail);

    const auto tr = trivial_kernel_residuals(op, imm, k.sigma_max);
    report.residual("trivial motions in kernel", "flex", "discrete operator annihilates rigid motions",
                    *std::max_element(tr.begin(), tr.end()), 1e-10);
    if (field) {
        const Eigen::VectorXd s = sample_field(op, *field, imm);
        const double denom = k.sigma_max * s.norm();
        const double rel = denom > 0 ? (op.matrix * s).norm() / denom : 0.0;
        report.residual("field in discrete kernel", "flex", "the supplied field is a discrete infinitesimal flex", rel,
                        rel_tol);
        const auto nodes = grid_nodes(imm.lower(), imm.upper(), imm.periodic_flags(), {n0, n1});
        std::vector<double> res(nodes.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            try {
                const RotationData r = rotation_data(imm, *field, nodes[i]);
                res[i] = first_order_residual(imm, *field, nodes[i]).cwiseAbs().maxCoeff() / r.scale;
            } catch (const DegenerateError&) {
            }
        }
        report.residual("field first-order equation", "flex", "r_i . tau_j + r_j . tau_i = 0 at grid points",
                        *std::max_element(res.begin(), res.end()), kIdentityTolerance);
    }
    return k;
}

void add_pointwise_gauss_checks(Report& report, const Eigen::MatrixXd& h) {
    const char* anchor = "linearized Gauss system has only the trivial solution when rank h >= 3";
    DRVerdict d;
    try {
        d = dr_rigidity_test(h);
    } catch (const ConsistencyError& ex) {
        report.condition("diagonalized system agrees", "highdim", anchor, false, 0.0, 0.0).metadata["error"] = ex.what();
        return;
    }
    const GaussNullspace ns = linearized_gauss_nullspace(h);
    CheckEntry& e = report.condition("linearized gauss null space trivial", "highdim", anchor, d.nullspace_dim == 0,
                                     d.nullspace_dim, 0.0);
    e.metadata["rank"] = d.rank;
    e.metadata["verdict"] = d.verdict;
    e.metadata["unknowns"] = ns.unknowns;
    e.metadata["constraints"] = ns.constraints;
    e.metadata["eigenvalues"] = vec_json(d.eigenvalues);
    report.condition("diagonalized system agrees", "highdim", "null space invariant under orthogonal change of frame",
                     d.diagonal_nullspace_dim == d.nullspace_dim, d.diagonal_nullspace_dim, d.nullspace_dim);
    report.data()["verdict"] = d.verdict;
    report.data()["nullspace_dim"] = d.nullspace_dim;
    report.data()["rank"] = d.rank;
}

void add_boundary_checks(Report& report, const BoundaryProfile& profile, const ScalarFunction& f,
                         const std::string& f_text, double c1, double c2) {
    const DongReport dong = dong_conditions(profile);
    report.condition("total turning", "boundary", "closed-integral k_g ds = 2 pi", dong.turning_holds,
                     dong.turning_residual, kDongTolerance);
    report.condition("boundary closure", "boundary", "closed-integral exp(i theta) ds = 0", dong.closure_holds,
                     dong.closure_residual, kDongTolerance);
    report.data()["length"] = json_number(dong.length);

    const BoundaryODESolution ode = solve_boundary_ode(profile, f, c1, c2, 4096);
    report.residual("boundary ODE closed form", "boundary", "phi_s' = phi_t, phi_t' = -phi_s + f", ode.max_deviation,
                    1e-8);

    const ReferenceCurve gamma = reference_curve(profile);
    report.condition("reference curve closes", "boundary", "Gamma is a closed curve", gamma.closed, gamma.closure_gap,
                     1e-6);
    report.data()["area"] = json_number(gamma.area);

    const Admissibility adm = check_admissible(profile, f);
    const double adm_res =
        std::max({std::abs(adm.u_end), std::abs(adm.v_end), std::abs(adm.mean_phi_s)}) / adm.scale;
    CheckEntry& a = report.condition("f admissible", "boundary", "u(2 pi) = v(2 pi) = 0 and closed-integral phi_s ds = 0",
                                     adm.admissible, adm_res, kAdmissibleTolerance);
    a.metadata["f"] = f_text;
    if (!adm.admissible) a.metadata["failed"] = adm.failed;
    const char* anchor = "closed-integral phi_s F ds <= 0 for admissible f";
    if (!adm.admissible) {
        report.skip("energy inequality", "boundary", anchor, CheckKind::Inequality, "f is not admissible: " + adm.failed);
        return;
    }
    const EnergyInequality e = boundary_energy_inequality(profile, f);
    CheckEntry& ei = report.upper_bound("energy inequality", "boundary", anchor, e.value, 1e-10);
    ei.metadata["direct"] = json_number(e.direct);
    ei.metadata["route_a"] = json_number(e.route_a);
    ei.metadata["route_b"] = json_number(e.route_b);
    ei.metadata["C"] = json_number(e.C);
    report.residual("energy routes agree", "boundary", "integration by parts against the csc^2 form", e.routes_gap, 1e-6);
    report.data()["energy"] = json_number(e.value);
}

}  // namespace rigidlab
