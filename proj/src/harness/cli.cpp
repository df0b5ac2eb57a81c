#include "rigidlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "rigidlab/catalog.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/expr.hpp"
#include "rigidlab/suites.hpp"

#ifndef RIGIDLAB_DATA_DIR
#define RIGIDLAB_DATA_DIR "data"
#endif

namespace rigidlab {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw UsageError("--grid expects AxB, got '" + text + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const int a = std::stoi(text.substr(0, x), &p1);
        const int b = std::stoi(text.substr(x + 1), &p2);
        if (p1 != x || p2 != text.size() - x - 1 || a < 1 || b < 1) throw std::invalid_argument("");
        return {a, b};
    } catch (const std::logic_error&) {
        throw UsageError("--grid expects AxB with positive integers, got '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::logic_error&) {
            throw UsageError(std::string(flag) + ": not a number: '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
    return out;
}

// A path, a file under the shipped data/surfaces directory, or a catalog name.
Immersion resolve_surface(const std::string& ref, const std::vector<double>& params) {
    if (fs::exists(ref)) return load_surface(ref);
    const fs::path shipped = fs::path(RIGIDLAB_DATA_DIR) / "surfaces" / ref;
    if (fs::exists(shipped)) return load_surface(shipped);
    std::string name = ref;
    if (name.size() > 5 && name.ends_with(".json")) name.resize(name.size() - 5);
    for (const auto& e : catalog_entries())
        if (e.name == name) return catalog_surface(name, params);
    throw UsageError("cannot read surface '" + ref + "' (not a file, shipped surface or catalog name)");
}

fs::path resolve_file(const std::string& ref) {
    if (fs::exists(ref)) return ref;
    const fs::path shipped = fs::path(RIGIDLAB_DATA_DIR) / "surfaces" / ref;
    if (fs::exists(shipped)) return shipped;
    throw UsageError("cannot read '" + ref + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const fs::path& path, const std::string& header, const std::vector<std::vector<double>>& cols) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << header << '\n';
    const std::size_t rows = cols.empty() ? 0 : cols[0].size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << fmt(cols[c][i]);
        out << '\n';
    }
}

Eigen::MatrixXd read_h_file(const fs::path& path) {
    nlohmann::json j = read_json_file(path);
    if (j.is_object() && j.contains("h")) j = j.at("h");
    if (!j.is_array() || j.empty()) throw UsageError("--h-file: expected a square array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != n)
            throw UsageError("--h-file: expected a square array of rows");
        for (Eigen::Index k = 0; k < n; ++k) h(i, k) = j[i][k].get<double>();
    }
    return h;
}

// Arguments minus output locations, so the report depends on inputs only.
nlohmann::json command_line(int argc, const char* const* argv) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 1; i < argc; ++i) {
        const std::string_view s = argv[i];
        if (s == "--report" || s == "--csv-dir") {
            ++i;
            continue;
        }
        if (s.starts_with("--report=") || s.starts_with("--csv-dir=")) continue;
        a.push_back(s);
    }
    return a;
}

void log_checks(const Report& r, std::ostream& log) {
    for (const auto& c : r.checks()) {
        log << to_string(c.verdict) << "  " << c.module << ": " << c.name;
        if (c.verdict != Verdict::Skip) log << "  (" << fmt(c.value) << " vs " << fmt(c.tolerance) << ")";
        log << '\n';
    }
    log << "overall: " << r.overall() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
    CLI::App app{"rigidlab: numerical checks for hypersurface rigidity", "rigidlab"};
    app.require_subcommand(1);

    std::string report_path, csv_dir;
    unsigned long long seed = 0;
    auto common = [&](CLI::App* s) {
        s->add_option("--report", report_path, "write the JSON report here (default: stdout)");
        s->add_option("--seed", seed, "random seed")->capture_default_str();
        s->add_option("--csv-dir", csv_dir, "directory for CSV plot data");
    };

    std::string surface, grid;
    std::vector<double> params;
    int random_points = 0, motions = 3;
    auto* cs = app.add_subcommand("check-surface", "pointwise identities and trivial flexes on a surface");
    cs->add_option("surface", surface, "surface JSON, shipped surface or catalog name")->required();
    cs->add_option("--grid", grid, "interior sample grid AxB")->default_str("16x16");
    cs->add_option("--param", params, "catalog parameters")->delimiter(',');
    cs->add_option("--random", random_points, "extra random interior points")->check(CLI::NonNegativeNumber);
    cs->add_option("--motions", motions, "random trivial motions")->check(CLI::NonNegativeNumber);
    common(cs);

    std::string pair_file;
    auto* pc = app.add_subcommand("pair-check", "difference tensors of an isometric pair");
    pc->add_option("pair", pair_file, "pair JSON: {first, second, tolerance}")->required();
    pc->add_option("--grid", grid, "sample grid AxB")->default_str("32x32");
    common(pc);

    double svd_tol = 1e-8;
    std::string field_file;
    auto* fk = app.add_subcommand("flex-kernel", "kernel of the discrete linearized isometry operator");
    fk->add_option("surface", surface, "surface JSON, shipped surface or catalog name")->required();
    fk->add_option("--grid", grid, "operator grid AxB")->default_str("32x16");
    fk->add_option("--svd-tol", svd_tol, "relative singular value threshold")->capture_default_str();
    fk->add_option("--field", field_file, "deformation field JSON to test");
    fk->add_option("--param", params, "catalog parameters")->delimiter(',');
    common(fk);

    std::string h_text, h_file;
    int dim = 0;
    auto* pg = app.add_subcommand("pointwise-gauss", "linearized Gauss system for a second fundamental form");
    pg->set_help_flag("--help", "print this help message and exit");
    auto* hopt = pg->add_option("--h", h_text, "diagonal entries, or dim^2 entries row by row");
    auto* hfopt = pg->add_option("--h-file", h_file, "JSON square matrix");
    hopt->excludes(hfopt);
    pg->add_option("--dim", dim, "hypersurface dimension n")->check(CLI::PositiveNumber);
    common(pg);

    std::string kg_text, kg_csv, kg_param = "theta", f_text = "0";
    double length = 0.0, c1 = 0.0, c2 = 0.0;
    auto* bd = app.add_subcommand("boundary", "boundary ODE, reference curve and energy inequality");
    auto* kgopt = bd->add_option("--kg", kg_text, "geodesic curvature expression in x1");
    auto* kgcopt = bd->add_option("--kg-csv", kg_csv, "geodesic curvature samples (header theta or s)");
    kgopt->excludes(kgcopt);
    bd->add_option("--kg-param", kg_param, "variable of --kg: theta or s")
        ->check(CLI::IsMember({"theta", "s"}))
        ->capture_default_str();
    bd->add_option("--length", length, "boundary length, required with --kg-param s");
    bd->add_option("--f", f_text, "forcing term f(theta) as an expression in x1")->capture_default_str();
    bd->add_option("--c1", c1, "phase c1 of the ODE solution")->capture_default_str();
    bd->add_option("--c2", c2, "phase c2 of the ODE solution")->capture_default_str();
    common(bd);

    auto* cat = app.add_subcommand("catalog", "list shipped surfaces");
    common(cat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        app.exit(e, o, er);
        log << er.str() << o.str();
        return kExitUsage;
    }

    if (grid.empty()) grid = *cs ? "16x16" : *pc ? "32x32" : "32x16";
    const nlohmann::json inputs = {{"argv", command_line(argc, argv)}};
    std::mt19937_64 rng(seed);
    std::optional<Report> report;
    try {
        if (*cs) {
            const Immersion imm = resolve_surface(surface, params);
            const auto g = parse_grid(grid);
            std::vector<int> sizes(imm.dim(), g[0]);
            if (imm.dim() >= 2) sizes[1] = g[1];
            auto points = grid_nodes(imm.lower(), imm.upper(), imm.periodic_flags(), sizes);
            for (int k = 0; k < random_points; ++k) points.push_back(random_interior_point(imm, rng));
            report.emplace("check-surface", inputs, seed);
            report->data()["surface"] = surface_to_json(imm);
            report->data()["points"] = static_cast<int>(points.size());
            add_surface_checks(*report, imm, points, motions, rng);
        } else if (*pc) {
            const fs::path p = resolve_file(pair_file);
            const IsometricPair pair = pair_from_json(read_json_file(p), p.parent_path());
            const auto g = parse_grid(grid);
            std::vector<int> sizes(pair.dim(), g[0]);
            if (pair.dim() >= 2) sizes[1] = g[1];
            report.emplace("pair-check", inputs, seed);
            report->data()["first"] = pair.first.name();
            report->data()["second"] = pair.second.name();
            add_pair_checks(*report, pair, sizes);
        } else if (*fk) {
            const Immersion imm = resolve_surface(surface, params);
            if (imm.dim() != 2 || imm.ambient_dim() != 3) throw UsageError("flex-kernel: needs a surface in R^3");
            const auto g = parse_grid(grid);
            std::optional<DeformationField> field;
            if (!field_file.empty()) field = DeformationField::from_json(read_json_file(resolve_file(field_file)), 2);
            report.emplace("flex-kernel", inputs, seed);
            report->data()["surface"] = surface_to_json(imm);
            const KernelResult k = add_flex_kernel_checks(*report, imm, g[0], g[1], svd_tol, field);
            report->data()["kernel_dim"] = k.dim;
            report->data()["certificate"] = k.verdict;
            if (!csv_dir.empty()) {
                fs::create_directories(csv_dir);
                std::vector<double> idx, sv;
                for (std::size_t i = 0; i < k.singular_values.size(); ++i) {
                    idx.push_back(static_cast<double>(i));
                    sv.push_back(k.singular_values[i]);
                }
                write_csv(fs::path(csv_dir) / "spectrum.csv", "index,sigma", {idx, sv});
            }
        } else if (*pg) {
            Eigen::MatrixXd h;
            if (!h_file.empty()) h = read_h_file(resolve_file(h_file));
            else if (!h_text.empty()) {
                const auto v = parse_list(h_text, "--h");
                const int n = dim > 0 ? dim : static_cast<int>(v.size());
                if (static_cast<int>(v.size()) == n) h = Eigen::VectorXd::Map(v.data(), n).asDiagonal();
                else if (static_cast<int>(v.size()) == n * n)
                    h = Eigen::MatrixXd::Map(v.data(), n, n).transpose();
                else
                    throw UsageError("--h: expected dim or dim^2 entries");
            } else
                throw UsageError("pointwise-gauss: --h or --h-file is required");
            if (dim > 0 && h.rows() != dim) throw UsageError("--dim does not match the matrix size");
            if ((h - h.transpose()).cwiseAbs().maxCoeff() != 0.0) throw UsageError("h must be symmetric");
            if (h.rows() < 3) throw UsageError("pointwise-gauss: needs dim >= 3");
            report.emplace("pointwise-gauss", inputs, seed);
            add_pointwise_gauss_checks(*report, h);
        } else if (*bd) {
            std::optional<BoundaryProfile> prof;
            if (!kg_csv.empty()) prof = BoundaryProfile::from_csv(resolve_file(kg_csv));
            else if (!kg_text.empty()) {
                if (kg_param == "s") {
                    if (!(length > 0)) throw UsageError("--kg-param s needs --length > 0");
                    prof = BoundaryProfile::from_arclength_expression(kg_text, length);
                } else
                    prof = BoundaryProfile::from_theta_expression(kg_text);
            } else
                throw UsageError("boundary: --kg or --kg-csv is required");
            const ScalarFunction f = expression_function(f_text);
            report.emplace("boundary", inputs, seed);
            add_boundary_checks(*report, *prof, f, f_text, c1, c2);
            if (!csv_dir.empty()) {
                fs::create_directories(csv_dir);
                const ReferenceCurve gamma = reference_curve(*prof);
                write_csv(fs::path(csv_dir) / "gamma.csv", "theta,x1,x2", {gamma.theta, gamma.x1, gamma.x2});
                if (check_admissible(*prof, f).admissible) {
                    const UVData uv = uv_functions(*prof, f);
                    write_csv(fs::path(csv_dir) / "uv.csv", "theta,u,v,U,V", {uv.theta, uv.u, uv.v, uv.U, uv.V});
                }
            }
        } else if (*cat) {
            report.emplace("catalog", inputs, seed);
            nlohmann::json list = nlohmann::json::array();
            for (const auto& e : catalog_entries()) {
                nlohmann::json item = {{"name", e.name}, {"params", e.params}, {"description", e.description}};
                item["defaults"] = e.defaults;
                list.push_back(item);
                out << e.name;
                if (!e.params.empty()) {
                    out << '(';
                    for (std::size_t i = 0; i < e.params.size(); ++i)
                        out << (i ? ", " : "") << e.params[i] << '=' << e.defaults[i];
                    out << ')';
                }
                out << "  " << e.description << '\n';
            }
            std::vector<std::string> files;
            const fs::path dir = fs::path(RIGIDLAB_DATA_DIR) / "surfaces";
            if (fs::is_directory(dir))
                for (const auto& f : fs::directory_iterator(dir)) files.push_back(f.path().filename().string());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) out << "data/surfaces/" << f << '\n';
            report->data()["catalog"] = list;
            report->data()["files"] = files;
            if (!report_path.empty()) report->write(report_path);
            return kExitPass;
        }
    } catch (const UsageError& e) {
        log << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        log << "expression error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        log << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        log << "precondition failed: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        log << "invalid JSON input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }

    if (report_path.empty()) out << report->dump();
    else report->write(report_path);
    log_checks(*report, log);
    return report->exit_code();
}

}  // namespace rigidlab
