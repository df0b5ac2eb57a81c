#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rigidlab/cli.hpp"
#include "rigidlab/catalog.hpp"
#include "rigidlab/report.hpp"
#include "rigidlab/suites.hpp"

using namespace rigidlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, log;
    nlohmann::json report;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "rigidlab_test_cli";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run cli(std::vector<std::string> args, bool with_report = true) {
    const fs::path rep = scratch() / "report.json";
    fs::remove(rep);
    args.insert(args.begin(), "rigidlab");
    if (with_report) {
        args.push_back("--report");
        args.push_back(rep.string());
    }
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, log;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, log);
    r.out = out.str();
    r.log = log.str();
    if (with_report && fs::exists(rep)) {
        std::ifstream in(rep);
        r.report = nlohmann::json::parse(in);
    }
    return r;
}

const nlohmann::json* check(const nlohmann::json& report, const std::string& name) {
    for (const auto& c : report.at("checks"))
        if (c.at("name") == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("report: verdicts and exit codes") {
    Report r("demo", nlohmann::json::object(), 0);
    r.residual("a", "m", "x", 1e-9, 1e-8);
    CHECK(r.exit_code() == 0);
    r.residual("nan", "m", "x", std::numeric_limits<double>::quiet_NaN(), 1.0);
    CHECK(r.checks().back().verdict == Verdict::Fail);
    CHECK(r.exit_code() == 2);

    Report k("demo", nlohmann::json::object(), 0);
    k.add({"kernel", "flex", "x", CheckKind::Kernel, 7, 6, Verdict::Indeterminate});
    k.skip("s", "m", "x", CheckKind::Identity, "why");
    CHECK(k.overall() == "indeterminate");
    CHECK(k.exit_code() == 3);
    const auto j = k.to_json();
    CHECK(j.at("schema") == "rigidlab-report/1");
    CHECK(j.at("summary").at("skip") == 1);
    CHECK(j.at("checks")[1].at("metadata").at("reason") == "why");
}

TEST_CASE("report: non-finite numbers and stable text") {
    CHECK(json_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(json_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(json_number(std::nan("")) == "nan");
    CHECK(json_number(0.1) == 0.1);
    Report r("demo", {{"z", 1}, {"a", 2}}, 5);
    r.upper_bound("b", "m", "x", -1.0, 0.0);
    r.data()["zeta"] = 1;
    r.data()["alpha"] = 2;
    const std::string text = r.dump();
    CHECK(text == r.dump());
    CHECK(text.find("\"alpha\"") < text.find("\"zeta\""));
    CHECK(text.back() == '\n');
    CHECK(nlohmann::json::parse(text).at("checks")[0].at("metadata").at("sense") == "<=");
}

TEST_CASE("cli: check-surface on the shipped sphere passes") {
    const Run r = cli({"check-surface", "sphere.json", "--grid", "32x32"});
    CHECK(r.code == kExitPass);
    CHECK(r.report.at("command") == "check-surface");
    CHECK(r.report.at("summary").at("fail") == 0);
    CHECK(check(r.report, "darboux equation")->at("verdict") == "pass");
    for (const auto& c : r.report.at("checks")) {
        CHECK(!c.at("module").get<std::string>().empty());
        CHECK(!c.at("anchor").get<std::string>().empty());
    }
}

TEST_CASE("cli: pointwise-gauss examples") {
    const Run a = cli({"pointwise-gauss", "--h", "1,1,0", "--dim", "3"});
    CHECK(a.code == kExitFail);
    CHECK(a.report.at("data").at("verdict") == "not-certified");
    CHECK(a.report.at("data").at("nullspace_dim") == 2);
    const Run b = cli({"pointwise-gauss", "--h", "1,2,3", "--dim", "3"});
    CHECK(b.code == kExitPass);
    CHECK(b.report.at("data").at("nullspace_dim") == 0);
    // full matrix, row by row
    const Run c = cli({"pointwise-gauss", "--h", "2,1,0,1,2,0,0,0,1", "--dim", "3"});
    CHECK(c.code == kExitPass);
    CHECK(cli({"pointwise-gauss", "--h", "1,2", "--dim", "3"}).code == kExitUsage);
    CHECK(cli({"pointwise-gauss", "--h", "0,1,1,0", "--dim", "2"}).code == kExitUsage);
    CHECK(cli({"pointwise-gauss", "--h", "1,x,3"}).code == kExitUsage);
    const fs::path hf = scratch() / "h.json";
    std::ofstream(hf) << "[[1,0,0,0],[0,2,0,0],[0,0,0,0],[0,0,0,0]]";
    const Run d = cli({"pointwise-gauss", "--h-file", hf.string()});
    CHECK(d.code == kExitFail);
    CHECK(d.report.at("data").at("rank") == 2);
}

TEST_CASE("cli: catalog lists shipped surfaces") {
    const Run r = cli({"catalog"}, false);
    CHECK(r.code == kExitPass);
    for (const char* name : {"sphere", "ellipsoid", "cylinder", "saddle", "quartic_cap", "flat_disk", "plane"})
        CHECK(r.out.find(name) != std::string::npos);
    CHECK(r.out.find("data/surfaces/sphere.json") != std::string::npos);
}

TEST_CASE("cli: usage errors") {
    CHECK(cli({}, false).code == kExitUsage);
    CHECK(cli({"frobnicate"}, false).code == kExitUsage);
    CHECK(cli({"check-surface", "no-such-surface.json"}).code == kExitUsage);
    CHECK(cli({"check-surface", "sphere", "--grid", "32by32"}).code == kExitUsage);
    CHECK(cli({"flex-kernel", "sphere", "--svd-tol", "abc"}).code == kExitUsage);
    CHECK(cli({"boundary", "--f", "sin(2*x1)"}).code == kExitUsage);
    CHECK(cli({"boundary", "--kg", "cos(x1)"}).code == kExitUsage);  // k_g must stay positive
    CHECK(cli({"boundary", "--kg", "1", "--f", "sin(2*"}).code == kExitUsage);
    CHECK(cli({"boundary", "--kg", "1", "--kg-param", "s"}).code == kExitUsage);
}

TEST_CASE("cli: flex-kernel verdicts map to exit codes") {
    const Run rigid = cli({"flex-kernel", "sphere", "--grid", "32x16"});
    CHECK(rigid.code == kExitPass);
    CHECK(rigid.report.at("data").at("kernel_dim") == 6);
    const Run disk = cli({"flex-kernel", "flat_disk.json", "--grid", "16x16"});
    CHECK(disk.code == kExitFail);
    CHECK(disk.report.at("data").at("kernel_dim") == 259);
    const Run loose = cli({"flex-kernel", "sphere", "--grid", "16x8", "--svd-tol", "0.3"});
    CHECK(loose.code == kExitIndeterminate);
    CHECK(check(loose.report, "kernel dimension")->at("verdict") == "indeterminate");
}

TEST_CASE("cli: flex-kernel with a supplied field") {
    const Run bend = cli({"flex-kernel", "plane", "--grid", "12x12", "--field", "plane_bending.json"});
    CHECK(check(bend.report, "field first-order equation")->at("verdict") == "pass");
    CHECK(check(bend.report, "field in discrete kernel")->at("verdict") == "pass");
    const Run rot = cli({"flex-kernel", "sphere", "--grid", "16x8", "--field", "rotation_field.json"});
    CHECK(rot.code == kExitPass);
}

TEST_CASE("cli: pair-check") {
    const Run cyl = cli({"pair-check", "cylinder_pair.json", "--grid", "8x8"});
    CHECK(cyl.code == kExitPass);
    CHECK(check(cyl.report, "gauss trace of W")->at("metadata").at("cofactor_points") == 64);
    CHECK(check(cyl.report, "energy (g, g) non-negative")->at("verdict") == "skip");
    const Run sph = cli({"pair-check", "sphere_pair.json", "--grid", "32x8"});
    CHECK(sph.code == kExitPass);
    CHECK(std::abs(sph.report.at("data").at("energy_gg").get<double>() - 16 * M_PI) < 1e-6 * 16 * M_PI);
}

TEST_CASE("cli: boundary, csv output and determinism") {
    const fs::path csv = scratch() / "csv";
    fs::remove_all(csv);
    const Run a = cli({"boundary", "--kg", "1", "--f", "sin(2*x1)", "--csv-dir", csv.string()});
    CHECK(a.code == kExitPass);
    CHECK(std::abs(a.report.at("data").at("energy").get<double>() + M_PI / 3) < 1e-8);
    CHECK(std::abs(a.report.at("data").at("area").get<double>() - M_PI) < 1e-10);
    CHECK(fs::exists(csv / "gamma.csv"));
    CHECK(fs::exists(csv / "uv.csv"));
    const Run b = cli({"boundary", "--kg", "1", "--f", "sin(2*x1)"});
    CHECK(a.report == b.report);  // output locations are not part of the inputs

    const Run na = cli({"boundary", "--kg", "1", "--f", "cos(x1)"});
    CHECK(na.code == kExitFail);
    CHECK(check(na.report, "f admissible")->at("metadata").at("failed") == "v(2 pi) = 0");
    CHECK(check(na.report, "energy inequality")->at("verdict") == "skip");

    const fs::path prof = scratch() / "kg.csv";
    auto write_profile = [&](int digits) {
        std::ofstream o(prof);
        o.precision(digits);
        o << "theta,kg\n";
        for (int i = 0; i <= 64; ++i) o << 2 * M_PI * i / 64 << ",1\n";
    };
    write_profile(6);  // last theta rounds away from 2 pi
    CHECK(cli({"boundary", "--kg-csv", prof.string(), "--f", "sin(3*x1)"}).code == kExitUsage);
    write_profile(17);
    CHECK(cli({"boundary", "--kg-csv", prof.string(), "--f", "sin(3*x1)"}).code == kExitPass);
    CHECK(cli({"boundary", "--kg", "1", "--kg-param", "s", "--length", "6.283185307179586"}).code == kExitPass);
}

TEST_CASE("cli: seeds select the random points") {
    const Run a = cli({"check-surface", "ellipsoid", "--grid", "4x4", "--random", "10", "--seed", "3"});
    const Run b = cli({"check-surface", "ellipsoid", "--grid", "4x4", "--random", "10", "--seed", "3"});
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.report.at("seed") == 3);
    CHECK(a.report.at("data").at("points") == 26);
}

TEST_CASE("suites: degenerate samples are counted, not dropped silently") {
    const SurfaceIdentities s = surface_identities(catalog_surface("flat_disk"), {{0.0, 1.0}, {0.5, 1.0}, {0.7, 2.0}});
    CHECK(s.points == 3);
    CHECK(s.degenerate_points == 1);
    CHECK(s.support_degenerate == 2);  // the plane z = 0 passes through the origin
    CHECK(s.frame < 1e-14);
}

TEST_CASE("suites: trivial motions against the discrete operator") {
    const Immersion sph = catalog_surface("sphere");
    const FlexOperator op = assemble_flex_operator(sph, 16, 8);
    const KernelResult k = kernel_dimension(op, 1e-8);
    for (double r : trivial_kernel_residuals(op, sph, k.sigma_max)) CHECK(r < 1e-12);
}
