#include "rigidlab/catalog.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace rigidlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    return v < 0 ? "(" + s + ")" : s;
}

Immersion make(std::string name, std::vector<std::string> comps, std::vector<double> lo, std::vector<double> hi,
               std::vector<bool> periodic) {
    const int n = static_cast<int>(lo.size());
    std::vector<Expression> exprs;
    for (const auto& c : comps) exprs.push_back(Expression::parse(c, n));
    return Immersion(std::move(name), std::move(exprs), std::move(lo), std::move(hi), std::move(periodic));
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"plane", {}, {}, "(x1, x2, 0) on [-1,1]^2", false, {}},
        {"sphere", {"R"}, {1.0}, "round sphere, longitude x1 (periodic), latitude x2", false, {}},
        {"ellipsoid", {"a", "b", "c"}, {2.0, 1.0, 1.0}, "(a cos x1 cos x2, b sin x1 cos x2, c sin x2)", false, {}},
        {"cylinder", {"R"}, {1.0}, "(R cos x1, R sin x1, x2), x2 in [-1,1]", false, {}},
        {"saddle", {}, {}, "graph z = x1^2 - x2^2 on [-1,1]^2", false, {}},
        {"quartic_cap", {}, {}, "graph z = (1 - x^2 - y^2)^2 in polar coordinates (rho, phi), rho in [0.05, 1]", true,
         {0, true}},
        {"flat_disk", {}, {}, "unit disk in polar coordinates (rho, phi), rho in [0, 1]", true, {0, true}},
    };
    return entries;
}

Immersion catalog_surface(std::string_view name, const std::vector<double>& params) {
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog_entries())
        if (e.name == name) entry = &e;
    if (!entry) throw std::invalid_argument("unknown catalog surface: " + std::string(name));
    if (params.size() > entry->params.size())
        throw std::invalid_argument("too many parameters for catalog surface " + entry->name);
    std::vector<double> p = entry->defaults;
    for (std::size_t i = 0; i < params.size(); ++i) p[i] = params[i];

    if (name == "plane") return make("plane", {"x1", "x2", "0"}, {-1, -1}, {1, 1}, {false, false});
    if (name == "sphere") {
        if (!(p[0] > 0)) throw std::invalid_argument("sphere: R must be positive");
        const std::string R = num(p[0]);
        return make("sphere(" + num(p[0]) + ")",
                    {R + "*cos(x1)*cos(x2)", R + "*sin(x1)*cos(x2)", R + "*sin(x2)"}, {0, -kPi / 2},
                    {2 * kPi, kPi / 2}, {true, false});
    }
    if (name == "ellipsoid") {
        for (double v : p)
            if (!(v > 0)) throw std::invalid_argument("ellipsoid: semi-axes must be positive");
        return make("ellipsoid(" + num(p[0]) + "," + num(p[1]) + "," + num(p[2]) + ")",
                    {num(p[0]) + "*cos(x1)*cos(x2)", num(p[1]) + "*sin(x1)*cos(x2)", num(p[2]) + "*sin(x2)"},
                    {0, -kPi / 2}, {2 * kPi, kPi / 2}, {true, false});
    }
    if (name == "cylinder") {
        if (!(p[0] > 0)) throw std::invalid_argument("cylinder: R must be positive");
        const std::string R = num(p[0]);
        return make("cylinder(" + R + ")", {R + "*cos(x1)", R + "*sin(x1)", "x2"}, {0, -1}, {2 * kPi, 1},
                    {true, false});
    }
    if (name == "saddle") return make("saddle", {"x1", "x2", "x1^2 - x2^2"}, {-1, -1}, {1, 1}, {false, false});
    if (name == "quartic_cap")
        return make("quartic_cap", {"x1*cos(x2)", "x1*sin(x2)", "(1 - x1^2)^2"}, {0.05, 0}, {1, 2 * kPi},
                    {false, true});
    return make("flat_disk", {"x1*cos(x2)", "x1*sin(x2)", "0"}, {0, 0}, {1, 2 * kPi}, {false, true});
}

Immersion surface_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("surface: expected a JSON object");
    const int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("surface: dim must be in 1..4");
    std::vector<Expression> comps;
    for (const auto& c : j.at("components")) comps.push_back(Expression::parse(c.get<std::string>(), dim));
    std::vector<double> lo, hi;
    for (const auto& d : j.at("domain")) {
        if (!d.is_array() || d.size() != 2) throw std::invalid_argument("surface: domain entries are [lo, hi]");
        lo.push_back(d[0].get<double>());
        hi.push_back(d[1].get<double>());
    }
    std::vector<bool> periodic(dim, false);
    if (j.contains("periodic")) {
        const auto& p = j.at("periodic");
        if (p.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("surface: periodic needs dim flags");
        for (int i = 0; i < dim; ++i) periodic[i] = p[i].get<bool>();
    }
    Orientation o = Orientation::Outward;
    if (j.contains("orientation")) {
        const auto s = j.at("orientation").get<std::string>();
        if (s == "inward") o = Orientation::Inward;
        else if (s != "outward") throw std::invalid_argument("surface: orientation must be outward or inward");
    }
    return Immersion(j.value("name", std::string("surface")), std::move(comps), lo, hi, periodic, o);
}

nlohmann::json surface_to_json(const Immersion& imm) {
    nlohmann::json j;
    j["name"] = imm.name();
    j["dim"] = imm.dim();
    j["components"] = nlohmann::json::array();
    for (const auto& c : imm.components()) j["components"].push_back(c.to_string());
    j["domain"] = nlohmann::json::array();
    j["periodic"] = nlohmann::json::array();
    for (int i = 0; i < imm.dim(); ++i) {
        j["domain"].push_back({imm.lo(i), imm.hi(i)});
        j["periodic"].push_back(static_cast<bool>(imm.periodic(i)));
    }
    j["orientation"] = imm.orientation() == Orientation::Outward ? "outward" : "inward";
    return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

Immersion load_surface(const std::filesystem::path& path) { return surface_from_json(read_json_file(path)); }

Immersion surface_from_reference(const nlohmann::json& ref, const std::filesystem::path& base_dir) {
    if (ref.is_string()) {
        std::filesystem::path p = ref.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return load_surface(p);
    }
    if (ref.is_object() && ref.contains("catalog")) {
        std::vector<double> params;
        if (ref.contains("params")) params = ref.at("params").get<std::vector<double>>();
        Immersion imm = catalog_surface(ref.at("catalog").get<std::string>(), params);
        if (ref.value("orientation", std::string("outward")) == "inward") imm = imm.with_orientation(Orientation::Inward);
        return imm;
    }
    return surface_from_json(ref);
}

}  // namespace rigidlab
