#include "rigidlab/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rigidlab {

const char* to_string(CheckKind k) {
    switch (k) {
        case CheckKind::Identity: return "identity";
        case CheckKind::Inequality: return "inequality";
        case CheckKind::Kernel: return "kernel";
        case CheckKind::Condition: return "condition";
    }
    return "identity";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skip: return "skip";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "skip";
}

nlohmann::json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Report::Report(std::string command, nlohmann::json inputs, unsigned long long seed)
    : command_(std::move(command)), inputs_(std::move(inputs)), seed_(seed) {}

CheckEntry& Report::add(CheckEntry e) {
    checks_.push_back(std::move(e));
    return checks_.back();
}

CheckEntry& Report::residual(std::string name, std::string module, std::string anchor, double residual,
                             double tolerance) {
    const bool ok = std::isfinite(residual) && std::abs(residual) <= tolerance;
    return add({std::move(name), std::move(module), std::move(anchor), CheckKind::Identity, residual, tolerance,
                ok ? Verdict::Pass : Verdict::Fail});
}

CheckEntry& Report::upper_bound(std::string name, std::string module, std::string anchor, double value,
                                double bound) {
    const bool ok = std::isfinite(value) && value <= bound;
    CheckEntry& e = add({std::move(name), std::move(module), std::move(anchor), CheckKind::Inequality, value, bound,
                         ok ? Verdict::Pass : Verdict::Fail});
    e.metadata["sense"] = "<=";
    return e;
}

CheckEntry& Report::condition(std::string name, std::string module, std::string anchor, bool ok, double value,
                              double tolerance) {
    return add({std::move(name), std::move(module), std::move(anchor), CheckKind::Condition, value, tolerance,
                ok ? Verdict::Pass : Verdict::Fail});
}

CheckEntry& Report::skip(std::string name, std::string module, std::string anchor, CheckKind kind,
                         std::string reason) {
    CheckEntry& e = add({std::move(name), std::move(module), std::move(anchor), kind, 0.0, 0.0, Verdict::Skip});
    e.metadata["reason"] = std::move(reason);
    return e;
}

std::string Report::overall() const {
    bool indeterminate = false;
    for (const auto& c : checks_) {
        if (c.verdict == Verdict::Fail) return "fail";
        if (c.verdict == Verdict::Indeterminate) indeterminate = true;
    }
    return indeterminate ? "indeterminate" : "pass";
}

int Report::exit_code() const {
    const std::string o = overall();
    return o == "fail" ? 2 : o == "indeterminate" ? 3 : 0;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["command"] = command_;
    j["inputs"] = inputs_;
    j["seed"] = seed_;
    j["checks"] = nlohmann::json::array();
    int counts[4] = {0, 0, 0, 0};
    for (const auto& c : checks_) {
        nlohmann::json e;
        e["name"] = c.name;
        e["module"] = c.module;
        e["anchor"] = c.anchor;
        e["kind"] = to_string(c.kind);
        e[c.kind == CheckKind::Identity ? "max_residual" : "value"] = json_number(c.value);
        e["tolerance"] = json_number(c.tolerance);
        e["verdict"] = to_string(c.verdict);
        e["metadata"] = c.metadata;
        j["checks"].push_back(std::move(e));
        ++counts[static_cast<int>(c.verdict)];
    }
    j["summary"] = {{"pass", counts[0]},          {"fail", counts[1]},        {"skip", counts[2]},
                    {"indeterminate", counts[3]}, {"verdict", overall()}};
    j["data"] = data_;
    return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

void Report::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << dump();
}

}  // namespace rigidlab
