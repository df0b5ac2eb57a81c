#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace rigidlab {

enum class CheckKind { Identity, Inequality, Kernel, Condition };
enum class Verdict { Pass, Fail, Skip, Indeterminate };

const char* to_string(CheckKind k);
const char* to_string(Verdict v);

struct CheckEntry {
    std::string name;
    std::string module;
    std::string anchor;  // the statement being verified, in words
    CheckKind kind = CheckKind::Identity;
    double value = 0.0;  // max residual, or the measured value
    double tolerance = 0.0;
    Verdict verdict = Verdict::Skip;
    nlohmann::json metadata = nlohmann::json::object();
};

/// JSON numbers cannot carry inf/nan; those become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);

/// Ordered list of checks plus free-form data. Serialization is
/// deterministic: object keys sorted, checks in insertion order, no timings.
class Report {
public:
    Report(std::string command, nlohmann::json inputs, unsigned long long seed);

    /// Pass iff residual <= tolerance (non-finite residuals fail).
    CheckEntry& residual(std::string name, std::string module, std::string anchor, double residual, double tolerance);
    /// Pass iff value <= bound.
    CheckEntry& upper_bound(std::string name, std::string module, std::string anchor, double value, double bound);
    /// Pass iff ok.
    CheckEntry& condition(std::string name, std::string module, std::string anchor, bool ok, double value,
                          double tolerance);
    CheckEntry& skip(std::string name, std::string module, std::string anchor, CheckKind kind, std::string reason);
    CheckEntry& add(CheckEntry e);

    nlohmann::json& data() { return data_; }
    const std::vector<CheckEntry>& checks() const { return checks_; }

    /// "fail" if any check failed, else "indeterminate" if any is, else "pass".
    std::string overall() const;
    /// 0 pass, 2 fail, 3 indeterminate.
    int exit_code() const;

    nlohmann::json to_json() const;
    std::string dump() const;  // 2-space indent, trailing newline
    void write(const std::filesystem::path& path) const;

private:
    std::string command_;
    nlohmann::json inputs_;
    unsigned long long seed_;
    std::vector<CheckEntry> checks_;
    nlohmann::json data_ = nlohmann::json::object();
};

inline constexpr const char* kReportSchema = "rigidlab-report/1";

}  // namespace rigidlab
