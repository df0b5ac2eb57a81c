#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rigidlab/geometry.hpp"

namespace rigidlab {

struct CatalogEntry {
    std::string name;
    std::vector<std::string> params;    // parameter names, in order
    std::vector<double> defaults;
    std::string description;
    bool has_boundary = false;          // carries a closed boundary edge
    BoundaryEdge boundary;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Shipped surface by name; missing trailing parameters take their defaults.
/// Throws std::invalid_argument for unknown names or too many parameters.
Immersion catalog_surface(std::string_view name, const std::vector<double>& params = {});

/// Surface file: {name, dim, components, domain: [[lo, hi], ...], periodic,
/// orientation: "outward" | "inward"}.
Immersion surface_from_json(const nlohmann::json& j);
nlohmann::json surface_to_json(const Immersion& imm);
Immersion load_surface(const std::filesystem::path& path);

/// Either a file path, an inline surface object, or {"catalog": name, "params": [...]}.
Immersion surface_from_reference(const nlohmann::json& ref, const std::filesystem::path& base_dir);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace rigidlab
