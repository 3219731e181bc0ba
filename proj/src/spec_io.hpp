#pragma once

#include <string>

#include "dist.hpp"
#include "json.hpp"

namespace pmclt {

inline constexpr int kSpecVersion = 1;

nlohmann::ordered_json spec_to_json(const DistributionSpec& spec);

/// Strict parse: unknown keys, unknown families, a missing or foreign
/// spec_version, and malformed intervals are all rejected. Structural
/// invariants are enforced afterwards via check_structure.
DistributionSpec spec_from_json(const nlohmann::json& j);

DistributionSpec parse_spec_text(const std::string& text);
DistributionSpec load_spec_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pmclt
