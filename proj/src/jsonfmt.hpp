#pragma once

#include <string>

#include "json.hpp"

namespace pmclt {

/// Serializes with every double at 17 significant digits via std::to_chars,
/// so output is locale-independent and round-trips exactly. Non-finite
/// values become the strings "+inf", "-inf", "nan".
std::string dump_json17(const nlohmann::ordered_json& j, int indent = 2);

/// Same digit policy for a lone double (CSV cells, log lines).
std::string format_double17(double v);

}  // namespace pmclt
