#include "jsonfmt.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace pmclt {
namespace {

void write_value(const nlohmann::ordered_json& j, std::string& out, int indent, int depth) {
  using value_t = nlohmann::json::value_t;
  const std::string pad(static_cast<size_t>(indent) * (depth + 1), ' ');
  const std::string pad_close(static_cast<size_t>(indent) * depth, ' ');
  switch (j.type()) {
    case value_t::null:
      out += "null";
      return;
    case value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case value_t::number_float:
      out += format_double17(j.get<double>());
      return;
    case value_t::string:
      out += nlohmann::json(j.get<std::string>()).dump();
      return;
    case value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_value(el, out, indent, depth + 1);
      }
      out += "\n" + pad_close + "]";
      return;
    }
    case value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + ": ";
        write_value(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad_close + "}";
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string format_double17(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"+inf\"" : "\"-inf\"";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  // Keep the value a JSON number (to_chars may emit a bare integer form).
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json17(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  write_value(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace pmclt
