#include "spec_io.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "jsonfmt.hpp"

namespace pmclt {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double endpoint_from_json(const json& v, const char* side) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "+inf" || s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(errc::parse_error, std::string("interval ") + side + " endpoint must be a number, \"-inf\", or \"+inf\"");
}

json endpoint_to_json(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? json("+inf") : json("-inf");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    require(ok, errc::parse_error, std::string("unknown key \"") + it.key() + "\" in " + where);
  }
}

double number_field(const json& obj, const char* key, const char* where) {
  require(obj.contains(key), errc::parse_error, std::string("missing \"") + key + "\" in " + where);
  require(obj[key].is_number(), errc::parse_error, std::string("\"") + key + "\" must be a number in " + where);
  return obj[key].get<double>();
}

}  // namespace

nlohmann::ordered_json spec_to_json(const DistributionSpec& spec) {
  ordered_json j;
  j["spec_version"] = kSpecVersion;
  j["sigma"] = spec.sigma;
  ordered_json pieces = ordered_json::array();
  for (const auto& p : spec.pieces) {
    ordered_json pj;
    pj["family"] = family_name(p.family);
    pj["interval"] = ordered_json::array({endpoint_to_json(p.a), endpoint_to_json(p.b)});
    pj["weight"] = p.weight;
    if (p.family == PieceFamily::polynomial) pj["coefficients"] = p.coefficients;
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  ordered_json atoms = ordered_json::array();
  for (const auto& at : spec.atoms) {
    ordered_json aj;
    aj["location"] = at.location;
    aj["mass"] = at.mass;
    atoms.push_back(std::move(aj));
  }
  j["atoms"] = std::move(atoms);
  if (!spec.metadata.empty()) {
    ordered_json meta;
    for (const auto& [k, v] : spec.metadata) meta[k] = v;
    j["metadata"] = std::move(meta);
  }
  return j;
}

DistributionSpec spec_from_json(const json& j) {
  require(j.is_object(), errc::parse_error, "spec document must be a JSON object");
  reject_unknown_keys(j, {"spec_version", "sigma", "pieces", "atoms", "metadata"}, "spec document");
  require(j.contains("spec_version"), errc::parse_error, "missing \"spec_version\"");
  require(j["spec_version"].is_number_integer() && j["spec_version"].get<int>() == kSpecVersion,
          errc::parse_error, "unsupported spec_version (expected 1)");

  DistributionSpec spec;
  spec.sigma = number_field(j, "sigma", "spec document");

  if (j.contains("pieces")) {
    require(j["pieces"].is_array(), errc::parse_error, "\"pieces\" must be an array");
    for (const auto& pj : j["pieces"]) {
      require(pj.is_object(), errc::parse_error, "each piece must be an object");
      reject_unknown_keys(pj, {"family", "interval", "weight", "coefficients"}, "piece");
      require(pj.contains("family") && pj["family"].is_string(), errc::parse_error,
              "piece needs a string \"family\"");
      DensityPiece p;
      const std::string fam = pj["family"].get<std::string>();
      if (fam == "gaussian_restriction") p.family = PieceFamily::gaussian_restriction;
      else if (fam == "uniform") p.family = PieceFamily::uniform;
      else if (fam == "polynomial") p.family = PieceFamily::polynomial;
      else fail(errc::parse_error, "unknown piece family \"" + fam + "\"");

      require(pj.contains("interval") && pj["interval"].is_array() && pj["interval"].size() == 2,
              errc::parse_error, "piece \"interval\" must be a two-element array");
      p.a = endpoint_from_json(pj["interval"][0], "left");
      p.b = endpoint_from_json(pj["interval"][1], "right");
      p.weight = number_field(pj, "weight", "piece");
      if (pj.contains("coefficients")) {
        require(pj["coefficients"].is_array(), errc::parse_error, "\"coefficients\" must be an array");
        for (const auto& c : pj["coefficients"]) {
          require(c.is_number(), errc::parse_error, "polynomial coefficients must be numbers");
          p.coefficients.push_back(c.get<double>());
        }
      }
      spec.pieces.push_back(std::move(p));
    }
  }

  if (j.contains("atoms")) {
    require(j["atoms"].is_array(), errc::parse_error, "\"atoms\" must be an array");
    for (const auto& aj : j["atoms"]) {
      require(aj.is_object(), errc::parse_error, "each atom must be an object");
      reject_unknown_keys(aj, {"location", "mass"}, "atom");
      Atom at;
      at.location = number_field(aj, "location", "atom");
      at.mass = number_field(aj, "mass", "atom");
      spec.atoms.push_back(at);
    }
  }

  if (j.contains("metadata")) {
    require(j["metadata"].is_object(), errc::parse_error, "\"metadata\" must be an object");
    for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it) {
      require(it.value().is_number(), errc::parse_error, "metadata values must be numbers");
      spec.metadata[it.key()] = it.value().get<double>();
    }
  }

  check_structure(spec);
  return spec;
}

DistributionSpec parse_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, std::string("JSON parse failure: ") + e.what());
  }
  return spec_from_json(j);
}

DistributionSpec load_spec_file(const std::string& path) {
  return parse_spec_text(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_error, "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  require(!in.bad(), errc::io_error, "read failure: " + path);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::io_error, "cannot open file for writing: " + path);
  out << content;
  out.flush();
  require(out.good(), errc::io_error, "write failure: " + path);
}

}  // namespace pmclt
