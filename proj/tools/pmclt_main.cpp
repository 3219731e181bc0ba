// Command-line front end. Everything numerical happens behind the C API in
// libpmclt; this translation unit only parses flags, shuttles JSON, and
// renders the fixed CSV layouts.
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pmclt.h>

namespace {

using nlohmann::json;

constexpr const char* kTool = "pseudomoment-clt";

int fail_record(const std::string& status_name, const std::string& message) {
  const std::string quoted = json(message).dump();
  std::fprintf(stderr, "{\"tool\": \"%s\", \"error\": {\"status\": \"%s\", \"message\": %s}}\n",
               kTool, status_name.c_str(), quoted.c_str());
  return 1;
}

int fail_status(pmclt_status st) {
  return fail_record(pmclt_status_name(st), pmclt_last_error());
}

/// 17-significant-digit rendering, matching the library's JSON output.
std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// One CSV cell from a JSON scalar. Non-finite values arrive as strings
/// ("nan", "+inf", "-inf") and pass through unquoted.
std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_bound(const json& doc) {
  std::string out = "n,kind,total,main_nu1_term,main_nu2_term,geometric_term,exponential_term,valid\n";
  for (const auto& entry : doc.at("results")) {
    for (const char* kind : {"theorem1", "corollary1", "theorem2", "remark1"}) {
      const auto& b = entry.at("bounds").at(kind);
      if (b.contains("skipped")) continue;
      out += cell(entry.at("n")) + "," + kind + "," + cell(b.at("total")) + ",";
      if (b.contains("terms")) {
        const auto& t = b.at("terms");
        out += cell(t.at("main_nu1_term")) + "," + cell(t.at("main_nu2_term")) + "," +
               cell(t.at("geometric_term")) + "," + cell(t.at("exponential_term"));
      } else {
        out += ",,,";
      }
      out += "," + cell(b.at("valid")) + "\n";
    }
  }
  return out;
}

std::string csv_empirical(const json& doc) {
  std::string out = "n,sup_cdf_dist,sup_pdf_dist,mc_ks,inversion_error_estimate\n";
  for (const auto& entry : doc.at("results")) {
    out += cell(entry.at("n")) + "," + cell(entry.at("sup_cdf_dist")) + "," +
           cell(entry.at("sup_pdf_dist")) + "," + cell(entry.at("mc_ks")) + "," +
           cell(entry.at("inversion_error_estimate")) + "\n";
  }
  return out;
}

std::string csv_verify(const json& doc) {
  std::string out = "n,kind,bound,observed,margin,pass\n";
  for (const auto& entry : doc.at("results")) {
    for (const auto& row : entry.at("checks")) {
      out += cell(entry.at("n")) + "," + cell(row.at("kind")) + "," + cell(row.at("bound")) +
             "," + cell(row.at("observed")) + "," + cell(row.at("margin")) + "," +
             cell(row.at("pass")) + "\n";
    }
  }
  return out;
}

std::string csv_lemma(const json& doc) {
  std::string out = "t,abs_f,envelope,branch,omega_abs,omega_bound,ok\n";
  for (const auto& row : doc.at("rows")) {
    out += cell(row.at("t")) + "," + cell(row.at("abs_f")) + "," + cell(row.at("envelope")) +
           "," + cell(row.at("branch")) + "," + cell(row.at("omega_abs")) + "," +
           cell(row.at("omega_bound")) + "," + cell(row.at("ok")) + "\n";
  }
  return out;
}

bool write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return true;
  }
  std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
  if (!os) return false;
  os << text;
  return static_cast<bool>(os.flush());
}

struct SpecHandle {
  pmclt_spec* ptr = nullptr;
  ~SpecHandle() { pmclt_spec_free(ptr); }
};

struct JsonString {
  char* ptr = nullptr;
  ~JsonString() { pmclt_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : std::string(ptr); }
};

struct CommonArgs {
  std::string spec_path;
  double example_epsilon = 0.0;
  bool has_epsilon = false;
  int m = 3;
  std::vector<std::int64_t> ns{1, 2, 4, 8, 16};
  std::string out_path;
  std::string format = "json";
};

struct GridArgs {
  long points = 0;
  double t_max = 0.0;
  long mc_samples = 0;
  std::int64_t mc_seed = 0;
  bool has_points = false, has_t_max = false, has_mc_samples = false, has_mc_seed = false;

  /// Only explicitly set knobs are forwarded, so library defaults stay
  /// authoritative. Empty string means "use defaults" (NULL at the C edge).
  std::string to_json() const {
    json j = json::object();
    if (has_points) j["points"] = points;
    if (has_t_max) j["t_cutoff"] = t_max;
    if (has_mc_samples) j["mc_samples"] = mc_samples;
    if (has_mc_seed) j["mc_seed"] = static_cast<std::uint64_t>(mc_seed);
    return j.empty() ? std::string() : j.dump();
  }
};

int acquire_spec(const CommonArgs& args, SpecHandle& spec) {
  const bool has_path = !args.spec_path.empty();
  if (has_path == args.has_epsilon)
    return fail_record("invalid_argument",
                       "exactly one of --spec and --example-epsilon is required");
  const pmclt_status st = has_path
                              ? pmclt_spec_load(args.spec_path.c_str(), &spec.ptr)
                              : pmclt_spec_example(args.example_epsilon, &spec.ptr);
  if (st != PMCLT_OK) return fail_status(st);
  return 0;
}

int emit(const json& doc, const std::string& text, const CommonArgs& args,
         const std::string& command) {
  std::string payload = text;
  if (args.format == "csv") {
    if (command == "bound") payload = csv_bound(doc);
    else if (command == "empirical") payload = csv_empirical(doc);
    else if (command == "verify") payload = csv_verify(doc);
    else payload = csv_lemma(doc);
  }
  if (!write_output(payload, args.out_path))
    return fail_record("io_error", "cannot write output file: " + args.out_path);
  return 0;
}

void add_source_flags(CLI::App* cmd, CommonArgs& args) {
  auto* spec_opt = cmd->add_option("--spec", args.spec_path, "Path to a spec JSON document");
  auto* eps_opt = cmd->add_option("--example-epsilon", args.example_epsilon,
                                  "Build the worked example family for this epsilon");
  spec_opt->excludes(eps_opt);
  eps_opt->excludes(spec_opt);
}

void add_output_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out_path, "Write the report here instead of stdout");
  cmd->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_grid_flags(CLI::App* cmd, GridArgs& grid) {
  cmd->add_option("--grid-points", grid.points, "Inversion grid size (power of two)");
  cmd->add_option("--t-max", grid.t_max, "Fixed cf cutoff (default: automatic)");
  cmd->add_option("--mc-samples", grid.mc_samples, "Monte Carlo sample count");
  cmd->add_option("--mc-seed", grid.mc_seed, "Monte Carlo seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berry-Esseen-type bounds from truncated pseudomoments"};
  app.require_subcommand(1);

  CommonArgs args;
  GridArgs grid;
  double example_cmd_eps = 0.0;
  std::int64_t lemma_n = 1;

  auto* bound = app.add_subcommand("bound", "Closed-form bound reports across n");
  add_source_flags(bound, args);
  bound->add_option("--m", args.m, "Pseudomoment order")->capture_default_str();
  bound->add_option("--n", args.ns, "Sum lengths (comma separated; default 1,2,4,8,16)")
      ->delimiter(',');
  add_output_flags(bound, args);

  auto* empirical = app.add_subcommand("empirical", "Measured distances via cf inversion");
  add_source_flags(empirical, args);
  empirical->add_option("--n", args.ns, "Sum lengths (comma separated)")
      ->delimiter(',')
      ->required();
  add_grid_flags(empirical, grid);
  add_output_flags(empirical, args);

  auto* verify = app.add_subcommand("verify", "Bounds vs measurements with pass/fail margins");
  add_source_flags(verify, args);
  verify->add_option("--m", args.m, "Pseudomoment order")->capture_default_str();
  verify->add_option("--n", args.ns, "Sum lengths (comma separated)")
      ->delimiter(',')
      ->required();
  add_grid_flags(verify, grid);
  add_output_flags(verify, args);

  auto* example = app.add_subcommand("example", "Emit the worked example spec document");
  example->add_option("--epsilon", example_cmd_eps, "Location of the density edit")->required();
  example->add_option("--out", args.out_path, "Write the spec here instead of stdout");

  auto* lemma = app.add_subcommand("lemma-check", "Sample the cf envelope and modulus bounds");
  add_source_flags(lemma, args);
  lemma->add_option("--m", args.m, "Pseudomoment order")->capture_default_str();
  lemma->add_option("--n", lemma_n, "Sum length for the truncation split")
      ->capture_default_str();
  add_output_flags(lemma, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const CLI::App* sub = app.get_subcommands().front();
  auto flag_given = [&](const std::string& name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  args.has_epsilon = flag_given("--example-epsilon");
  grid.has_points = flag_given("--grid-points");
  grid.has_t_max = flag_given("--t-max");
  grid.has_mc_samples = flag_given("--mc-samples");
  grid.has_mc_seed = flag_given("--mc-seed");

  if (example->parsed()) {
    SpecHandle spec;
    pmclt_status st = pmclt_spec_example(example_cmd_eps, &spec.ptr);
    if (st != PMCLT_OK) return fail_status(st);
    JsonString text;
    st = pmclt_spec_to_json(spec.ptr, &text.ptr);
    if (st != PMCLT_OK) return fail_status(st);
    if (!write_output(text.str(), args.out_path))
      return fail_record("io_error", "cannot write output file: " + args.out_path);
    return 0;
  }

  SpecHandle spec;
  if (const int rc = acquire_spec(args, spec); rc != 0) return rc;

  const std::string grid_json = grid.to_json();
  const char* grid_arg = grid_json.empty() ? nullptr : grid_json.c_str();

  pmclt_status st = PMCLT_OK;
  JsonString text;
  std::string command;
  int pass = 1;

  if (bound->parsed()) {
    command = "bound";
    st = pmclt_bound_json(spec.ptr, args.m, args.ns.data(), args.ns.size(), &text.ptr);
  } else if (empirical->parsed()) {
    command = "empirical";
    st = pmclt_empirical_json(spec.ptr, args.ns.data(), args.ns.size(), grid_arg, &text.ptr);
  } else if (verify->parsed()) {
    command = "verify";
    st = pmclt_verify_json(spec.ptr, args.m, args.ns.data(), args.ns.size(), grid_arg,
                           &text.ptr, &pass);
  } else {
    command = "lemma-check";
    st = pmclt_lemma_check_json(spec.ptr, args.m, lemma_n, 400, &text.ptr, &pass);
  }
  if (st != PMCLT_OK) return fail_status(st);

  json doc;
  if (args.format == "csv") doc = json::parse(text.str());
  if (const int rc = emit(doc, text.str(), args, command); rc != 0) return rc;

  // Exit taxonomy: 2 flags a failed mathematical check on an otherwise
  // successful run, distinct from engineering errors (1).
  if ((verify->parsed() || lemma->parsed()) && pass == 0) return 2;
  return 0;
}
