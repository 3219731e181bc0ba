#include "pmclt.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "dist.hpp"
#include "errors.hpp"
#include "example.hpp"
#include "inversion.hpp"
#include "jsonfmt.hpp"
#include "pipeline.hpp"
#include "signed_measure.hpp"
#include "spec_io.hpp"

struct pmclt_spec {
  pmclt::DistributionSpec value;
};

namespace {

thread_local std::string g_last_error;

pmclt_status to_status(pmclt::errc c) { return static_cast<pmclt_status>(static_cast<int>(c)); }

/// Runs fn inside the exception barrier; nothing C++ crosses the ABI edge.
template <typename F>
pmclt_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PMCLT_OK;
  } catch (const pmclt::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PMCLT_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown failure";
    return PMCLT_INTERNAL_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) pmclt::fail(pmclt::errc::internal_error, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit_json(const pmclt::ordered_json& doc, char** out_json) {
  *out_json = dup_string(pmclt::dump_json17(doc));
}

void check_out(const void* p) {
  pmclt::require(p != nullptr, pmclt::errc::invalid_argument, "out-parameter must not be null");
}

void check_spec(const pmclt_spec* spec) {
  pmclt::require(spec != nullptr, pmclt::errc::invalid_argument, "spec handle must not be null");
}

std::vector<long> to_ns(const int64_t* ns, size_t count) {
  pmclt::require(ns != nullptr && count > 0, pmclt::errc::invalid_argument,
                 "ns must point at least one entry");
  std::vector<long> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(static_cast<long>(ns[i]));
  return out;
}

pmclt::GridConfig parse_grid(const char* grid_json) {
  pmclt::GridConfig cfg;
  if (grid_json == nullptr || *grid_json == '\0') return cfg;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(grid_json);
  } catch (const nlohmann::json::exception& e) {
    pmclt::fail(pmclt::errc::parse_error, std::string("grid config: ") + e.what());
  }
  pmclt::require(j.is_object(), pmclt::errc::parse_error, "grid config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "x_halfwidth")
      cfg.x_halfwidth = value.get<double>();
    else if (key == "points")
      cfg.points = value.get<long>();
    else if (key == "t_cutoff")
      cfg.t_cutoff = value.get<double>();
    else if (key == "quad_tol")
      cfg.quad_tol = value.get<double>();
    else if (key == "mc_samples")
      cfg.mc_samples = value.get<long>();
    else if (key == "mc_seed")
      cfg.mc_seed = value.get<std::uint64_t>();
    else
      pmclt::fail(pmclt::errc::parse_error, "grid config: unknown key \"" + key + "\"");
  }
  return cfg;
}

}  // namespace

extern "C" {

const char* pmclt_status_name(pmclt_status status) {
  return pmclt::errc_name(static_cast<pmclt::errc>(static_cast<int>(status)));
}

const char* pmclt_last_error(void) { return g_last_error.c_str(); }

pmclt_status pmclt_spec_parse(const char* json_text, pmclt_spec** out) {
  return guarded([&] {
    check_out(out);
    pmclt::require(json_text != nullptr, pmclt::errc::invalid_argument,
                   "json_text must not be null");
    auto spec = pmclt::parse_spec_text(json_text);
    *out = new pmclt_spec{std::move(spec)};
  });
}

pmclt_status pmclt_spec_load(const char* path, pmclt_spec** out) {
  return guarded([&] {
    check_out(out);
    pmclt::require(path != nullptr, pmclt::errc::invalid_argument, "path must not be null");
    auto spec = pmclt::load_spec_file(path);
    *out = new pmclt_spec{std::move(spec)};
  });
}

pmclt_status pmclt_spec_example(double epsilon, pmclt_spec** out) {
  return guarded([&] {
    check_out(out);
    *out = new pmclt_spec{pmclt::build_example(epsilon)};
  });
}

pmclt_status pmclt_spec_to_json(const pmclt_spec* spec, char** out_json) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    emit_json(pmclt::spec_to_json(spec->value), out_json);
  });
}

void pmclt_spec_free(pmclt_spec* spec) { delete spec; }

void pmclt_string_free(char* s) { std::free(s); }

pmclt_status pmclt_spec_sigma(const pmclt_spec* spec, double* out) {
  return guarded([&] {
    check_spec(spec);
    check_out(out);
    *out = spec->value.sigma;
  });
}

pmclt_status pmclt_pdf(const pmclt_spec* spec, double x, double* out) {
  return guarded([&] {
    check_spec(spec);
    check_out(out);
    *out = pmclt::pdf(spec->value, x);
  });
}

pmclt_status pmclt_cdf(const pmclt_spec* spec, double x, double* out) {
  return guarded([&] {
    check_spec(spec);
    check_out(out);
    *out = pmclt::cdf(spec->value, x);
  });
}

pmclt_status pmclt_cf(const pmclt_spec* spec, double t, double* out_re, double* out_im) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_re);
    check_out(out_im);
    const auto v = pmclt::cf(spec->value, t);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

pmclt_status pmclt_moment(const pmclt_spec* spec, int k, double* out) {
  return guarded([&] {
    check_spec(spec);
    check_out(out);
    *out = pmclt::moment(spec->value, k);
  });
}

pmclt_status pmclt_validation_json(const pmclt_spec* spec, char** out_json) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    emit_json(pmclt::validation_to_json(pmclt::validate(spec->value)), out_json);
  });
}

pmclt_status pmclt_pseudomoments_json(const pmclt_spec* spec, int m, int64_t n,
                                      char** out_json) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    const auto h = pmclt::build_h(spec->value);
    emit_json(pmclt::pseudomoments_to_json(
                  pmclt::pseudomoment_report(h, m, static_cast<long>(n))),
              out_json);
  });
}

pmclt_status pmclt_bound_json(const pmclt_spec* spec, int m, const int64_t* ns, size_t count,
                              char** out_json) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    emit_json(pmclt::bound_document(spec->value, m, to_ns(ns, count)), out_json);
  });
}

pmclt_status pmclt_empirical_json(const pmclt_spec* spec, const int64_t* ns, size_t count,
                                  const char* grid_json, char** out_json) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    emit_json(pmclt::empirical_document(spec->value, to_ns(ns, count), parse_grid(grid_json)),
              out_json);
  });
}

pmclt_status pmclt_verify_json(const pmclt_spec* spec, int m, const int64_t* ns, size_t count,
                               const char* grid_json, char** out_json, int* out_pass) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    const auto doc =
        pmclt::verify_document(spec->value, m, to_ns(ns, count), parse_grid(grid_json));
    if (out_pass != nullptr) *out_pass = doc.at("pass").get<bool>() ? 1 : 0;
    emit_json(doc, out_json);
  });
}

pmclt_status pmclt_lemma_check_json(const pmclt_spec* spec, int m, int64_t n,
                                    int points_per_branch, char** out_json, int* out_ok) {
  return guarded([&] {
    check_spec(spec);
    check_out(out_json);
    const auto doc = pmclt::lemma_check_document(spec->value, m, static_cast<long>(n),
                                                 points_per_branch);
    if (out_ok != nullptr) *out_ok = doc.at("ok").get<bool>() ? 1 : 0;
    emit_json(doc, out_json);
  });
}

}  // extern "C"
