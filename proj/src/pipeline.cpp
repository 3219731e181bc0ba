#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <string>
#include <vector>

#include "errors.hpp"
#include "spec_io.hpp"

namespace pmclt {
namespace {

constexpr const char* kToolName = "pseudomoment-clt";

std::vector<long> normalized_ns(std::vector<long> ns) {
  require(!ns.empty(), errc::invalid_argument, "at least one n is required");
  for (long n : ns)
    require(n >= 1, errc::n_out_of_range, "n must be at least 1 (got " + std::to_string(n) + ")");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

/// Index-ordered fan-out: fn(i) fills slot i of a pre-sized results vector,
/// so the worker count never changes the document.
template <typename F>
void for_each_index(long count, F&& fn) {
  const int workers = std::min<long>(worker_threads(), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::future<void>> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    }));
  }
  for (auto& f : pool) f.get();
}

ordered_json skipped(const std::string& reason) {
  ordered_json j;
  j["skipped"] = reason;
  return j;
}

/// Bounds block for one n. Inapplicable families are recorded, not omitted,
/// so consumers can tell "not applicable" from "not requested".
ordered_json bounds_block(const DistributionSpec& spec, const ValidationReport& val,
                          const PseudomomentReport& pm, int m, long n) {
  BoundInputs in;
  in.m = m;
  in.n = n;
  in.nu1 = pm.nu1;
  in.nu2 = pm.nu2;
  in.nu = pm.nu;
  in.condition_ii_ok = pm.condition_ii_ok;
  in.cf_l1 = val.cf_l1_norm;
  in.cf_l1_truncation = val.cf_l1_truncation_error;
  in.density_sup = val.density_sup;
  in.sigma = spec.sigma;
  in.atoms_present = !spec.atoms.empty();

  ordered_json out;
  if (n < 2)
    out["theorem1"] = skipped("requires n >= 2");
  else if (in.atoms_present)
    out["theorem1"] = skipped("requires an integrable cf; the spec carries atoms");
  else
    out["theorem1"] = bound_to_json(theorem1_bound(in));

  if (n < 3)
    out["corollary1"] = skipped("requires n >= 3");
  else if (in.atoms_present)
    out["corollary1"] = skipped("requires a bounded density; the spec carries atoms");
  else
    out["corollary1"] = bound_to_json(corollary1_bound(in));

  if (n < 2)
    out["theorem2"] = skipped("requires n >= 2");
  else if (in.atoms_present)
    out["theorem2"] = skipped("requires an integrable cf; the spec carries atoms");
  else
    out["theorem2"] = bound_to_json(theorem2_bound(in));

  if (n == 1)
    out["remark1"] = bound_to_json(remark1_bound(m, pm.nu1, pm.moments_zero_ok));
  else
    out["remark1"] = skipped("applies only to n = 1");
  return out;
}

ordered_json document_head(const char* command, const DistributionSpec& spec,
                           const ValidationReport& val) {
  ordered_json doc;
  doc["tool"] = kToolName;
  doc["command"] = command;
  doc["spec"] = spec_to_json(spec);
  doc["validation"] = validation_to_json(val);
  return doc;
}

ordered_json sign_changes_json(const SignedMeasureH& h) {
  ordered_json arr = ordered_json::array();
  for (double x : h.sign_change_points) arr.push_back(x);
  return arr;
}

struct VerifyRow {
  std::string kind;
  double bound = 0.0;
  double observed = 0.0;
  double margin = 0.0;
  bool pass = false;
};

VerifyRow make_row(const std::string& kind, double bound, double observed, double tol) {
  VerifyRow row;
  row.kind = kind;
  row.bound = bound;
  row.observed = observed;
  row.margin = bound - observed;
  row.pass = row.margin >= -tol;
  return row;
}

ordered_json row_to_json(const VerifyRow& row) {
  ordered_json j;
  j["kind"] = row.kind;
  j["bound"] = row.bound;
  j["observed"] = row.observed;
  j["margin"] = row.margin;
  j["pass"] = row.pass;
  return j;
}

}  // namespace

int worker_threads() {
  const char* env = std::getenv("PSEUDOMOMENT_CLT_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min(v, 64L));
}

ordered_json validation_to_json(const ValidationReport& rep) {
  ordered_json j;
  j["mass_defect"] = rep.mass_defect;
  j["mean"] = rep.mean;
  j["variance"] = rep.variance;
  j["density_sup"] = rep.density_sup;
  j["cf_l1_norm"] = rep.cf_l1_norm;
  j["cf_l1_truncation_error"] = rep.cf_l1_truncation_error;
  return j;
}

ordered_json pseudomoments_to_json(const PseudomomentReport& rep) {
  ordered_json j;
  j["m"] = rep.m;
  ordered_json mu = ordered_json::array();
  for (double v : rep.mu) mu.push_back(v);
  j["mu"] = mu;
  j["nu1"] = rep.nu1;
  j["nu2"] = rep.nu2;
  j["nu"] = rep.nu;
  j["n"] = rep.n;
  j["condition_ii_ok"] = rep.condition_ii_ok;
  j["tolerances"]["tau_pseudo"] = kTauPseudo;
  j["tolerances"]["half_e_threshold"] = half_e_threshold();
  return j;
}

ordered_json thresholds_to_json(const Thresholds& th) {
  ordered_json j;
  j["t1"] = th.t1;
  j["t2"] = th.t2;
  j["t3"] = th.t3;
  j["c1mn"] = th.c1mn;
  j["c2mn"] = th.c2mn;
  return j;
}

ordered_json bound_to_json(const BoundReport& rep) {
  ordered_json j;
  j["kind"] = rep.kind;
  j["m"] = rep.m;
  j["n"] = rep.n;
  j["nu1"] = rep.nu1;
  if (!rep.has_remark_constants) {
    j["nu2"] = rep.nu2;
    j["nu"] = rep.nu;
    j["a"] = rep.a;
    j["a1"] = rep.a1;
    j["sigma"] = rep.sigma;
    j["b"] = rep.b;
    j["b1"] = rep.b1;
  }
  j["total"] = rep.total;
  if (!rep.has_remark_constants) {
    ordered_json terms;
    terms["main_nu1_term"] = rep.main_nu1_term;
    terms["main_nu2_term"] = rep.main_nu2_term;
    terms["geometric_term"] = rep.geometric_term;
    terms["exponential_term"] = rep.exponential_term;
    j["terms"] = terms;
  }
  if (rep.has_proof_variant) {
    j["exponential_term_proof_variant"] = rep.exponential_term_proof_variant;
    j["total_proof_variant"] = rep.total_proof_variant;
  }
  if (rep.has_remark_constants) {
    j["constant"] = rep.constant;
    j["constant_stated_variant"] = rep.constant_stated_variant;
    j["total_stated_variant"] = rep.total_stated_variant;
  }
  j["valid"] = rep.valid;
  ordered_json notes = ordered_json::array();
  for (const auto& s : rep.validity_notes) notes.push_back(s);
  j["validity_notes"] = notes;
  return j;
}

ordered_json grid_to_json(const GridConfig& cfg) {
  ordered_json j;
  j["x_halfwidth"] = cfg.x_halfwidth;
  j["points"] = cfg.points;
  j["t_cutoff"] = cfg.t_cutoff;
  j["quad_tol"] = cfg.quad_tol;
  j["mc_samples"] = cfg.mc_samples;
  j["mc_seed"] = cfg.mc_seed;
  return j;
}

ordered_json empirical_to_json(const EmpiricalReport& rep) {
  ordered_json j;
  j["n"] = rep.n;
  j["sup_cdf_dist"] = rep.sup_cdf_dist;
  j["sup_pdf_dist"] = rep.sup_pdf_dist;
  j["mc_ks"] = rep.mc_ks;
  j["inversion_error_estimate"] = rep.inversion_error_estimate;
  j["grid"] = grid_to_json(rep.grid);
  return j;
}

ordered_json lemma_check_to_json(const LemmaCheckReport& rep) {
  ordered_json j;
  j["m"] = rep.m;
  j["n"] = rep.n;
  j["t1"] = rep.t1;
  j["pseudomoments"] = pseudomoments_to_json(rep.pseudomoments);
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    ordered_json row;
    row["t"] = r.t;
    row["abs_f"] = r.abs_f;
    row["envelope"] = r.envelope;
    row["branch"] = r.branch;
    row["omega_abs"] = r.omega_abs;
    row["omega_bound"] = r.omega_bound;
    row["ok"] = r.ok;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["violations"] = rep.violations;
  j["ok"] = rep.ok;
  return j;
}

ordered_json bound_document(const DistributionSpec& spec, int m, std::vector<long> ns) {
  const auto list = normalized_ns(std::move(ns));
  const auto val = validate(spec);
  const auto h = build_h(spec);

  std::vector<ordered_json> results(list.size());
  for_each_index(static_cast<long>(list.size()), [&](long i) {
    const long n = list[static_cast<size_t>(i)];
    const auto pm = pseudomoment_report(h, m, n);
    ordered_json entry;
    entry["n"] = n;
    entry["pseudomoments"] = pseudomoments_to_json(pm);
    entry["thresholds"] = thresholds_to_json(thresholds(m, n, pm.nu1, pm.nu2, pm.nu));
    entry["bounds"] = bounds_block(spec, val, pm, m, n);
    results[static_cast<size_t>(i)] = std::move(entry);
  });

  ordered_json doc = document_head("bound", spec, val);
  doc["m"] = m;
  doc["sign_change_points"] = sign_changes_json(h);
  doc["results"] = ordered_json::array();
  for (auto& r : results) doc["results"].push_back(std::move(r));
  return doc;
}

ordered_json empirical_document(const DistributionSpec& spec, std::vector<long> ns,
                                const GridConfig& grid) {
  const auto list = normalized_ns(std::move(ns));
  const auto val = validate(spec);

  std::vector<ordered_json> results(list.size());
  for_each_index(static_cast<long>(list.size()), [&](long i) {
    const long n = list[static_cast<size_t>(i)];
    results[static_cast<size_t>(i)] = empirical_to_json(empirical_report(spec, n, grid));
  });

  ordered_json doc = document_head("empirical", spec, val);
  doc["results"] = ordered_json::array();
  for (auto& r : results) doc["results"].push_back(std::move(r));
  return doc;
}

ordered_json verify_document(const DistributionSpec& spec, int m, std::vector<long> ns,
                             const GridConfig& grid) {
  const auto list = normalized_ns(std::move(ns));
  const auto val = validate(spec);
  const auto h = build_h(spec);

  std::vector<ordered_json> results(list.size());
  std::vector<char> passed(list.size(), 1);
  for_each_index(static_cast<long>(list.size()), [&](long i) {
    const long n = list[static_cast<size_t>(i)];
    const auto pm = pseudomoment_report(h, m, n);
    const auto emp = empirical_report(spec, n, grid);
    const auto blk = bounds_block(spec, val, pm, m, n);
    const double tol = emp.inversion_error_estimate;

    std::vector<VerifyRow> rows;
    if (blk["theorem1"].contains("total"))
      rows.push_back(make_row("theorem1", blk["theorem1"]["total"].get<double>(),
                              emp.sup_cdf_dist, tol));
    if (blk["corollary1"].contains("total"))
      rows.push_back(make_row("corollary1", blk["corollary1"]["total"].get<double>(),
                              emp.sup_cdf_dist, tol));
    if (blk["theorem2"].contains("total")) {
      rows.push_back(make_row("theorem2", blk["theorem2"]["total"].get<double>(),
                              emp.sup_pdf_dist, tol));
      rows.push_back(make_row("theorem2_proof_variant",
                              blk["theorem2"]["total_proof_variant"].get<double>(),
                              emp.sup_pdf_dist, tol));
    }
    if (blk["remark1"].contains("total"))
      rows.push_back(make_row("remark1", blk["remark1"]["total"].get<double>(),
                              emp.sup_cdf_dist, tol));

    bool all = true;
    ordered_json checks = ordered_json::array();
    for (const auto& row : rows) {
      all = all && row.pass;
      checks.push_back(row_to_json(row));
    }
    passed[static_cast<size_t>(i)] = all ? 1 : 0;

    ordered_json entry;
    entry["n"] = n;
    entry["pseudomoments"] = pseudomoments_to_json(pm);
    entry["thresholds"] = thresholds_to_json(thresholds(m, n, pm.nu1, pm.nu2, pm.nu));
    entry["bounds"] = blk;
    entry["empirical"] = empirical_to_json(emp);
    entry["checks"] = checks;
    entry["pass"] = all;
    results[static_cast<size_t>(i)] = std::move(entry);
  });

  bool all = true;
  for (char p : passed) all = all && (p != 0);

  ordered_json doc = document_head("verify", spec, val);
  doc["m"] = m;
  doc["sign_change_points"] = sign_changes_json(h);
  doc["results"] = ordered_json::array();
  for (auto& r : results) doc["results"].push_back(std::move(r));
  doc["pass"] = all;
  return doc;
}

ordered_json lemma_check_document(const DistributionSpec& spec, int m, long n,
                                  int points_per_branch) {
  const auto val = validate(spec);
  const auto rep = lemma_check(spec, m, n, points_per_branch);
  ordered_json doc = document_head("lemma-check", spec, val);
  doc.update(lemma_check_to_json(rep));
  return doc;
}

}  // namespace pmclt
