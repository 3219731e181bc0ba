#pragma once

#include <vector>

#include "json.hpp"

#include "bounds.hpp"
#include "checks.hpp"
#include "dist.hpp"
#include "inversion.hpp"
#include "signed_measure.hpp"

namespace pmclt {

using ordered_json = nlohmann::ordered_json;

ordered_json validation_to_json(const ValidationReport& rep);
ordered_json pseudomoments_to_json(const PseudomomentReport& rep);
ordered_json thresholds_to_json(const Thresholds& th);
ordered_json bound_to_json(const BoundReport& rep);
ordered_json grid_to_json(const GridConfig& cfg);
ordered_json empirical_to_json(const EmpiricalReport& rep);
ordered_json lemma_check_to_json(const LemmaCheckReport& rep);

/// Number of worker threads for the per-n fan-out, from the
/// PSEUDOMOMENT_CLT_THREADS environment variable (>= 1; unset or invalid
/// values fall back to 1, so results are reproducible by default).
int worker_threads();

/// All document builders validate the spec first and echo it back, so any
/// output file is self-describing and re-loadable. The n list is sorted and
/// deduplicated; each n contributes one entry of "results".

/// Closed-form bounds for each n: pseudomoments, split thresholds, and the
/// applicable bound family (inapplicable ones carry a "skipped" reason).
ordered_json bound_document(const DistributionSpec& spec, int m, std::vector<long> ns);

/// Measured distances for each n via cf inversion (n >= 2) or the analytic
/// single-draw path (n = 1).
ordered_json empirical_document(const DistributionSpec& spec, std::vector<long> ns,
                                const GridConfig& grid);

/// Bounds and measurements side by side; each comparison row records
/// margin = bound - observed and passes when the margin is no smaller than
/// -(inversion error estimate). The document-level "pass" ANDs the rows.
ordered_json verify_document(const DistributionSpec& spec, int m, std::vector<long> ns,
                             const GridConfig& grid);

ordered_json lemma_check_document(const DistributionSpec& spec, int m, long n,
                                  int points_per_branch = 400);

}  // namespace pmclt
