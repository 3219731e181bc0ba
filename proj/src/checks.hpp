#pragma once

#include <vector>

#include "dist.hpp"
#include "signed_measure.hpp"

namespace pmclt {

struct LemmaCheckRow {
  double t = 0.0;
  double abs_f = 0.0;       // |f(t / sigma)|, the standardized single-draw cf
  double envelope = 0.0;    // lemma-2 envelope at t
  int branch = 1;           // 1: exp(-t^2/6), 2: (2e + 3/8) nu |t|^{m+1}
  double omega_abs = 0.0;   // |f(t/sigma) - e^{-t^2/2}|
  double omega_bound = 0.0; // lemma-1 modulus bound at t
  bool ok = true;
};

struct LemmaCheckReport {
  int m = 3;
  long n = 1;
  double t1 = 0.0;
  PseudomomentReport pseudomoments;
  std::vector<LemmaCheckRow> rows;
  long violations = 0;
  bool ok = false;
};

/// Samples both lemma-2 branches (points_per_branch each: (0, t1] and
/// (t1, 4 t1]) and checks envelope domination plus the lemma-1 bound on the
/// cf remainder. Requires condition (ii) for the envelope to mean anything
/// (NuOutOfRange otherwise). nu == 0 degenerates to the gaussian branch on
/// (0, 20].
LemmaCheckReport lemma_check(const DistributionSpec& spec, int m, long n,
                             int points_per_branch = 400);

/// Same checks against an externally supplied pseudomoment report, so a
/// deliberately corrupted report can be shown to produce violations.
LemmaCheckReport lemma_check_with(const DistributionSpec& spec, const PseudomomentReport& pm,
                                  int points_per_branch = 400);

}  // namespace pmclt
