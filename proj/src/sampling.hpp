#pragma once

#include <cstdint>
#include <vector>

#include "dist.hpp"

namespace pmclt {

/// Counter-mode splitmix64: stateless by construction, so parallel workers
/// can carve disjoint counter ranges from the same seed and results never
/// depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t counter_start = 0)
      : seed_(seed), counter_(counter_start) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_unit();
  /// Standard normal via Box-Muller (no state carried between calls).
  double next_gauss();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// One draw from the spec's distribution (pieces by mass table, atoms by
/// mass; gaussian restrictions by rejection against the full normal,
/// polynomial pieces by monotone inverse-CDF iteration).
double sample_spec(const DistributionSpec& spec, Rng& rng);

/// One-sample Kolmogorov-Smirnov statistic of standardized n-fold sums
/// against the standard normal: draws `samples` sums, each of n spec draws,
/// scaled by 1/(sigma sqrt(n)).
double mc_ks_statistic(const DistributionSpec& spec, long n, long samples, std::uint64_t seed);

}  // namespace pmclt
