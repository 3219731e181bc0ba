#include "sampling.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "special.hpp"

namespace pmclt {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ull;
  ++counter_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_gauss() {
  // Box-Muller; u1 shifted away from 0 so the log stays finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

namespace {

double sample_gaussian_restriction(const DensityPiece& p, Rng& rng) {
  // Rejection against the full normal; acceptance equals the piece's base
  // mass, which stays O(1) for the specs this toolkit targets.
  for (int tries = 0; tries < 200000; ++tries) {
    const double z = rng.next_gauss();
    if (z >= p.a && z <= p.b) return z;
  }
  fail(errc::internal_error, "gaussian restriction rejection sampler starved; piece mass too small");
}

double sample_polynomial(const DensityPiece& p, Rng& rng) {
  // Inverse CDF: the partial cdf is monotone (density >= 0), so bisection
  // with a Newton polish is unconditionally safe.
  const double mass = p.mass();
  const double target = rng.next_unit() * mass;
  double lo = p.a, hi = p.b;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 80; ++it) {
    const double c = p.partial_cdf(x) - target;
    if (c > 0.0) hi = x; else lo = x;
    const double d = p.density_at(x);
    double nx = d > 0.0 ? x - c / d : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) < 1e-14 * (1.0 + std::abs(x))) return nx;
    x = nx;
  }
  return x;
}

}  // namespace

double sample_spec(const DistributionSpec& spec, Rng& rng) {
  double u = rng.next_unit();  // total mass is 1 by validation
  for (const auto& at : spec.atoms) {
    if (u < at.mass) return at.location;
    u -= at.mass;
  }
  for (size_t i = 0; i < spec.pieces.size(); ++i) {
    const double m = spec.pieces[i].mass();
    if (u < m || i + 1 == spec.pieces.size()) {
      const auto& p = spec.pieces[i];
      switch (p.family) {
        case PieceFamily::gaussian_restriction: return sample_gaussian_restriction(p, rng);
        case PieceFamily::uniform: return p.a + (p.b - p.a) * rng.next_unit();
        case PieceFamily::polynomial: return sample_polynomial(p, rng);
      }
    }
    u -= m;
  }
  fail(errc::internal_error, "sample_spec fell through the mass table");
}

double mc_ks_statistic(const DistributionSpec& spec, long n, long samples, std::uint64_t seed) {
  require(n >= 1, errc::n_out_of_range, "n must be at least 1");
  require(samples >= 10, errc::invalid_argument, "need at least 10 Monte Carlo samples");
  std::vector<double> sums(static_cast<size_t>(samples));
  const double scale = 1.0 / (spec.sigma * std::sqrt(static_cast<double>(n)));
  Rng rng(seed);
  for (long i = 0; i < samples; ++i) {
    double s = 0.0;
    for (long j = 0; j < n; ++j) s += sample_spec(spec, rng);
    sums[static_cast<size_t>(i)] = s * scale;
  }
  std::sort(sums.begin(), sums.end());
  double ks = 0.0;
  const double inv = 1.0 / static_cast<double>(samples);
  for (long i = 0; i < samples; ++i) {
    const double c = normal_cdf(sums[static_cast<size_t>(i)]);
    ks = std::max(ks, std::max(std::abs((i + 1) * inv - c), std::abs(c - i * inv)));
  }
  return ks;
}

}  // namespace pmclt
