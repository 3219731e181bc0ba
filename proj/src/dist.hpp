#pragma once

#include <complex>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace pmclt {

inline constexpr double kTauMass = 1e-10;
inline constexpr double kTauMom = 1e-10;
inline constexpr double kTauQuad = 1e-10;
inline constexpr double kTauPseudo = 1e-8;
inline constexpr int kMaxMomentOrder = 12;
inline constexpr int kMaxPolyDegree = 16;
inline constexpr double kDefaultCfL1Cap = 1e6;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class PieceFamily { gaussian_restriction, uniform, polynomial };

const char* family_name(PieceFamily f);

/// One absolutely continuous component: density(x) = weight * base(x) on
/// [a, b], where base is phi(x), the constant 1, or sum_j c_j x^j. For the
/// uniform family the weight therefore *is* the height.
struct DensityPiece {
  PieceFamily family = PieceFamily::uniform;
  double a = 0.0;
  double b = 0.0;  // a < b; infinite endpoints allowed for gaussian_restriction only
  double weight = 1.0;
  std::vector<double> coefficients;  // polynomial only: c0..cd

  double density_at(double x) const;
  double mass() const;
  double raw_moment(int k) const;  // int_a^b x^k * weight * base(x) dx
  std::complex<double> cf(double t) const;
  double partial_cdf(double x) const;  // int_a^min(x,b) restricted below by a
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

struct DistributionSpec {
  double sigma = 1.0;
  std::vector<DensityPiece> pieces;
  std::vector<Atom> atoms;
  std::map<std::string, double> metadata;

  /// Finite piece endpoints and atom locations, sorted and deduplicated.
  std::vector<double> breakpoints() const;
  /// Largest |x| carrying structure (finite endpoints / atoms), at least 1.
  double max_abscissa() const;
  bool has_gaussian_tails() const;
};

struct ValidationReport {
  double mass_defect = 0.0;  // total mass - 1, signed
  double mean = 0.0;
  double variance = 0.0;
  double density_sup = 0.0;        // A1, sup of the absolutely continuous part
  double cf_l1_norm = 0.0;         // A, integrated over [-T_cf, T_cf]
  double cf_l1_truncation_error = 0.0;
  double cf_l1_cutoff = 0.0;       // the T_cf actually reached (not serialized)
};

double pdf(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);
std::complex<double> cf(const DistributionSpec& spec, double t);
double moment(const DistributionSpec& spec, int k);

/// Checks every structural and integral invariant; throws SpecInvalid with a
/// message listing all violations. cf_l1_cap bounds the |f| truncation window
/// (tests shrink it; the default matches the documented cap).
ValidationReport validate(const DistributionSpec& spec, double cf_l1_cap = kDefaultCfL1Cap);

/// Structural checks only (families, intervals, weights, nonnegativity).
/// validate() calls this first; deserialization also uses it.
void check_structure(const DistributionSpec& spec);

}  // namespace pmclt
