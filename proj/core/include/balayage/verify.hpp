#pragma once

// Verification suites. Each suite sweeps scales, arcs or point
// pairs, records ratios whose boundedness is the claim under test, and reduces
// them to a verdict with one of two shared rules:
//
//   trend rule: max over the three finest scales <= 3 x median over all scales
//   tier rule:  max over the boundary tier <= 3 x median over the interior tier
//
// A TREND_VIOLATION is a finding, not an exception.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "balayage/geometry.hpp"
#include "balayage/measures.hpp"
#include "balayage/numerics.hpp"
#include "balayage/operators.hpp"

namespace balayage {

enum class TheoremId { thm1, campanato, bbal_lip, besov_lip, weight_shift, embedding, square_disk };
enum class Verdict { bounded, trend_violation, resolution_limited };

std::string to_string(TheoremId id);
std::string to_string(Verdict v);

struct Sample {
  std::string label;
  double ratio;
};

struct VerificationReport {
  TheoremId theorem_id = TheoremId::thm1;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<Sample> samples;
  double empirical_sup = 0.0;
  Verdict verdict = Verdict::bounded;
  double error_budget = 0.0;
  std::vector<std::string> flags;
  std::vector<std::pair<std::string, double>> diagnostics;

  std::optional<double> parameter(const std::string& name) const;
  std::optional<double> diagnostic(const std::string& name) const;
};

inline constexpr double kTrendFactor = 3.0;

double median(std::vector<double> values);
Verdict trend_verdict(std::span<const double> per_scale_max);
Verdict tier_verdict(std::span<const double> boundary, std::span<const double> interior);

// Shared numerical settings for the suites.
struct SuiteSettings {
  QuadratureRule rule = build_disk_rule(16, 128, 10);
  int grid_n = 4096;
  double max_radius = 1.0 - std::ldexp(1.0, -10);  // largest |z| a sweep may use
};

struct ScaleRange {
  int min;
  int max;
};

// Weighted oscillation functional of S_mu over dyadic arcs; trend rule on per-scale maxima.
VerificationReport verify_thm1(const Measure& mu, double s, double gamma, ScaleRange depths,
                               const SuiteSettings& settings = {});

// Campanato L^{1,s} oscillation of S_mu; trend rule, plus the per-arc check that
// the oscillation is dominated by the gamma = 0 double integral.
VerificationReport verify_campanato_membership(const Measure& mu, double s, ScaleRange depths,
                                               const SuiteSettings& settings = {});

enum class PairTier { interior, near_diagonal, boundary };
std::string to_string(PairTier tier);

struct PointPair {
  PairTier tier;
  DiskPoint z;
  DiskPoint w;
};

// Seeded three-tier pair set: interior random (|z|, |w| <= 0.5), near-diagonal
// (beta in [1e-4, 1e-2]) and boundary-approaching (|z| = 1 - 2^-k up to
// max_radius, partners one step further out on the ray and one step along
// the circle).
std::vector<PointPair> lipschitz_pairs(std::uint64_t seed, int per_tier, double max_radius);

// |G_mu(z) - G_mu(w)| / beta(z, w)^{1/p}; tier rule.
VerificationReport verify_bbalayage_lipschitz(const Measure& mu, double p,
                                              const std::vector<PointPair>& pairs,
                                              const SuiteSettings& settings = {});

// |f(z) - f(w)| / (||f||_{B_p} beta(z, w)^{1/q}); tier rule.
VerificationReport verify_besov_lipschitz(const Polynomial& f, double p,
                                          const std::vector<PointPair>& pairs,
                                          const SuiteSettings& settings = {});

// Log-log slopes of per-scale box masses for mu and its (1 - |z|)^sigma
// transform; BOUNDED iff the slopes differ by sigma within 0.1.
VerificationReport verify_weight_shift(const Measure& mu, double sigma, double s,
                                       ScaleRange depths, const SuiteSettings& settings = {});

inline constexpr double kSlopeTolerance = 0.1;

struct TestFunction {
  std::string label;  // "interior:..." or "boundary:..."
  Polynomial f;
};

// Monomials up to degree 8 (interior tier) and degree-24 Taylor truncations of
// kernel functions (1 - conj(a) z)^{-m} and Moebius powers (boundary tier).
std::vector<TestFunction> default_embedding_functions();

// integral |f|^p d mu / integral |f|^p dA_alpha over the test class; tier rule.
VerificationReport verify_embedding(const Measure& mu, double alpha, double p,
                                    const std::vector<TestFunction>& test_functions,
                                    const SuiteSettings& settings = {});

// Square and hyperbolic-disk Carleson constants; BOUNDED iff both are positive
// and their ratio lies in [1e-3, 1e3].
VerificationReport verify_square_disk_equivalence(const Measure& mu, double s, int depth, double r,
                                                  const std::vector<DiskPoint>& centers,
                                                  const SuiteSettings& settings = {});

}  // namespace balayage
