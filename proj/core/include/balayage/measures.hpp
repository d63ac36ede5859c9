#pragma once

// Finite positive Borel measures on the disk and Carleson-constant estimators.

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "balayage/geometry.hpp"
#include "balayage/numerics.hpp"

namespace balayage {

struct Atom {
  DiskPoint point;
  double mass;
};

struct AtomicMeasure {
  std::vector<Atom> atoms;
};

// Unit-mass length measure on the radius { r e^{i angle} : 0 <= r < 1 }.
struct RadialSegmentMeasure {
  double angle;
};

// dA_alpha = (alpha + 1)(1 - |z|^2)^alpha dA, a probability measure.
struct WeightedAreaMeasure {
  double alpha;
};

// Uniform mass spread over the Euclidean disk |z - center| < radius, which
// must lie inside the unit disk. Used as a mollified atom.
struct CapMeasure {
  DiskPoint center;
  double radius;
  double mass;
};

class Measure;

// d nu = (1 - |z|)^sigma d base
struct WeightTransformMeasure {
  std::shared_ptr<const Measure> base;
  double sigma;
};

class Measure {
 public:
  using Variant = std::variant<AtomicMeasure, RadialSegmentMeasure, WeightedAreaMeasure,
                               CapMeasure, WeightTransformMeasure>;

  static Measure atomic(std::vector<Atom> atoms);
  static Measure dirac(DiskPoint point, double mass = 1.0);
  static Measure radial_segment(double angle);
  static Measure weighted_area(double alpha);
  static Measure cap(DiskPoint center, double radius, double mass);

  const Variant& variant() const { return variant_; }
  double total_mass() const;

 private:
  explicit Measure(Variant v) : variant_(std::move(v)) {}
  friend Measure weight_transform(const Measure& mu, double sigma);

  Variant variant_;
};

// Lazy (1 - |z|)^sigma reweighting; sigma must be positive.
Measure weight_transform(const Measure& mu, double sigma);

// Sum of two atomic measures (both must be atomic, possibly weight-transformed).
Measure atomic_union(const Measure& a, const Measure& b);

// A measure with its weight transforms folded into one exponent. Atomic
// measures absorb the weight into their masses, so sigma is 0 for them.
struct ResolvedMeasure {
  std::variant<AtomicMeasure, RadialSegmentMeasure, WeightedAreaMeasure, CapMeasure> base;
  double sigma = 0.0;
};

ResolvedMeasure resolve(const Measure& mu);

// Point masses standing in for mu when integrating kernels against it. Atoms
// are returned as-is; density families are sampled with the disk rule (the
// radial nodes of the rule for radial segments; a polar rule for caps).
struct WeightedPoint {
  std::complex<double> z;
  double weight;
};

std::vector<WeightedPoint> discretize(const Measure& mu, const QuadratureRule& rule);

// mu(S(I)). Exact for atomic and radial-segment measures; radial quadrature
// graded toward the boundary for weighted area; cap quadrature for caps.
double mass_of_square(const Measure& mu, const CarlesonSquare& square);

// mu(D(z, r)). Exact for atomic and radial-segment measures; polar quadrature
// over the Euclidean image of D(z, r) otherwise.
double mass_of_hyperbolic_disk(const Measure& mu, const HyperbolicDisk& disk);

struct ScaleSample {
  int scale;          // dyadic level (0 = full circle) or ray radius index
  double size;        // |I| for squares, 1 - |z|^2 for hyperbolic disks
  double max_ratio;   // max of mu(region) / size^s at this scale
  double max_mass;    // max of mu(region) at this scale
};

struct CarlesonReport {
  double exponent = 0.0;
  double empirical_constant = 0.0;
  std::variant<Arc, HyperbolicDisk> argmax_region = Arc::full_circle();
  std::vector<ScaleSample> samples;
  std::vector<std::string> flags;
};

// Empirical sup of mu(S(I)) / |I|^s over the full circle and the two-shift
// dyadic grid of levels 1..depth.
CarlesonReport carleson_constant(const Measure& mu, double s, int depth);

// Empirical sup of mu(D(z, r)) / (1 - |z|^2)^s over the given centers.
CarlesonReport carleson_constant_hyperbolic(const Measure& mu, double s, double r,
                                            const std::vector<DiskPoint>& centers);

// rays x radii 1 - 2^-k, k = 1..levels; ray j at angle 2 pi j / rays.
std::vector<DiskPoint> default_center_sweep(int rays = 16, int levels = 10);

// Least-squares slope of log(max_mass) against log(size) over samples with
// scale in [scale_min, scale_max] and positive mass. Needs two usable scales.
double fit_mass_slope(const CarlesonReport& report, int scale_min, int scale_max);

}  // namespace balayage
