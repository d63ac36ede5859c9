#pragma once

// Geometry of the unit disk and its boundary circle.

#include <complex>
#include <numbers>
#include <vector>

namespace balayage {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any angle to (-pi, pi].
double wrap_angle(double angle);

// A point of the open unit disk. Construction rejects |z| >= 1.
struct DiskPoint {
  double re = 0.0;
  double im = 0.0;

  DiskPoint() = default;
  DiskPoint(double re_, double im_);
  explicit DiskPoint(std::complex<double> z) : DiskPoint(z.real(), z.imag()) {}

  static DiskPoint polar(double radius, double angle);

  std::complex<double> value() const { return {re, im}; }
  double modulus() const { return std::abs(value()); }
  double argument() const { return std::arg(value()); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;
};

// Closed arc of the unit circle: angles psi with |wrap(psi - center)| <= length / 2.
class Arc {
 public:
  Arc(double center, double length);

  static Arc full_circle(double center = 0.0) { return Arc(center, kTwoPi); }

  double center() const { return center_; }  // in [0, 2 pi)
  double length() const { return length_; }  // in (0, 2 pi]
  double start() const { return center_ - 0.5 * length_; }
  double end() const { return center_ + 0.5 * length_; }
  bool contains(double angle) const;

  friend bool operator==(const Arc&, const Arc&) = default;

 private:
  double center_;
  double length_;
};

// S(I) = { r e^{it} : e^{it} in I, 1 - |I| / 2 pi <= r < 1 }.
struct CarlesonSquare {
  Arc arc;

  double inner_radius() const { return 1.0 - arc.length() / kTwoPi; }
  bool contains(std::complex<double> z) const;
};

struct EuclideanDisk {
  std::complex<double> center;
  double radius;
};

// D(z, r) = { w : beta(z, w) < r }.
struct HyperbolicDisk {
  HyperbolicDisk(DiskPoint center_, double radius_);

  DiskPoint center;
  double radius;

  bool contains(std::complex<double> w) const;
  // D(z, r) is the Euclidean disk with center (1 - rho^2) z / (1 - rho^2 |z|^2)
  // and radius rho (1 - |z|^2) / (1 - rho^2 |z|^2), rho = tanh r.
  EuclideanDisk euclidean_image() const;
};

// (1 - |z|^2) / |1 - z e^{-i theta}|^2
double poisson_kernel(DiskPoint z, double theta);
double poisson_kernel(std::complex<double> z, double theta);

// Exact integral of the Poisson kernel over [a, b] (b - a <= 2 pi):
// 2 arg((e^{ib} - z) / (e^{ia} - z)) - (b - a), the argument taken in [0, 2 pi).
double poisson_kernel_integral(std::complex<double> z, double a, double b);

// phi_a(z) = (a - z) / (1 - conj(a) z)
std::complex<double> disk_automorphism(std::complex<double> a, std::complex<double> z);

double pseudo_hyperbolic(DiskPoint z, DiskPoint w);
double pseudo_hyperbolic(std::complex<double> z, std::complex<double> w);
double hyperbolic_distance(DiskPoint z, DiskPoint w);
double hyperbolic_distance(std::complex<double> z, std::complex<double> w);

// Same center, length min(2^n |arc|, 2 pi).
Arc dilate_arc(const Arc& arc, int n);

// Both shifts of level k: 2^k arcs of length 2 pi / 2^k centered at
// (2j + 1) pi / 2^k, followed by the same arcs rotated by pi / 2^k.
std::vector<Arc> dyadic_level(int level);

// Levels 1..depth of the two-shift dyadic grid, coarsest first.
std::vector<Arc> dyadic_arcs(int depth);

// |e^{i theta} - e^{i phi}| = 2 |sin((theta - phi) / 2)|
double chord(double theta, double phi);

}  // namespace balayage
