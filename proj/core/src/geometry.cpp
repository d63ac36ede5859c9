#include "balayage/geometry.hpp"

#include <cmath>
#include <string>

#include "balayage/errors.hpp"

namespace balayage {

double wrap_angle(double angle) {
  double r = std::remainder(angle, kTwoPi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

DiskPoint::DiskPoint(double re_, double im_) : re(re_), im(im_) {
  if (!(std::hypot(re, im) < 1.0)) {
    throw PreconditionError("DiskPoint: |z| must be < 1, got |z| = " +
                            std::to_string(std::hypot(re, im)));
  }
}

DiskPoint DiskPoint::polar(double radius, double angle) {
  return DiskPoint(std::polar(radius, angle));
}

Arc::Arc(double center, double length) : center_(center), length_(length) {
  if (!(length > 0.0) || length > kTwoPi * (1.0 + 1e-15) || !std::isfinite(center)) {
    throw PreconditionError("Arc: length must lie in (0, 2 pi]");
  }
  length_ = std::min(length, kTwoPi);
  center_ = std::fmod(center, kTwoPi);
  if (center_ < 0.0) center_ += kTwoPi;
  if (center_ >= kTwoPi) center_ = 0.0;
}

bool Arc::contains(double angle) const {
  if (length_ >= kTwoPi) return true;
  return std::abs(wrap_angle(angle - center_)) <= 0.5 * length_;
}

bool CarlesonSquare::contains(std::complex<double> z) const {
  const double r = std::abs(z);
  if (!(r < 1.0) || r < inner_radius()) return false;
  if (r == 0.0) return arc.length() >= kTwoPi;
  return arc.contains(std::arg(z));
}

HyperbolicDisk::HyperbolicDisk(DiskPoint center_, double radius_)
    : center(center_), radius(radius_) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw PreconditionError("HyperbolicDisk: radius must be positive");
  }
}

bool HyperbolicDisk::contains(std::complex<double> w) const {
  return hyperbolic_distance(center.value(), w) < radius;
}

EuclideanDisk HyperbolicDisk::euclidean_image() const {
  const double rho = std::tanh(radius);
  const std::complex<double> z = center.value();
  const double mod2 = std::norm(z);
  const double denom = 1.0 - rho * rho * mod2;
  return {(1.0 - rho * rho) * z / denom, rho * (1.0 - mod2) / denom};
}

double poisson_kernel(std::complex<double> z, double theta) {
  const double r = std::abs(z);
  const double s = std::sin(0.5 * (theta - std::arg(z)));
  const double denom = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
  return (1.0 - r) * (1.0 + r) / denom;
}

double poisson_kernel(DiskPoint z, double theta) { return poisson_kernel(z.value(), theta); }

double poisson_kernel_integral(std::complex<double> z, double a, double b) {
  if (b <= a) return 0.0;
  if (z == 0.0) return b - a;
  const std::complex<double> ratio =
      (std::polar(1.0, b) - z) / (std::polar(1.0, a) - z);
  double angle = std::arg(ratio);
  if (angle < 0.0) angle += kTwoPi;
  // The subtended angle is never below the inscribed angle (b - a) / 2, so a
  // smaller value means a turn close to 2 pi wrapped around to 0.
  if (angle < 0.5 * (b - a) - 1e-9) angle += kTwoPi;
  return 2.0 * angle - (b - a);
}

std::complex<double> disk_automorphism(std::complex<double> a, std::complex<double> z) {
  return (a - z) / (1.0 - std::conj(a) * z);
}

double pseudo_hyperbolic(std::complex<double> z, std::complex<double> w) {
  return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

double pseudo_hyperbolic(DiskPoint z, DiskPoint w) {
  return pseudo_hyperbolic(z.value(), w.value());
}

double hyperbolic_distance(std::complex<double> z, std::complex<double> w) {
  return std::atanh(pseudo_hyperbolic(z, w));
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
  return hyperbolic_distance(z.value(), w.value());
}

Arc dilate_arc(const Arc& arc, int n) {
  if (n < 0) throw PreconditionError("dilate_arc: n must be nonnegative");
  return Arc(arc.center(), std::min(std::ldexp(arc.length(), n), kTwoPi));
}

std::vector<Arc> dyadic_level(int level) {
  if (level < 1 || level > 24) {
    throw PreconditionError("dyadic_level: level must lie in [1, 24]");
  }
  const long count = 1L << level;
  const double length = kTwoPi / static_cast<double>(count);
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(2 * count));
  for (int shift = 0; shift < 2; ++shift) {
    for (long j = 0; j < count; ++j) {
      const double center = (2.0 * static_cast<double>(j) + 1.0 + shift) * 0.5 * length;
      arcs.emplace_back(center, length);
    }
  }
  return arcs;
}

std::vector<Arc> dyadic_arcs(int depth) {
  if (depth < 1 || depth > 24) {
    throw PreconditionError("dyadic_arcs: depth must lie in [1, 24]");
  }
  std::vector<Arc> arcs;
  for (int k = 1; k <= depth; ++k) {
    auto level = dyadic_level(k);
    arcs.insert(arcs.end(), level.begin(), level.end());
  }
  return arcs;
}

double chord(double theta, double phi) { return 2.0 * std::abs(std::sin(0.5 * (theta - phi))); }

}  // namespace balayage
