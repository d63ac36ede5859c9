#include "balayage/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace balayage {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be positive");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule build_disk_rule(int radial_count, int angular_count, int refinement_levels) {
  if (radial_count < 2 || angular_count < 4 || refinement_levels < 0) {
    throw PreconditionError(
        "build_disk_rule: need radial_count >= 2, angular_count >= 4, refinement_levels >= 0");
  }
  if (refinement_levels > 52) {
    throw PreconditionError("build_disk_rule: refinement_levels above 52 underflow double spacing");
  }
  QuadratureRule rule;
  rule.angular_count = angular_count;
  rule.refinement_levels = refinement_levels;
  const auto gl = gauss_legendre(radial_count);
  for (int k = 0; k <= refinement_levels; ++k) {
    const double a = k == 0 ? 0.0 : 1.0 - std::ldexp(1.0, -k);
    const double b = k == refinement_levels ? 1.0 : 1.0 - std::ldexp(1.0, -(k + 1));
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double r = mid + half * gl.nodes[i];
      rule.radial.push_back({r, half * gl.weights[i] * 2.0 * r});
    }
  }
  rule.unit_roots.reserve(static_cast<std::size_t>(angular_count));
  for (int j = 0; j < angular_count; ++j) {
    rule.unit_roots.push_back(std::polar(1.0, kTwoPi * j / angular_count));
  }
  return rule;
}

QuadratureRule with_angular_count(const QuadratureRule& rule, int angular_count) {
  if (angular_count < 4) throw PreconditionError("with_angular_count: need at least 4 angles");
  QuadratureRule out;
  out.radial = rule.radial;
  out.angular_count = angular_count;
  out.refinement_levels = rule.refinement_levels;
  out.unit_roots.reserve(static_cast<std::size_t>(angular_count));
  for (int j = 0; j < angular_count; ++j) {
    out.unit_roots.push_back(std::polar(1.0, kTwoPi * j / angular_count));
  }
  return out;
}

double weighted_area_density(double alpha, double radius) {
  if (alpha == 0.0) return 1.0;
  return (alpha + 1.0) * std::pow((1.0 - radius) * (1.0 + radius), alpha);
}

namespace detail {
void check_arc_pair_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw PreconditionError("integrate_arc_pair: gamma must lie in [0, 1)");
  }
}
}  // namespace detail

ArcPairRule build_arc_pair_rule(const Arc& arc, int node_count, double gamma) {
  detail::check_arc_pair_gamma(gamma);
  if (node_count < 4) throw PreconditionError("build_arc_pair_rule: need at least 4 nodes");
  constexpr int order = 4;
  const int panels = (node_count + order - 1) / order;
  const auto gl = gauss_legendre(order);
  ArcPairRule rule;
  rule.gamma = gamma;
  const double width = arc.length() / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = arc.start() + (p + 0.5) * width;
    for (int q = 0; q < order; ++q) {
      rule.angles.push_back(mid + 0.5 * width * gl.nodes[static_cast<std::size_t>(q)]);
      rule.weights.push_back(0.5 * width * gl.weights[static_cast<std::size_t>(q)]);
    }
  }
  rule.band_halfwidth = arc.length() / static_cast<double>(rule.angles.size());
  return rule;
}

ArcPairRule grid_arc_pair_rule(int grid_n, const Arc& arc, double gamma) {
  detail::check_arc_pair_gamma(gamma);
  if (grid_n < 8) throw PreconditionError("grid_arc_pair_rule: grid needs at least 8 nodes");
  const double h = kTwoPi / grid_n;
  const double start = arc.start();
  const double end = arc.end();
  const double eps = 1e-12 * h;
  ArcPairRule rule;
  rule.gamma = gamma;
  rule.angles.push_back(start);
  for (double j = std::ceil((start + eps) / h); j * h < end - eps; j += 1.0) {
    rule.angles.push_back(j * h);
  }
  rule.angles.push_back(end);
  rule.weights.assign(rule.angles.size(), 0.0);
  for (std::size_t i = 0; i + 1 < rule.angles.size(); ++i) {
    const double seg = rule.angles[i + 1] - rule.angles[i];
    rule.weights[i] += 0.5 * seg;
    rule.weights[i + 1] += 0.5 * seg;
  }
  rule.band_halfwidth = arc.length() / static_cast<double>(rule.angles.size());
  rule.inner_panels = std::clamp(static_cast<int>(rule.angles.size()) / 2, 8, 256);
  return rule;
}

}  // namespace balayage
