#pragma once

// Quadrature on the unit disk, the unit circle and on products of a boundary
// arc with itself. All rules are deterministic and every reduction goes
// through pairwise_sum so results do not depend on evaluation order.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "balayage/errors.hpp"
#include "balayage/geometry.hpp"

namespace balayage {

inline bool is_finite_value(double v) { return std::isfinite(v); }
inline bool is_finite_value(std::complex<double> v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.size() <= 8) {
    T acc{};
    for (const auto& v : values) acc = acc + v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule via Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);

struct RadialNode {
  double radius;
  double weight;  // approximates integral of g(r) * 2r dr over [0, 1)
};

struct QuadratureRule {
  std::vector<RadialNode> radial;
  int angular_count = 0;
  int refinement_levels = 0;
  std::vector<std::complex<double>> unit_roots;  // e^{2 pi i j / angular_count}

  std::size_t size() const { return radial.size() * unit_roots.size(); }
};

// Gauss-Legendre rings on geometric bands: band k covers
// [1 - 2^-k, 1 - 2^-(k+1)) for k < refinement_levels and the last band covers
// [1 - 2^-refinement_levels, 1). Angles are equispaced.
QuadratureRule build_disk_rule(int radial_count, int angular_count,
                               int refinement_levels);

// Same radial nodes with a different number of equispaced angles.
QuadratureRule with_angular_count(const QuadratureRule& rule, int angular_count);

// (alpha + 1)(1 - r^2)^alpha, the density of dA_alpha against dA.
double weighted_area_density(double alpha, double radius);

template <class F>
auto integrate_disk(F&& f, double alpha, const QuadratureRule& rule) {
  using T = std::decay_t<decltype(f(std::complex<double>{}))>;
  if (!(alpha > -1.0)) {
    throw PreconditionError("integrate_disk: alpha must exceed -1");
  }
  const double inv_m = 1.0 / static_cast<double>(rule.unit_roots.size());
  std::vector<T> ring_sums;
  ring_sums.reserve(rule.radial.size());
  std::vector<T> ring(rule.unit_roots.size());
  for (const auto& node : rule.radial) {
    const double w = node.weight * weighted_area_density(alpha, node.radius) * inv_m;
    for (std::size_t j = 0; j < rule.unit_roots.size(); ++j) {
      const std::complex<double> z = node.radius * rule.unit_roots[j];
      T v = f(z);
      if (!is_finite_value(v)) {
        throw NumericalError("integrate_disk: non-finite integrand", z);
      }
      ring[j] = v * w;
    }
    ring_sums.push_back(pairwise_sum(ring));
  }
  return pairwise_sum(ring_sums);
}

// Trapezoid rule on n equispaced angles: integral over [0, 2 pi).
template <class F>
double integrate_circle(F&& f, int n) {
  if (n < 8) throw PreconditionError("integrate_circle: need at least 8 nodes");
  std::vector<double> values(static_cast<std::size_t>(n));
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double t = h * j;
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw NumericalError("integrate_circle: non-finite integrand",
                           std::polar(1.0, t));
    }
    values[static_cast<std::size_t>(j)] = v;
  }
  return h * pairwise_sum(values);
}

// Integral of g over [r0, 1) on geometrically shrinking bands toward r = 1.
template <class G>
double integrate_toward_boundary(G&& g, double r0, int order = 16,
                                 int levels = 48) {
  const auto gl = gauss_legendre(order);
  std::vector<double> bands;
  double a = r0;
  double gap = 1.0 - r0;
  // Dyadic bands only; the tail of width 2^-levels (1 - r0) next to r = 1 is
  // dropped so the integrand is never sampled where 1 - r rounds to zero.
  for (int k = 0; k < levels && gap > 0.0; ++k) {
    const double b = 1.0 - 0.5 * gap;
    if (!(b > a)) break;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::vector<double> terms(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      terms[i] = gl.weights[i] * half * g(mid + half * gl.nodes[i]);
    }
    bands.push_back(pairwise_sum(terms));
    a = b;
    gap *= 0.5;
  }
  return pairwise_sum(bands);
}

// Nodes on a boundary arc for double integrals over I x I, with the singular
// weight |e^{i theta} - e^{i phi}|^{-gamma}.
struct ArcPairRule {
  std::vector<double> angles;   // absolute (unwrapped) angles inside the arc
  std::vector<double> weights;  // sum to the arc length
  double gamma = 0.0;
  double band_halfwidth = 0.0;  // |theta - phi| below this is the diagonal band
  int inner_panels = 16;        // Gauss panels per side for the singular inner integral
  int inner_order = 4;
};

// Composite Gauss-Legendre nodes (order 4) on the arc, about node_count in total.
ArcPairRule build_arc_pair_rule(const Arc& arc, int node_count, double gamma);

// Trapezoid nodes aligned with an n-point boundary grid: the arc endpoints plus
// every grid angle 2 pi j / n strictly inside the arc.
ArcPairRule grid_arc_pair_rule(int grid_n, const Arc& arc, double gamma);

struct ArcPairResult {
  double value = 0.0;          // full double integral, diagonal band included
  double band_value = 0.0;     // part of value coming from the diagonal band
  double band_majorant = 0.0;  // sup|f| * kernel mass of the band
};

namespace detail {
void check_arc_pair_gamma(double gamma);
}  // namespace detail

// Double integral of f(theta, phi) |e^{i theta} - e^{i phi}|^{-gamma} over I x I.
//
// gamma == 0 is a tensor product of the rule with itself. For gamma > 0 each
// outer node theta splits the inner integral into the two sides of the
// diagonal; on a side of length a the substitution x = a t^{1/(1-gamma)}
// absorbs x^{-gamma}, so the singularity is integrated exactly and only the
// smooth factor (x / chord(x))^gamma f(theta, theta +- x) is sampled.
template <class F>
ArcPairResult integrate_arc_pair(F&& f, const Arc& arc, const ArcPairRule& rule) {
  detail::check_arc_pair_gamma(rule.gamma);
  const double gamma = rule.gamma;
  const double band = rule.band_halfwidth;
  const std::size_t m = rule.angles.size();
  std::vector<double> outer(m), outer_band(m), outer_majorant(m);

  if (gamma == 0.0) {
    std::vector<double> row(m);
    for (std::size_t i = 0; i < m; ++i) {
      double band_sum = 0.0;
      double near_sup = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double v = f(rule.angles[i], rule.angles[j]);
        if (!std::isfinite(v)) {
          throw NumericalError("integrate_arc_pair: non-finite integrand",
                               std::polar(1.0, rule.angles[j]));
        }
        row[j] = rule.weights[j] * v;
        if (std::abs(rule.angles[i] - rule.angles[j]) < band) {
          band_sum += row[j];
          near_sup = std::max(near_sup, std::abs(v));
        }
      }
      outer[i] = rule.weights[i] * pairwise_sum(row);
      outer_band[i] = rule.weights[i] * band_sum;
      outer_majorant[i] = rule.weights[i] * 2.0 * band * near_sup;
    }
  } else {
    const auto gl = gauss_legendre(rule.inner_order);
    const double kappa = 1.0 / (1.0 - gamma);
    const double start = arc.start();
    const double end = arc.end();
    const int near_panels = std::max(1, rule.inner_panels / 4);
    std::vector<double> terms;
    for (std::size_t i = 0; i < m; ++i) {
      const double theta = rule.angles[i];
      double inner = 0.0, inner_band = 0.0, inner_majorant = 0.0;
      for (int side = -1; side <= 1; side += 2) {
        const double a = side < 0 ? theta - start : end - theta;
        if (a <= 0.0) continue;
        const double b = std::min(band, a);
        const double t_band = std::pow(b / a, 1.0 - gamma);
        const double scale = std::pow(a, 1.0 - gamma) / (1.0 - gamma);
        double near_sup = 0.0;
        auto piece = [&](double t0, double t1, int panels, bool near) {
          terms.clear();
          const double width = (t1 - t0) / panels;
          for (int p = 0; p < panels; ++p) {
            const double mid = t0 + (p + 0.5) * width;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
              const double t = mid + 0.5 * width * gl.nodes[q];
              const double x = a * std::pow(t, kappa);
              const double phi = theta + side * x;
              const double c = 2.0 * std::sin(0.5 * x);
              const double factor = (x > 0.0 && c > 0.0) ? std::pow(x / c, gamma) : 1.0;
              const double v = f(theta, phi);
              if (!std::isfinite(v) || !std::isfinite(factor)) {
                throw NumericalError("integrate_arc_pair: non-finite integrand",
                                     std::polar(1.0, phi));
              }
              if (near) near_sup = std::max(near_sup, std::abs(v) * factor);
              terms.push_back(0.5 * width * gl.weights[q] * v * factor);
            }
          }
          return scale * pairwise_sum(terms);
        };
        const double near_part = t_band > 0.0 ? piece(0.0, t_band, near_panels, true) : 0.0;
        const double far_part = t_band < 1.0 ? piece(t_band, 1.0, rule.inner_panels, false) : 0.0;
        inner += near_part + far_part;
        inner_band += near_part;
        inner_majorant += near_sup * std::pow(b, 1.0 - gamma) / (1.0 - gamma);
      }
      outer[i] = rule.weights[i] * inner;
      outer_band[i] = rule.weights[i] * inner_band;
      outer_majorant[i] = rule.weights[i] * inner_majorant;
    }
  }
  return ArcPairResult{pairwise_sum(outer), pairwise_sum(outer_band),
                       pairwise_sum(outer_majorant)};
}

}  // namespace balayage
