#include "balayage/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "balayage/errors.hpp"
#include "balayage/parallel.hpp"

namespace balayage {

namespace {

void check_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw PreconditionError("measure: masses must be finite and positive");
  }
}

double boundary_weight(double modulus, double sigma) {
  return sigma == 0.0 ? 1.0 : std::pow(1.0 - modulus, sigma);
}

double area_density(const WeightedAreaMeasure& area, double sigma, double modulus) {
  return weighted_area_density(area.alpha, modulus) * boundary_weight(modulus, sigma);
}

// Polar Gauss rule over the cap, uniform density, reweighted by (1 - |z|)^sigma.
std::vector<WeightedPoint> cap_nodes(const CapMeasure& cap, double sigma, int radial_order,
                                     int angular_count) {
  const auto gl = gauss_legendre(radial_order);
  const double density = cap.mass / (std::numbers::pi * cap.radius * cap.radius);
  const double dphi = kTwoPi / angular_count;
  std::vector<WeightedPoint> nodes;
  nodes.reserve(gl.nodes.size() * static_cast<std::size_t>(angular_count));
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double rho = 0.5 * cap.radius * (gl.nodes[i] + 1.0);
    const double w_rho = 0.5 * cap.radius * gl.weights[i] * rho;
    for (int j = 0; j < angular_count; ++j) {
      const std::complex<double> z = cap.center.value() + std::polar(rho, dphi * j);
      nodes.push_back({z, density * w_rho * dphi * boundary_weight(std::abs(z), sigma)});
    }
  }
  return nodes;
}

std::vector<WeightedPoint> cap_nodes(const CapMeasure& cap, double sigma) {
  return cap_nodes(cap, sigma, 24, 96);
}

double weighted_sum(const std::vector<WeightedPoint>& nodes) {
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = nodes[i].weight;
  return pairwise_sum(w);
}

template <class Region>
double cap_mass_in(const CapMeasure& cap, double sigma, Region&& inside) {
  auto nodes = cap_nodes(cap, sigma);
  std::vector<double> w;
  w.reserve(nodes.size());
  for (const auto& n : nodes) w.push_back(inside(n.z) ? n.weight : 0.0);
  return pairwise_sum(w);
}

double radial_area_mass(const WeightedAreaMeasure& area, double sigma, double r0) {
  return integrate_toward_boundary(
      [&](double r) { return area_density(area, sigma, r) * 2.0 * r; }, r0);
}

}  // namespace

Measure Measure::atomic(std::vector<Atom> atoms) {
  if (atoms.empty()) throw PreconditionError("atomic measure needs at least one atom");
  for (const auto& a : atoms) check_mass(a.mass);
  return Measure(AtomicMeasure{std::move(atoms)});
}

Measure Measure::dirac(DiskPoint point, double mass) { return atomic({{point, mass}}); }

Measure Measure::radial_segment(double angle) {
  if (!std::isfinite(angle)) throw PreconditionError("radial segment: angle must be finite");
  return Measure(RadialSegmentMeasure{angle});
}

Measure Measure::weighted_area(double alpha) {
  if (!(alpha > -1.0)) throw PreconditionError("weighted area: alpha must exceed -1");
  return Measure(WeightedAreaMeasure{alpha});
}

Measure Measure::cap(DiskPoint center, double radius, double mass) {
  check_mass(mass);
  if (!(radius > 0.0) || center.modulus() + radius >= 1.0) {
    throw PreconditionError("cap: radius must be positive and the cap inside the disk");
  }
  return Measure(CapMeasure{center, radius, mass});
}

Measure weight_transform(const Measure& mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw PreconditionError("weight_transform: sigma must be positive");
  }
  return Measure(WeightTransformMeasure{std::make_shared<const Measure>(mu), sigma});
}

Measure atomic_union(const Measure& a, const Measure& b) {
  const auto ra = resolve(a);
  const auto rb = resolve(b);
  const auto* aa = std::get_if<AtomicMeasure>(&ra.base);
  const auto* ab = std::get_if<AtomicMeasure>(&rb.base);
  if (aa == nullptr || ab == nullptr) {
    throw PreconditionError("atomic_union: both measures must be atomic");
  }
  std::vector<Atom> atoms = aa->atoms;
  atoms.insert(atoms.end(), ab->atoms.begin(), ab->atoms.end());
  return Measure::atomic(std::move(atoms));
}

ResolvedMeasure resolve(const Measure& mu) {
  return std::visit(
      [](const auto& m) -> ResolvedMeasure {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WeightTransformMeasure>) {
          ResolvedMeasure inner = resolve(*m.base);
          if (auto* atomic = std::get_if<AtomicMeasure>(&inner.base)) {
            for (auto& a : atomic->atoms) a.mass *= boundary_weight(a.point.modulus(), m.sigma);
          } else {
            inner.sigma += m.sigma;
          }
          return inner;
        } else {
          return ResolvedMeasure{m, 0.0};
        }
      },
      mu.variant());
}

double Measure::total_mass() const {
  const auto r = resolve(*this);
  const double sigma = r.sigma;
  return std::visit(
      [sigma](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          std::vector<double> w;
          for (const auto& a : m.atoms) w.push_back(a.mass);
          return pairwise_sum(w);
        } else if constexpr (std::is_same_v<T, RadialSegmentMeasure>) {
          return 1.0 / (sigma + 1.0);
        } else if constexpr (std::is_same_v<T, WeightedAreaMeasure>) {
          return sigma == 0.0 ? 1.0 : radial_area_mass(m, sigma, 0.0);
        } else {
          return sigma == 0.0 ? m.mass : weighted_sum(cap_nodes(m, sigma));
        }
      },
      r.base);
}

std::vector<WeightedPoint> discretize(const Measure& mu, const QuadratureRule& rule) {
  const auto r = resolve(mu);
  const double sigma = r.sigma;
  return std::visit(
      [&](const auto& m) -> std::vector<WeightedPoint> {
        using T = std::decay_t<decltype(m)>;
        std::vector<WeightedPoint> nodes;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& a : m.atoms) nodes.push_back({a.point.value(), a.mass});
        } else if constexpr (std::is_same_v<T, RadialSegmentMeasure>) {
          const auto dir = std::polar(1.0, m.angle);
          for (const auto& n : rule.radial) {
            nodes.push_back({n.radius * dir,
                             n.weight / (2.0 * n.radius) * boundary_weight(n.radius, sigma)});
          }
        } else if constexpr (std::is_same_v<T, WeightedAreaMeasure>) {
          const double inv_m = 1.0 / static_cast<double>(rule.unit_roots.size());
          for (const auto& n : rule.radial) {
            const double w = n.weight * area_density(m, sigma, n.radius) * inv_m;
            for (const auto& root : rule.unit_roots) nodes.push_back({n.radius * root, w});
          }
        } else {
          nodes = cap_nodes(m, sigma,
                            std::max<int>(8, static_cast<int>(rule.radial.size()) /
                                                 (rule.refinement_levels + 1)),
                            std::max(16, rule.angular_count / 4));
        }
        return nodes;
      },
      r.base);
}

double mass_of_square(const Measure& mu, const CarlesonSquare& square) {
  const auto r = resolve(mu);
  const double sigma = r.sigma;
  const double r0 = std::max(0.0, square.inner_radius());
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          std::vector<double> w;
          for (const auto& a : m.atoms) w.push_back(square.contains(a.point.value()) ? a.mass : 0.0);
          return pairwise_sum(w);
        } else if constexpr (std::is_same_v<T, RadialSegmentMeasure>) {
          if (!square.arc.contains(m.angle)) return 0.0;
          return std::pow(1.0 - r0, sigma + 1.0) / (sigma + 1.0);
        } else if constexpr (std::is_same_v<T, WeightedAreaMeasure>) {
          return square.arc.length() / kTwoPi * radial_area_mass(m, sigma, r0);
        } else {
          return cap_mass_in(m, sigma, [&](std::complex<double> z) { return square.contains(z); });
        }
      },
      r.base);
}

double mass_of_hyperbolic_disk(const Measure& mu, const HyperbolicDisk& disk) {
  const auto r = resolve(mu);
  const double sigma = r.sigma;
  const EuclideanDisk image = disk.euclidean_image();
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          std::vector<double> w;
          for (const auto& a : m.atoms) w.push_back(disk.contains(a.point.value()) ? a.mass : 0.0);
          return pairwise_sum(w);
        } else if constexpr (std::is_same_v<T, RadialSegmentMeasure>) {
          // |rho e^{i angle} - c|^2 < R^2 is an interval in rho.
          const std::complex<double> u = std::polar(1.0, m.angle);
          const double b = std::real(image.center * std::conj(u));
          const double disc = b * b - std::norm(image.center) + image.radius * image.radius;
          if (disc <= 0.0) return 0.0;
          const double lo = std::max(0.0, b - std::sqrt(disc));
          const double hi = std::min(1.0, b + std::sqrt(disc));
          if (hi <= lo) return 0.0;
          return (std::pow(1.0 - lo, sigma + 1.0) - std::pow(1.0 - hi, sigma + 1.0)) /
                 (sigma + 1.0);
        } else if constexpr (std::is_same_v<T, WeightedAreaMeasure>) {
          constexpr int kAngular = 64;
          const auto gl = gauss_legendre(32);
          std::vector<double> terms;
          terms.reserve(gl.nodes.size() * kAngular);
          for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double rho = 0.5 * image.radius * (gl.nodes[i] + 1.0);
            const double w_rho = 0.5 * image.radius * gl.weights[i] * rho;
            for (int j = 0; j < kAngular; ++j) {
              const auto w = image.center + std::polar(rho, kTwoPi * j / kAngular);
              // dA = dx dy / pi, so the angular factor is (2 pi / kAngular) / pi.
              terms.push_back(w_rho * (2.0 / kAngular) * area_density(m, sigma, std::abs(w)));
            }
          }
          return pairwise_sum(terms);
        } else {
          return cap_mass_in(m, sigma, [&](std::complex<double> z) { return disk.contains(z); });
        }
      },
      r.base);
}

CarlesonReport carleson_constant(const Measure& mu, double s, int depth) {
  if (!(s > 0.0)) throw PreconditionError("carleson_constant: s must be positive");
  if (depth < 1 || depth > 24) throw PreconditionError("carleson_constant: depth must lie in [1, 24]");
  CarlesonReport report;
  report.exponent = s;
  report.argmax_region = Arc::full_circle();
  bool have_max = false;
  for (int level = 0; level <= depth; ++level) {
    const std::vector<Arc> arcs = level == 0 ? std::vector<Arc>{Arc::full_circle()} : dyadic_level(level);
    std::vector<double> masses(arcs.size());
    parallel_for(arcs.size(), [&](std::size_t i) { masses[i] = mass_of_square(mu, {arcs[i]}); });
    const double length = arcs.front().length();
    const double norm = std::pow(length, s);
    ScaleSample sample{level, length, 0.0, 0.0};
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const double ratio = masses[i] / norm;
      sample.max_mass = std::max(sample.max_mass, masses[i]);
      sample.max_ratio = std::max(sample.max_ratio, ratio);
      if (!have_max || ratio > report.empirical_constant) {
        report.empirical_constant = ratio;
        report.argmax_region = arcs[i];
        have_max = true;
      }
    }
    report.samples.push_back(sample);
  }
  const double finest = std::ldexp(1.0, -depth);
  const ResolvedMeasure resolved = resolve(mu);
  if (const auto* atomic = std::get_if<AtomicMeasure>(&resolved.base)) {
    for (const auto& a : atomic->atoms) {
      if (1.0 - a.point.modulus() < finest) {
        std::ostringstream msg;
        msg << "atom at (" << a.point.re << ", " << a.point.im
            << ") lies closer to the boundary than the finest dyadic scale";
        report.flags.push_back(msg.str());
      }
    }
  }
  return report;
}

CarlesonReport carleson_constant_hyperbolic(const Measure& mu, double s, double r,
                                            const std::vector<DiskPoint>& centers) {
  if (!(s > 1.0)) throw PreconditionError("carleson_constant_hyperbolic: s must exceed 1");
  if (!(r > 0.0)) throw PreconditionError("carleson_constant_hyperbolic: r must be positive");
  if (centers.empty()) throw PreconditionError("carleson_constant_hyperbolic: no centers");
  std::vector<double> masses(centers.size());
  parallel_for(centers.size(), [&](std::size_t i) {
    masses[i] = mass_of_hyperbolic_disk(mu, HyperbolicDisk(centers[i], r));
  });
  CarlesonReport report;
  report.exponent = s;
  report.argmax_region = HyperbolicDisk(centers.front(), r);
  std::vector<double> radii;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double modulus = centers[i].modulus();
    const double size = 1.0 - modulus * modulus;
    const double ratio = masses[i] / std::pow(size, s);
    if (i == 0 || ratio > report.empirical_constant) {
      report.empirical_constant = ratio;
      report.argmax_region = HyperbolicDisk(centers[i], r);
    }
    auto it = std::find(radii.begin(), radii.end(), modulus);
    if (it == radii.end()) {
      radii.push_back(modulus);
      report.samples.push_back({static_cast<int>(radii.size()) - 1, size, ratio, masses[i]});
    } else {
      auto& sample = report.samples[static_cast<std::size_t>(it - radii.begin())];
      sample.max_ratio = std::max(sample.max_ratio, ratio);
      sample.max_mass = std::max(sample.max_mass, masses[i]);
    }
  }
  if (report.empirical_constant == 0.0) {
    report.flags.push_back("no sampled hyperbolic disk carries mass; sampling gap, not a verdict");
  }
  return report;
}

std::vector<DiskPoint> default_center_sweep(int rays, int levels) {
  if (rays < 1 || levels < 1) throw PreconditionError("default_center_sweep: need rays, levels >= 1");
  std::vector<DiskPoint> centers;
  for (int k = 1; k <= levels; ++k) {
    for (int j = 0; j < rays; ++j) {
      centers.push_back(DiskPoint::polar(1.0 - std::ldexp(1.0, -k), kTwoPi * j / rays));
    }
  }
  return centers;
}

double fit_mass_slope(const CarlesonReport& report, int scale_min, int scale_max) {
  std::vector<double> xs, ys;
  for (const auto& s : report.samples) {
    if (s.scale < scale_min || s.scale > scale_max || !(s.max_mass > 0.0)) continue;
    xs.push_back(std::log(s.size));
    ys.push_back(std::log(s.max_mass));
  }
  if (xs.size() < 2) throw PreconditionError("fit_mass_slope: fewer than two usable scales");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace balayage
