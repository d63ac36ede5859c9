#include "balayage/operators.hpp"

#include <algorithm>
#include <cmath>

#include "balayage/errors.hpp"
#include "balayage/parallel.hpp"

namespace balayage {

namespace {

struct PolarNode {
  std::complex<double> z;
  double modulus;
  double argument;
  double weight;
};

std::vector<PolarNode> polar_nodes(const Measure& mu, const QuadratureRule& rule) {
  std::vector<PolarNode> out;
  for (const auto& n : discretize(mu, rule)) {
    out.push_back({n.z, std::abs(n.z), std::arg(n.z), n.weight});
  }
  return out;
}

double poisson_sum(const std::vector<PolarNode>& nodes, double t, std::vector<double>& scratch) {
  scratch.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& n = nodes[k];
    const double s = std::sin(0.5 * (t - n.argument));
    const double denom = (1.0 - n.modulus) * (1.0 - n.modulus) + 4.0 * n.modulus * s * s;
    scratch[k] = n.weight * (1.0 - n.modulus) * (1.0 + n.modulus) / denom;
    if (!std::isfinite(scratch[k])) {
      throw NumericalError("balayage: non-finite kernel value", n.z);
    }
  }
  return pairwise_sum(scratch);
}

}  // namespace

BoundaryGrid::BoundaryGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 8) throw PreconditionError("BoundaryGrid: need at least 8 nodes");
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("BoundaryGrid: values must be finite");
  }
}

double BoundaryGrid::value_at(double angle) const {
  const double h = spacing();
  const double x = angle / h;
  const double base = std::floor(x);
  const double frac = x - base;
  const long n = size();
  long j = static_cast<long>(base) % n;
  if (j < 0) j += n;
  const long k = (j + 1) % n;
  return (1.0 - frac) * values_[static_cast<std::size_t>(j)] +
         frac * values_[static_cast<std::size_t>(k)];
}

double BoundaryGrid::mean() const {
  return pairwise_sum(values_) / static_cast<double>(values_.size());
}

BoundaryGrid balayage(const Measure& mu, int n, const QuadratureRule& rule,
                      GridSampling sampling) {
  if (n < 8) throw PreconditionError("balayage: grid needs at least 8 nodes");
  const auto nodes = polar_nodes(mu, rule);
  const double h = kTwoPi / n;
  std::vector<double> values(static_cast<std::size_t>(n));
  parallel_for(values.size(), [&](std::size_t j) {
    const double t = h * static_cast<double>(j);
    std::vector<double> scratch;
    if (sampling == GridSampling::point) {
      values[j] = poisson_sum(nodes, t, scratch);
    } else {
      const double a = t - 0.5 * h;
      const double b = t + 0.5 * h;
      scratch.resize(nodes.size());
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        scratch[k] = nodes[k].weight * poisson_kernel_integral(nodes[k].z, a, b);
      }
      values[j] = pairwise_sum(scratch) / (b - a);
    }
  });
  return BoundaryGrid(std::move(values));
}

double balayage_at(const Measure& mu, double t, const QuadratureRule& rule) {
  std::vector<double> scratch;
  return poisson_sum(polar_nodes(mu, rule), t, scratch);
}

bool grid_underresolves(const Measure& mu, int n) {
  const ResolvedMeasure resolved = resolve(mu);
  if (const auto* atomic = std::get_if<AtomicMeasure>(&resolved.base)) {
    for (const auto& a : atomic->atoms) {
      if (n < kTwoPi / (1.0 - a.point.modulus())) return true;
    }
  }
  return false;
}

double b_balayage(const Measure& mu, DiskPoint z, const QuadratureRule& rule) {
  const auto nodes = discretize(mu, rule);
  const std::complex<double> zc = std::conj(z.value());
  std::vector<double> terms(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double m = 1.0 - std::norm(nodes[k].z);
    const double d = std::norm(1.0 - zc * nodes[k].z);
    terms[k] = nodes[k].weight * m * m / (d * d);
    if (!std::isfinite(terms[k])) throw NumericalError("b_balayage: non-finite kernel value", nodes[k].z);
  }
  return pairwise_sum(terms);
}

Polynomial::Polynomial(std::vector<std::complex<double>> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
  for (const auto& c : coefficients_) {
    if (!is_finite_value(c)) throw PreconditionError("Polynomial: coefficients must be finite");
  }
}

bool Polynomial::is_constant() const {
  return std::all_of(coefficients_.begin() + 1, coefficients_.end(),
                     [](const auto& c) { return c == std::complex<double>(0.0); });
}

Polynomial Polynomial::derivative() const {
  std::vector<std::complex<double>> d;
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    d.push_back(static_cast<double>(k) * coefficients_[k]);
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(std::complex<double> factor) const {
  auto c = coefficients_;
  for (auto& v : c) v *= factor;
  return Polynomial(std::move(c));
}

ConjugatePolynomial::ConjugatePolynomial(std::vector<ConjugateTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.holomorphic_degree < 0 || t.antiholomorphic_degree < 0 || !is_finite_value(t.coefficient)) {
      throw PreconditionError("ConjugatePolynomial: invalid term");
    }
  }
}

ConjugatePolynomial ConjugatePolynomial::holomorphic(const Polynomial& p) {
  std::vector<ConjugateTerm> terms;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    terms.push_back({static_cast<int>(k), 0, p.coefficients()[k]});
  }
  return ConjugatePolynomial(std::move(terms));
}

std::complex<double> ConjugatePolynomial::operator()(std::complex<double> w) const {
  std::complex<double> acc = 0.0;
  const auto wb = std::conj(w);
  for (const auto& t : terms_) {
    acc += t.coefficient * std::pow(w, t.holomorphic_degree) * std::pow(wb, t.antiholomorphic_degree);
  }
  return acc;
}

namespace {
void check_alpha(double alpha) {
  if (!(alpha > -1.0)) throw PreconditionError("Bergman projection: alpha must exceed -1");
}

// The kernel's angular Fourier coefficients decay like |z|^n, so the trapezoid
// rule needs about log(eps) / log|z| angles beyond the degree of g.
QuadratureRule projection_rule(const QuadratureRule& rule, const ConjugatePolynomial& g, DiskPoint z) {
  const double modulus = z.modulus();
  if (modulus < 1e-3) return rule;
  int degree = 0;
  for (const auto& t : g.terms()) degree = std::max(degree, t.holomorphic_degree + t.antiholomorphic_degree);
  const double needed = 45.0 / -std::log(modulus) + degree + 8.0;
  if (needed <= rule.angular_count) return rule;
  const int count = static_cast<int>(std::min(needed, 65536.0));
  return with_angular_count(rule, (count + 3) / 4 * 4);
}
}  // namespace

std::complex<double> bergman_projection(const ConjugatePolynomial& g, double alpha, DiskPoint z,
                                        const QuadratureRule& rule) {
  check_alpha(alpha);
  const std::complex<double> zv = z.value();
  return integrate_disk(
      [&](std::complex<double> w) { return g(w) * std::pow(1.0 - zv * std::conj(w), -(2.0 + alpha)); },
      alpha, projection_rule(rule, g, z));
}

std::complex<double> bergman_projection_derivative(const ConjugatePolynomial& g, double alpha,
                                                   DiskPoint z, const QuadratureRule& rule) {
  check_alpha(alpha);
  const DualComplex zd = DualComplex::variable(z.value());
  const DualComplex one(std::complex<double>(1.0));
  const DualComplex result = integrate_disk(
      [&](std::complex<double> w) {
        return DualComplex(g(w)) * pow(one - zd * DualComplex(std::conj(w)), -(2.0 + alpha));
      },
      alpha, projection_rule(rule, g, z));
  return result.derivative;
}

std::complex<double> projected_derivative(const ConjugatePolynomial& g, double alpha, DiskPoint z,
                                          const QuadratureRule& rule) {
  check_alpha(alpha);
  const std::complex<double> zv = z.value();
  const std::complex<double> integral = integrate_disk(
      [&](std::complex<double> w) {
        const auto wb = std::conj(w);
        return g(w) * wb * std::pow(1.0 - zv * wb, -(3.0 + alpha));
      },
      alpha, projection_rule(rule, g, z));
  return (alpha + 2.0) * (1.0 - std::norm(zv)) * integral;
}

double besov_norm(const Polynomial& f, double p, const QuadratureRule& rule) {
  if (!(p > 1.0)) throw PreconditionError("besov_norm: p must exceed 1");
  if (f.is_constant()) return 0.0;
  const Polynomial df = f.derivative();
  // (1 - |z|^2)^{p-2} dA = dA_{p-2} / (p - 1)
  const double integral =
      integrate_disk([&](std::complex<double> z) { return std::pow(std::abs(df(z)), p); }, p - 2.0, rule);
  return std::pow(integral / (p - 1.0), 1.0 / p);
}

}  // namespace balayage
