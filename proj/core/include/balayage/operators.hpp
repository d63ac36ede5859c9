#pragma once

// Balayage S_mu, B-balayage G_mu, the weighted Bergman projection and the
// analytic Besov norm.

#include <complex>
#include <string>
#include <vector>

#include "balayage/dual.hpp"
#include "balayage/geometry.hpp"
#include "balayage/measures.hpp"
#include "balayage/numerics.hpp"

namespace balayage {

// Function on the circle sampled at angles 2 pi j / n, piecewise linear between
// nodes.
class BoundaryGrid {
 public:
  explicit BoundaryGrid(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double spacing() const { return kTwoPi / size(); }
  double angle(int j) const { return spacing() * j; }
  const std::vector<double>& values() const { return values_; }
  double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }

  // Piecewise-linear interpolant at any (unwrapped) angle.
  double value_at(double angle) const;
  // Trapezoid mean (1 / 2 pi) * integral over the circle.
  double mean() const;

 private:
  std::vector<double> values_;
};

// point: S_mu(e^{i t_j}). cell_average: the mean of S_mu over
// [t_j - h/2, t_j + h/2], integrated in closed form per quadrature node, so the
// grid mean equals the discretized total mass for every measure.
enum class GridSampling { point, cell_average };

BoundaryGrid balayage(const Measure& mu, int n, const QuadratureRule& rule,
                      GridSampling sampling = GridSampling::point);

double balayage_at(const Measure& mu, double t, const QuadratureRule& rule);

// True when an atom sits closer to the circle than the grid can resolve
// (n < 2 pi / (1 - |a|)).
bool grid_underresolves(const Measure& mu, int n);

// G_mu(z) = integral of (1 - |w|^2)^2 / |1 - conj(z) w|^4 d mu(w)
double b_balayage(const Measure& mu, DiskPoint z, const QuadratureRule& rule);

// p(z) = c_0 + c_1 z + ... + c_d z^d
class Polynomial {
 public:
  explicit Polynomial(std::vector<std::complex<double>> coefficients);

  const std::vector<std::complex<double>>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_constant() const;
  Polynomial derivative() const;
  Polynomial scaled(std::complex<double> factor) const;

  template <class T>
  T operator()(const T& z) const {
    T acc = T(coefficients_.back());
    for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it) {
      acc = acc * z + T(*it);
    }
    return acc;
  }

 private:
  std::vector<std::complex<double>> coefficients_;
};

// g(w) = sum of c_{jk} w^j conj(w)^k
struct ConjugateTerm {
  int holomorphic_degree;
  int antiholomorphic_degree;
  std::complex<double> coefficient;
};

class ConjugatePolynomial {
 public:
  explicit ConjugatePolynomial(std::vector<ConjugateTerm> terms);
  static ConjugatePolynomial holomorphic(const Polynomial& p);

  const std::vector<ConjugateTerm>& terms() const { return terms_; }
  std::complex<double> operator()(std::complex<double> w) const;

 private:
  std::vector<ConjugateTerm> terms_;
};

// P_alpha g(z) = integral of g(w) / (1 - z conj(w))^{2 + alpha} dA_alpha(w)
std::complex<double> bergman_projection(const ConjugatePolynomial& g, double alpha,
                                        DiskPoint z, const QuadratureRule& rule);

// (P_alpha g)'(z) by dual-number evaluation of the projection integral.
std::complex<double> bergman_projection_derivative(const ConjugatePolynomial& g,
                                                   double alpha, DiskPoint z,
                                                   const QuadratureRule& rule);

// (alpha + 2)(1 - |z|^2) integral of g(w) conj(w) / (1 - z conj(w))^{3 + alpha} dA_alpha(w),
// which equals (1 - |z|^2) (P_alpha g)'(z).
std::complex<double> projected_derivative(const ConjugatePolynomial& g, double alpha,
                                          DiskPoint z, const QuadratureRule& rule);

// ||f||_{B_p} = (integral of |f'|^p (1 - |z|^2)^{p - 2} dA)^{1/p}, p > 1.
double besov_norm(const Polynomial& f, double p, const QuadratureRule& rule);

}  // namespace balayage
