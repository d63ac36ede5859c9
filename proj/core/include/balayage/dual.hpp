#pragma once

// Forward-mode dual numbers a + b eps, eps^2 = 0, over a real or complex field.
// Evaluating a holomorphic expression at z + eps yields f(z) + f'(z) eps with no
// step size and no subtractive cancellation.

#include <cmath>
#include <complex>

#include "balayage/numerics.hpp"

namespace balayage {

template <class T>
struct Dual {
  T value{};
  T derivative{};

  Dual() = default;
  Dual(T v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Dual(T v, T d) : value(v), derivative(d) {}

  static Dual variable(T v) { return Dual(v, T(1)); }

  friend Dual operator+(const Dual& a, const Dual& b) {
    return {a.value + b.value, a.derivative + b.derivative};
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    return {a.value - b.value, a.derivative - b.derivative};
  }
  friend Dual operator-(const Dual& a) { return {-a.value, -a.derivative}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.value * b.derivative + a.derivative * b.value};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    return {a.value / b.value,
            (a.derivative * b.value - a.value * b.derivative) / (b.value * b.value)};
  }
  friend Dual operator*(const Dual& a, double s) { return {a.value * s, a.derivative * s}; }
  friend Dual operator*(double s, const Dual& a) { return a * s; }
};

template <class T>
Dual<T> pow(const Dual<T>& a, double exponent) {
  using std::pow;
  const T p = pow(a.value, exponent - 1.0);
  return {p * a.value, exponent * p * a.derivative};
}

template <class T>
bool is_finite_value(const Dual<T>& d) {
  using balayage::is_finite_value;
  return is_finite_value(d.value) && is_finite_value(d.derivative);
}

using DualComplex = Dual<std::complex<double>>;

}  // namespace balayage
