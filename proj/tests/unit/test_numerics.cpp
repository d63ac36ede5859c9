#include <cmath>
#include <numbers>
#include <vector>

#include "balayage/errors.hpp"
#include "balayage/geometry.hpp"
#include "balayage/numerics.hpp"
#include "doctest.h"

using namespace balayage;
using doctest::Approx;

namespace {
double one(std::complex<double>) { return 1.0; }
}  // namespace

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {2, 5, 16, 32}) {
    const auto gl = gauss_legendre(n);
    REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += gl.weights[i] * std::pow(gl.nodes[i], k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      CHECK(sum == Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("pairwise_sum matches exact sums and ignores thread layout") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(1.0 / (i * (i + 1.0)));
  CHECK(pairwise_sum(v) == Approx(1.0 - 1.0 / 1001.0).epsilon(1e-15));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{2.5}) == 2.5);
}

TEST_CASE("build_disk_rule shape and constant integrand") {
  const auto rule = build_disk_rule(2, 4, 0);
  CHECK(rule.size() == 8);
  CHECK(integrate_disk(one, 0.0, rule) == Approx(1.0).epsilon(1e-10));
  const auto fine = build_disk_rule(16, 64, 10);
  for (const auto& node : fine.radial) {
    CHECK(node.radius < 1.0);
    CHECK(node.weight > 0.0);
  }
}

TEST_CASE("build_disk_rule rejects degenerate counts") {
  CHECK_THROWS_AS(build_disk_rule(1, 8, 2), PreconditionError);
  CHECK_THROWS_AS(build_disk_rule(4, 3, 2), PreconditionError);
  CHECK_THROWS_AS(build_disk_rule(4, 8, -1), PreconditionError);
  CHECK_THROWS_AS(build_disk_rule(0, 0, 0), PreconditionError);
}

TEST_CASE("disk rule integrates closed-form radial profiles") {
  const auto rule = build_disk_rule(32, 256, 8);
  // integral of (1 - r^2)^2 2r dr = 1/3
  const double a = integrate_disk([](std::complex<double> z) { return std::pow(1.0 - std::norm(z), 2); }, 0.0, rule);
  CHECK(a == Approx(1.0 / 3.0).epsilon(1e-6));
  // integral of r^2 2r dr = 1/2
  CHECK(integrate_disk([](std::complex<double> z) { return std::norm(z); }, 0.0, rule) ==
        Approx(0.5).epsilon(1e-8));
}

TEST_CASE("integrate_disk against dA_alpha") {
  const auto rule = build_disk_rule(16, 128, 10);
  CHECK(integrate_disk(one, 0.0, rule) == Approx(1.0).epsilon(1e-10));
  CHECK(integrate_disk(one, 2.0, rule) == Approx(1.0).epsilon(1e-8));
  CHECK(integrate_disk(one, 2.0 / 3.0, rule) == Approx(1.0).epsilon(1e-8));
  CHECK(integrate_disk([](std::complex<double> z) { return std::norm(z); }, 0.0, rule) ==
        Approx(0.5).epsilon(1e-8));
  CHECK_THROWS_AS(integrate_disk(one, -1.0, rule), PreconditionError);
  CHECK_THROWS_AS(integrate_disk(one, -2.0, rule), PreconditionError);
}

TEST_CASE("integrate_disk reports the node of a non-finite value") {
  const auto rule = build_disk_rule(4, 8, 1);
  const auto bad = rule.radial[3].radius * rule.unit_roots[2];
  try {
    integrate_disk([&](std::complex<double> z) { return z == bad ? NAN : 1.0; }, 0.0, rule);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.node() == bad);
  }
}

TEST_CASE("radially symmetric polynomials agree with the 1-D antiderivative") {
  const auto rule = build_disk_rule(16, 64, 10);
  for (int k = 0; k <= 8; ++k) {
    const double v = integrate_disk([k](std::complex<double> z) { return std::pow(std::abs(z), k); }, 0.0, rule);
    CHECK(v == Approx(2.0 / (k + 2.0)).epsilon(1e-6));
  }
}

TEST_CASE("boundary refinement never makes the singular profile worse") {
  // integral of (1 - r^2)^{-1/2} 2r dr over [0, 1) = 2
  auto profile = [](std::complex<double> z) { return 1.0 / std::sqrt(1.0 - std::norm(z)); };
  double previous = INFINITY;
  for (int levels : {1, 2, 4, 8, 16, 32}) {
    const double err = std::abs(integrate_disk(profile, 0.0, build_disk_rule(8, 8, levels)) - 2.0);
    CHECK(err <= previous);
    previous = err;
  }
  CHECK(previous < 1e-4);
}

TEST_CASE("integrate_circle") {
  CHECK(integrate_circle([](double) { return 1.0; }, 16) == Approx(kTwoPi).epsilon(1e-15));
  CHECK(std::abs(integrate_circle([](double t) { return std::cos(t); }, 64)) < 1e-12);
  const DiskPoint z(0.5, 0.0);
  CHECK(integrate_circle([&](double t) { return poisson_kernel(z, t); }, 512) == Approx(kTwoPi).epsilon(1e-8));
  CHECK_THROWS_AS(integrate_circle([](double) { return 1.0; }, 7), PreconditionError);
  CHECK_THROWS_AS(integrate_circle([](double) { return NAN; }, 8), NumericalError);
}

TEST_CASE("integrate_circle is exact on trigonometric polynomials of degree below n/2") {
  const int n = 32;
  auto trig = [](double t) {
    double v = 0.7;
    for (int k = 1; k < 16; ++k) v += std::cos(k * t + 0.3 * k) / k + std::sin(k * t) * 0.1;
    return v;
  };
  CHECK(std::abs(integrate_circle(trig, n) - 0.7 * kTwoPi) < 1e-12);
}

TEST_CASE("integrate_toward_boundary handles endpoint singularities") {
  // integral over [1/2, 1) of (1 - r)^{-1/2} = 2 sqrt(1/2)
  const double v = integrate_toward_boundary([](double r) { return 1.0 / std::sqrt(1.0 - r); }, 0.5);
  CHECK(v == Approx(2.0 * std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("with_angular_count keeps the radial nodes") {
  const auto rule = build_disk_rule(4, 8, 2);
  const auto wide = with_angular_count(rule, 40);
  CHECK(wide.unit_roots.size() == 40);
  CHECK(wide.radial.size() == rule.radial.size());
  CHECK(integrate_disk(one, 0.0, wide) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("arc pair integral of the constant") {
  const Arc arc(0.3, std::numbers::pi / 4);
  const double len = arc.length();
  const auto rule = build_arc_pair_rule(arc, 64, 0.0);
  const auto res = integrate_arc_pair([](double, double) { return 1.0; }, arc, rule);
  CHECK(res.value == Approx(len * len).epsilon(1e-8));
  const auto grid = grid_arc_pair_rule(1024, arc, 0.0);
  CHECK(integrate_arc_pair([](double, double) { return 1.0; }, arc, grid).value == Approx(len * len).epsilon(1e-8));
}

TEST_CASE("arc pair integral absorbs the singular weight") {
  // f = chord^gamma cancels the weight, so the exact value is |I|^2. After the
  // substitution the sampled factor is t^(gamma / (1 - gamma)), smooth for these gammas.
  const Arc arc(1.0, std::numbers::pi / 4);
  const double exact = arc.length() * arc.length();
  auto cancel = [](double gamma) { return [gamma](double t, double p) { return std::pow(chord(t, p), gamma); }; };
  for (double gamma : {0.0, 0.5, 0.9}) {
    const auto res = integrate_arc_pair(cancel(gamma), arc, build_arc_pair_rule(arc, 64, gamma));
    CHECK(res.value == Approx(exact).epsilon(1e-8));
  }
  // gamma = 1/4 gives a t^(1/3) cusp; accuracy is algebraic, not spectral.
  const auto rough = integrate_arc_pair(cancel(0.25), arc, build_arc_pair_rule(arc, 64, 0.25));
  CHECK(rough.value == Approx(exact).epsilon(5e-5));
}

TEST_CASE("arc pair integral matches a dense brute-force double sum") {
  const double gamma = 0.5;
  const Arc arc(0.0, std::numbers::pi / 4);
  const int n = 10000;
  const double h = arc.length() / n;
  double off = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = arc.start() + (i + 0.5) * h;
    double row = 0.0;
    for (int j = i + 1; j < n; ++j) row += std::pow(chord(t, arc.start() + (j + 0.5) * h), -gamma);
    off += row;
  }
  // Off-diagonal cells twice, plus n diagonal cells of exact mass 2 h^{2-g} / ((1-g)(2-g)).
  const double brute = 2.0 * off * h * h + n * 2.0 * std::pow(h, 2.0 - gamma) / ((1.0 - gamma) * (2.0 - gamma));
  const auto res = integrate_arc_pair([](double, double) { return 1.0; }, arc, build_arc_pair_rule(arc, 64, gamma));
  CHECK(res.value == Approx(brute).epsilon(0.01));
  CHECK(res.band_value > 0.0);
  CHECK(res.band_majorant >= res.band_value * (1.0 - 1e-9));
}

TEST_CASE("arc pair rules reject gamma >= 1") {
  const Arc arc(0.0, 1.0);
  CHECK_THROWS_AS(build_arc_pair_rule(arc, 16, 1.0), PreconditionError);
  CHECK_THROWS_AS(grid_arc_pair_rule(256, arc, 1.5), PreconditionError);
  CHECK_THROWS_AS(build_arc_pair_rule(arc, 16, -0.1), PreconditionError);
}
