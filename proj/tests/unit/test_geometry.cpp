#include <cmath>
#include <numbers>
#include <random>

#include "balayage/errors.hpp"
#include "balayage/geometry.hpp"
#include "balayage/numerics.hpp"
#include "doctest.h"

using namespace balayage;
using doctest::Approx;
using std::numbers::pi;

namespace {

struct Sampler {
  std::mt19937_64 engine;
  explicit Sampler(std::uint64_t seed) : engine(seed) {}
  double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double angle() { return kTwoPi * uniform(); }
  DiskPoint point(double max_radius = 0.999) { return DiskPoint::polar(max_radius * std::sqrt(uniform()), angle()); }
};

}  // namespace

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  CHECK(wrap_angle(pi) == Approx(pi));
  CHECK(wrap_angle(-pi) == Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == Approx(-pi / 2));
  CHECK(wrap_angle(0.25 + 6 * kTwoPi) == Approx(0.25));
}

TEST_CASE("DiskPoint rejects points on or outside the circle") {
  CHECK_THROWS_AS(DiskPoint(1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(DiskPoint(0.8, 0.8), PreconditionError);
  CHECK_THROWS_AS(DiskPoint(NAN, 0.0), PreconditionError);
  CHECK_NOTHROW(DiskPoint(0.999, 0.0));
}

TEST_CASE("poisson_kernel closed forms") {
  CHECK(poisson_kernel(DiskPoint(0.0, 0.0), 1.234) == 1.0);
  CHECK(poisson_kernel(DiskPoint(0.5, 0.0), 0.0) == Approx(3.0).epsilon(1e-15));
  CHECK(poisson_kernel(DiskPoint(0.5, 0.0), pi) == Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("poisson_kernel equals the real part of the Herglotz kernel") {
  Sampler s(11);
  for (int i = 0; i < 1000; ++i) {
    const DiskPoint z = s.point();
    const double t = s.angle();
    const auto q = z.value() * std::polar(1.0, -t);
    const double herglotz = ((1.0 + q) / (1.0 - q)).real();
    const double p = poisson_kernel(z, t);
    CHECK(p > 0.0);
    CHECK(p == Approx(herglotz).epsilon(1e-9));
  }
}

TEST_CASE("Poisson kernel integrates to 2 pi up to |z| = 0.99") {
  for (double r : {0.0, 0.5, 0.9, 0.99}) {
    const DiskPoint z = DiskPoint::polar(r, 2.0);
    CHECK(integrate_circle([&](double t) { return poisson_kernel(z, t); }, 4096) == Approx(kTwoPi).epsilon(1e-8));
  }
}

TEST_CASE("Poisson kernel is at most 4 on |z| <= 1/2") {
  Sampler s(12);
  for (int i = 0; i < 100000; ++i) CHECK(poisson_kernel(s.point(0.5), s.angle()) <= 4.0);
}

TEST_CASE("poisson_kernel_integral matches quadrature, including near-full arcs") {
  Sampler s(13);
  for (int i = 0; i < 200; ++i) {
    const DiskPoint z = s.point(0.95);
    const double a = s.angle() - 3.0;
    const double len = i % 10 == 0 ? kTwoPi * (1.0 - 1e-3 * s.uniform()) : kTwoPi * s.uniform();
    const auto gl = gauss_legendre(32);
    double ref = 0.0;
    const int panels = 256;
    const double h = len / panels;
    for (int p = 0; p < panels; ++p) {
      for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
        ref += 0.5 * h * gl.weights[k] * poisson_kernel(z, a + h * (p + 0.5 + 0.5 * gl.nodes[k]));
      }
    }
    CHECK(poisson_kernel_integral(z.value(), a, a + len) == Approx(ref).epsilon(1e-9));
  }
  CHECK(poisson_kernel_integral(0.0, 0.1, 0.1 + kTwoPi) == Approx(kTwoPi));
  CHECK(poisson_kernel_integral(std::complex<double>(0.3, 0.4), 1.0, 1.0 + kTwoPi) == Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("kernel difference bound for points far from the arc") {
  Sampler s(14);
  for (int i = 0; i < 100000; ++i) {
    const double r = 0.5 + 0.4999 * s.uniform();
    const double omega = s.angle();
    const DiskPoint z = DiskPoint::polar(r, omega);
    // theta, phi measured from omega within (-pi, pi]
    const double dt = (2.0 * s.uniform() - 1.0) * pi;
    const double dp = (2.0 * s.uniform() - 1.0) * pi;
    const double lhs = std::abs(poisson_kernel(z, omega + dt) - poisson_kernel(z, omega + dp));
    const double rhs = 2.0 * (std::abs(dt) + std::abs(dp)) * std::abs(dt - dp) / std::pow(1.0 - r, 3);
    CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
  }
}

TEST_CASE("nested-square kernel differences scale like |I|^{-1-gamma} 4^{-n}") {
  // For e^{i omega} in 2^{n+1} I \ 2^n I and z in the corresponding box
  // annulus, sup over I x I of the weighted kernel difference times
  // |I|^{1+gamma} 4^n shows no growth in n.
  const double gamma = 0.5;
  const double len = kTwoPi / 1024;
  std::vector<double> per_n;
  for (int n = 1; n <= 8; ++n) {
    double worst = 0.0;
    for (int a = 0; a < 8; ++a) {
      const double omega = (std::ldexp(len, n) / 2.0) * (1.0 + (a + 0.5) / 8.0);  // in 2^{n+1}I \ 2^nI
      for (int b = 0; b < 8; ++b) {
        const double depth = std::ldexp(len, n) / kTwoPi * (1.0 + (b + 0.5) / 8.0);
        const DiskPoint z = DiskPoint::polar(1.0 - depth, omega);
        for (int i = 0; i <= 16; ++i) {
          for (int j = 0; j < i; ++j) {
            const double t = -len / 2 + len * i / 16.0, p = -len / 2 + len * j / 16.0;
            const double v = std::abs(poisson_kernel(z, t) - poisson_kernel(z, p)) / std::pow(chord(t, p), gamma);
            worst = std::max(worst, v * std::pow(len, 1.0 + gamma) * std::ldexp(1.0, 2 * n));
          }
        }
      }
    }
    per_n.push_back(worst);
  }
  std::vector<double> sorted = per_n;
  std::sort(sorted.begin(), sorted.end());
  const double med = 0.5 * (sorted[3] + sorted[4]);
  const double tail = std::max({per_n[5], per_n[6], per_n[7]});
  CHECK(tail <= 3.0 * med);
}

TEST_CASE("pseudo-hyperbolic and hyperbolic distance closed forms") {
  const DiskPoint o(0.0, 0.0), h(0.5, 0.0), mh(-0.5, 0.0), w(0.3, -0.4);
  CHECK(pseudo_hyperbolic(o, w) == Approx(0.5));
  CHECK(pseudo_hyperbolic(w, w) == 0.0);
  CHECK(pseudo_hyperbolic(h, mh) == Approx(0.8).epsilon(1e-15));
  CHECK(hyperbolic_distance(w, w) == 0.0);
  CHECK(hyperbolic_distance(o, h) == Approx(0.5 * std::log(3.0)).epsilon(1e-15));
  CHECK(hyperbolic_distance(o, h) == Approx(0.549306).epsilon(1e-6));
}

TEST_CASE("hyperbolic distance is symmetric, Moebius invariant and a metric") {
  Sampler s(15);
  for (int i = 0; i < 2000; ++i) {
    const DiskPoint a = s.point(0.9), z = s.point(0.9), w = s.point(0.9), u = s.point(0.9);
    const double d = hyperbolic_distance(z, w);
    CHECK(d == Approx(hyperbolic_distance(w, z)).epsilon(1e-14));
    const DiskPoint fz(disk_automorphism(a.value(), z.value()));
    const DiskPoint fw(disk_automorphism(a.value(), w.value()));
    CHECK(std::abs(hyperbolic_distance(fz, fw) - d) <= 1e-12 * std::max(1.0, d));
    CHECK(hyperbolic_distance(z, u) <= d + hyperbolic_distance(w, u) + 1e-12);
  }
}

TEST_CASE("disk automorphism is an involution swapping a and 0") {
  const std::complex<double> a(0.3, 0.2), z(-0.1, 0.6);
  CHECK(std::abs(disk_automorphism(a, a)) < 1e-16);
  CHECK(std::abs(disk_automorphism(a, 0.0) - a) < 1e-16);
  CHECK(std::abs(disk_automorphism(a, disk_automorphism(a, z)) - z) < 1e-15);
}

TEST_CASE("arcs") {
  const Arc arc(0.0, 1.0);
  CHECK(arc.contains(0.5));
  CHECK(arc.contains(-0.5));
  CHECK(arc.contains(kTwoPi - 0.4));
  CHECK_FALSE(arc.contains(0.6));
  CHECK(Arc(-0.5, 1.0).center() == Approx(kTwoPi - 0.5));
  CHECK(Arc::full_circle().contains(3.0));
  CHECK_THROWS_AS(Arc(0.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(Arc(0.0, kTwoPi + 1e-9), PreconditionError);
}

TEST_CASE("dilate_arc") {
  const Arc arc(1.0, 0.3);
  CHECK(dilate_arc(arc, 0) == arc);
  const Arc d = dilate_arc(Arc(1.0, pi / 8), 2);
  CHECK(d.center() == Approx(1.0));
  CHECK(d.length() == Approx(pi / 2));
  CHECK(dilate_arc(Arc(1.0, pi), 3).length() == Approx(kTwoPi));
}

TEST_CASE("Carleson square membership") {
  const CarlesonSquare sq{Arc(0.0, kTwoPi / 4)};
  CHECK(sq.inner_radius() == Approx(0.75));
  CHECK(sq.contains(std::polar(0.8, 0.1)));
  CHECK(sq.contains(std::polar(0.75, 0.0)));
  CHECK_FALSE(sq.contains(std::polar(0.7, 0.0)));
  CHECK_FALSE(sq.contains(std::polar(0.9, 1.0)));
  CHECK_FALSE(sq.contains(0.0));
  CHECK(CarlesonSquare{Arc::full_circle()}.contains(0.0));
}

TEST_CASE("hyperbolic disk image is consistent with membership") {
  Sampler s(16);
  for (int i = 0; i < 50; ++i) {
    const HyperbolicDisk disk(s.point(0.95), 0.1 + 2.0 * s.uniform());
    const auto img = disk.euclidean_image();
    for (int j = 0; j < 200; ++j) {
      const DiskPoint w = s.point();
      const double e = std::abs(w.value() - img.center) - img.radius;
      if (std::abs(e) < 1e-9) continue;
      CHECK(disk.contains(w.value()) == (e < 0.0));
    }
  }
  CHECK_THROWS_AS(HyperbolicDisk(DiskPoint(0.0, 0.0), 0.0), PreconditionError);
  const auto centered = HyperbolicDisk(DiskPoint(0.0, 0.0), 1.0).euclidean_image();
  CHECK(centered.radius == Approx(std::tanh(1.0)));
}

TEST_CASE("dyadic grid counts and arcs") {
  CHECK(dyadic_arcs(1).size() == 4);
  for (const auto& a : dyadic_arcs(1)) CHECK(a.length() == Approx(pi));
  CHECK(dyadic_arcs(3).size() == 28);
  const auto level = dyadic_level(2);
  REQUIRE(level.size() == 8);
  CHECK(level[0].center() == Approx(pi / 4));
  CHECK(level[4].center() == Approx(pi / 2));
  CHECK_THROWS_AS(dyadic_level(25), PreconditionError);
  CHECK_THROWS_AS(dyadic_level(0), PreconditionError);
}

TEST_CASE("two-shift dyadic grid covers every arc within a factor 4") {
  const int depth = 10;
  const auto arcs = dyadic_arcs(depth);
  Sampler s(17);
  for (int i = 0; i < 10000; ++i) {
    const double min_len = kTwoPi / (1 << depth);
    const double len = min_len + (kTwoPi / 4 - min_len) * s.uniform() * s.uniform();
    const double c = s.angle();
    bool covered = false;
    for (const auto& a : arcs) {
      if (a.length() > 4.0 * len) continue;
      if (std::abs(wrap_angle(c - a.center())) + len / 2 <= a.length() / 2 + 1e-12) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("chord") {
  CHECK(chord(0.0, pi) == Approx(2.0));
  CHECK(chord(0.0, 0.0) == 0.0);
  CHECK(chord(0.0, pi / 3) == Approx(1.0));
  CHECK(chord(0.1, 0.1 + kTwoPi) == Approx(0.0).epsilon(1e-12));
}
