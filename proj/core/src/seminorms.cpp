#include "balayage/seminorms.hpp"

#include <cmath>

#include "balayage/errors.hpp"
#include "balayage/parallel.hpp"

namespace balayage {

namespace {

struct ArcSamples {
  std::vector<double> values;
  std::vector<double> weights;
};

ArcSamples sample_arc(const BoundaryGrid& phi, const Arc& arc) {
  check_arc_resolution(phi, arc);
  const auto rule = grid_arc_pair_rule(phi.size(), arc, 0.0);
  ArcSamples s;
  s.weights = rule.weights;
  s.values.reserve(rule.angles.size());
  for (double a : rule.angles) s.values.push_back(phi.value_at(a));
  return s;
}

double weighted_mean(const ArcSamples& s) {
  std::vector<double> terms(s.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = s.weights[i] * s.values[i];
  return pairwise_sum(terms) / pairwise_sum(s.weights);
}

}  // namespace

void check_arc_resolution(const BoundaryGrid& phi, const Arc& arc) {
  if (arc.length() < 4.0 * phi.spacing() * (1.0 - 1e-12)) {
    throw ResolutionError("arc shorter than four grid spacings");
  }
}

double arc_average(const BoundaryGrid& phi, const Arc& arc) {
  return weighted_mean(sample_arc(phi, arc));
}

double mean_oscillation(const BoundaryGrid& phi, const Arc& arc, double p) {
  if (!(p >= 1.0)) throw PreconditionError("mean_oscillation: p must be at least 1");
  const auto s = sample_arc(phi, arc);
  const double avg = weighted_mean(s);
  std::vector<double> terms(s.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double d = std::abs(s.values[i] - avg);
    terms[i] = s.weights[i] * (p == 1.0 ? d : std::pow(d, p));
  }
  return pairwise_sum(terms) / arc.length();
}

CampanatoResult campanato_seminorm(const BoundaryGrid& phi, double p, double lambda, int depth) {
  if (!(lambda >= 0.0)) throw PreconditionError("campanato_seminorm: lambda must be nonnegative");
  if (depth < 1) throw PreconditionError("campanato_seminorm: depth must be positive");
  CampanatoResult result;
  for (int level = 1; level <= depth; ++level) {
    const auto arcs = dyadic_level(level);
    check_arc_resolution(phi, arcs.front());
    std::vector<double> values(arcs.size());
    parallel_for(arcs.size(), [&](std::size_t i) {
      values[i] = std::pow(arcs[i].length(), 1.0 - lambda) * mean_oscillation(phi, arcs[i], p);
    });
    double level_max = 0.0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      result.samples.push_back({arcs[i], values[i], level});
      level_max = std::max(level_max, values[i]);
    }
    result.per_scale_max.push_back(level_max);
    result.sup = std::max(result.sup, level_max);
  }
  return result;
}

ArcPairResult oscillation_pair_integral(const BoundaryGrid& phi, const Arc& arc,
                                        const ArcPairRule& pair_rule) {
  check_arc_resolution(phi, arc);
  if (pair_rule.gamma == 0.0) {
    // Tensor path: sample the grid once per node.
    std::vector<double> values;
    values.reserve(pair_rule.angles.size());
    for (double a : pair_rule.angles) values.push_back(phi.value_at(a));
    auto index_of = [&](double angle) {
      return static_cast<std::size_t>(
          std::lower_bound(pair_rule.angles.begin(), pair_rule.angles.end(), angle) -
          pair_rule.angles.begin());
    };
    return integrate_arc_pair(
        [&](double theta, double other) {
          return std::abs(values[index_of(theta)] - values[index_of(other)]);
        },
        arc, pair_rule);
  }
  return integrate_arc_pair(
      [&](double theta, double other) { return std::abs(phi.value_at(theta) - phi.value_at(other)); },
      arc, pair_rule);
}

double thm1_functional(const BoundaryGrid& phi, const Arc& arc, double gamma, double s,
                       const ArcPairRule& pair_rule) {
  if (!(s > 0.0)) throw PreconditionError("thm1_functional: s must be positive");
  detail::check_arc_pair_gamma(gamma);
  if (gamma != pair_rule.gamma) {
    throw PreconditionError("thm1_functional: gamma differs from the pair rule's gamma");
  }
  const auto result = oscillation_pair_integral(phi, arc, pair_rule);
  return result.value / std::pow(arc.length(), 1.0 + s - gamma);
}

double thm1_functional(const BoundaryGrid& phi, const Arc& arc, double gamma, double s) {
  return thm1_functional(phi, arc, gamma, s, grid_arc_pair_rule(phi.size(), arc, gamma));
}

}  // namespace balayage
