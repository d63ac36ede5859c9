#pragma once

// Oscillation functionals of boundary grids: arc averages, mean oscillation,
// the Campanato seminorm and the gamma-weighted double-integral functional.
//
// Every functional integrates over the arc with the grid-aligned trapezoid
// nodes of grid_arc_pair_rule, so the arc average, the oscillation and the
// gamma = 0 double integral share one discrete measure. Arcs spanning fewer
// than four grid spacings are rejected with ResolutionError.

#include <vector>

#include "balayage/geometry.hpp"
#include "balayage/numerics.hpp"
#include "balayage/operators.hpp"

namespace balayage {

struct OscillationSample {
  Arc arc;
  double value;
  int scale_index;
};

// Throws ResolutionError when |arc| < 4 grid spacings.
void check_arc_resolution(const BoundaryGrid& phi, const Arc& arc);

// (1 / |I|) integral over I of phi
double arc_average(const BoundaryGrid& phi, const Arc& arc);

// (1 / |I|) integral over I of |phi - phi_I|^p
double mean_oscillation(const BoundaryGrid& phi, const Arc& arc, double p);

struct CampanatoResult {
  double sup = 0.0;
  std::vector<OscillationSample> samples;
  std::vector<double> per_scale_max;  // index k - 1 holds level k
};

// sup over the two-shift dyadic grid (levels 1..depth) of
// (1 / |I|^lambda) integral over I of |phi - phi_I|^p.
CampanatoResult campanato_seminorm(const BoundaryGrid& phi, double p, double lambda, int depth);

// (1 / |I|^{1 + s - gamma}) double integral over I x I of
// |phi(theta) - phi(theta')| / |e^{i theta} - e^{i theta'}|^gamma.
double thm1_functional(const BoundaryGrid& phi, const Arc& arc, double gamma, double s,
                       const ArcPairRule& pair_rule);

// Same, on the grid-aligned rule for this arc.
double thm1_functional(const BoundaryGrid& phi, const Arc& arc, double gamma, double s);

// Full result of the double integral (before normalization) with its
// diagonal-band bookkeeping.
ArcPairResult oscillation_pair_integral(const BoundaryGrid& phi, const Arc& arc,
                                        const ArcPairRule& pair_rule);

}  // namespace balayage
