#pragma once

#include "dwell/grid.hpp"

namespace dwell {

// Trap family V(x) = x^2/2 + U0 * arctan(x0) * exp(-(x-x0)^2 / (2 sigma^2)).
// For x0 < 0 the Gaussian term is a dip left of the harmonic center; within
// a window of parameters the total is a double well.
struct PotentialParams {
    double U0 = 6.4;
    double sigma = 0.5;
    double x0 = -3.7;
};

double eval_potential(const PotentialParams& p, double x);

// dV/dx0 at fixed x; needed by the continuation in x0.
double eval_potential_dx0(const PotentialParams& p, double x);

SampledFunction sample_potential(const PotentialParams& p, const Grid& g);

struct WellGeometry {
    double left_min;
    double barrier_top;
    double right_min;
};

// Locates the two deepest local minima of the sampled potential and the
// highest interior maximum between them, each refined by a 3-point quadratic
// fit around the winning node. A local extremum must differ from both
// neighbors by more than 1e-12 to count. Throws NoDoubleWell when fewer than
// two minima or no interior maximum exist.
WellGeometry locate_wells(const SampledFunction& v);
WellGeometry locate_wells(const PotentialParams& p, const Grid& g);

} // namespace dwell
