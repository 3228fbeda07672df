#pragma once

#include <cstdint>
#include <vector>

#include "dwell/operator1d.hpp"
#include "dwell/potential.hpp"

namespace dwell {

struct GpeSolution {
    SampledFunction phi;  // real, sum |phi|^2 h = 1
    double mu = 0.0;
    double energy_per_particle = 0.0;  // mu - (Ng0/2) int |phi|^4
    double Ng0 = 0.0;
    PotentialParams params;
    double residual_norm = 0.0;  // ||H0 phi + Ng0 phi^3 - mu phi||_h
};

// Newton iteration on the extended system (discretized stationary GPE plus
// the normalization constraint, mu an unknown). Converges to the branch
// nearest the guess. Throws NoConvergence after 200 iterations or when the
// line search stalls, SingularJacobian if the bordered solve breaks down.
GpeSolution solve_gpe(const PotentialParams& p, const Grid& g, double Ng0,
                      const SampledFunction& guess);

// Seeds from the k-th linear eigenstate and ramps the nonlinearity from 0 to
// Ng0 with an overlap guard (the ramp step halves whenever the converged
// state loses 10% overlap with the previous one, which keeps the iterate on
// one branch through level collisions).
GpeSolution solve_from_linear_level(const PotentialParams& p, const Grid& g,
                                    double Ng0, int level);

struct ArclengthSettings {
    double initial_step = 0.01;
    double min_step = 1e-6;      // adaptive floor on successful steps
    double max_step = 0.05;
    double collapse_step = 1e-8; // below this the branch is lost
    int max_points = 4000;
    double closure_tol = 1e-4;   // (x0, mu) return distance for loops
    double closure_overlap = 1.0 - 1e-6;
};

struct BranchPoint {
    double x0;
    GpeSolution solution;
    bool turning_point;  // dx0/ds changed sign arriving at this point
};

struct Branch {
    std::vector<BranchPoint> points;
    bool closed = false;
    std::vector<double> turning_points;  // interpolated fold locations in x0
};

// Pseudo-arclength predictor-corrector in (phi, mu, x0); state components
// weighted by h, mu and x0 by 1. Traverses folds, terminates on leaving
// [x0_lo, x0_hi] or on closing a loop. Throws StepCollapse if the adaptive
// step shrinks below collapse_step without corrector convergence.
Branch continue_branch(const GpeSolution& seed, double x0_lo, double x0_hi,
                       const ArclengthSettings& settings = {});

// Multistart Newton from normalized a*psi0 + b*psi1 mixtures of the two
// lowest linear eigenstates (16-point angle lattice plus seeded random
// perturbations). Converged solutions are clustered by |<phi_i|phi_j>| >
// 0.999 and filtered to mu in [mu_lo, mu_hi]; failures of individual starts
// are discarded. Deterministic for a fixed seed.
std::vector<GpeSolution> count_solutions(const PotentialParams& p, const Grid& g,
                                         double Ng0, double mu_lo, double mu_hi,
                                         int n_starts, std::uint64_t seed);

} // namespace dwell
