#pragma once

#include <vector>

#include "dwell/modes.hpp"

namespace dwell {

// Stationary point of the classical two-mode equations under the constraint
// c1^2 + c2^2 = N, parametrized c1 = sqrt(N) cos(theta), c2 = sqrt(N)
// sin(theta) with theta in (-pi/2, pi/2]; (c1,c2) and (-c1,-c2) are the same
// state.
struct ClassicalSolution {
    double theta;
    double c1, c2;
    double mu;
    double energy;  // classical two-mode Hamiltonian value
    bool fold;      // merged with a root closer than 1e-8 in theta
};

// Enumerates all real stationary solutions: eliminates mu between the two
// coupled equations, scans the resulting consistency function on a
// 10^4-point theta lattice and refines every sign change by bisection to
// 1e-12. Solutions are sorted by energy. Throws DegenerateOmega when
// Omega == 0 (relative phase unconstrained).
std::vector<ClassicalSolution> classical_roots(const TwoModeParams& p);

// Classical Hamiltonian of the solution; verifies the per-particle identity
// H/N = mu - (g0/2N)(c1^4/V1 + c2^4/V2) before returning.
double classical_energy(const ClassicalSolution& s, const TwoModeParams& p);

} // namespace dwell
