#pragma once

#include <string>
#include <utility>

#include "dwell/operator1d.hpp"
#include "dwell/potential.hpp"

namespace dwell {

inline constexpr double kOverlapWarnThreshold = 1e-2;

// Reduced two-mode description: on-site energies E_j = <u_j|H0|u_j>,
// tunneling Omega = 2 <u1|H0|u2>, mode volumes 1/V_j = int |u_j|^4,
// interaction g0 for N particles. H0 here is always the full (unsplit)
// double-well operator.
struct TwoModeParams {
    double E1 = 0.0;
    double E2 = 0.0;
    double Omega = 0.0;
    double V1 = 1.0;
    double V2 = 1.0;
    double g0 = 0.0;
    int N = 1;
    double overlap = 0.0;          // int u1 u2 dx, signed
    bool overlap_warning = false;  // |overlap| exceeded the configured threshold
};

// Splits the double well at the barrier top (snapped to the nearest grid
// node): the left potential equals V for x <= split and stays constant at
// V(split) beyond it; the right potential mirrors that. Both are continuous
// at the split node.
std::pair<SampledFunction, SampledFunction>
split_potential(const SampledFunction& v, const WellGeometry& w);

std::pair<SampledFunction, SampledFunction>
split_potential(const PotentialParams& p, const Grid& g, const WellGeometry& w);

// Normalized ground states of the two split potentials, each taken positive
// at its well minimum. Throws NoBoundMode if a ground energy reaches the
// flattened plateau (the mode would not be localized).
std::pair<SampledFunction, SampledFunction>
build_modes(const SampledFunction& left_v, const SampledFunction& right_v);

// E_j, Omega from matrix elements against the full H0; V_j from the quartic
// sums. Orthogonality is monitored, not enforced: |overlap| beyond the
// threshold only raises the warning flag.
TwoModeParams two_mode_params(const SampledFunction& u1, const SampledFunction& u2,
                              const TridiagonalOperator& full_h0, double g0, int N,
                              double overlap_threshold = kOverlapWarnThreshold);

// Two-column text (x, V) on a uniform grid; used to feed externally
// tabulated wells (symmetric test cases).
SampledFunction load_tabulated_potential(const std::string& path);

// One point of a scan: the interaction-independent part of the two-mode
// reduction at a given trap shape.
struct ModePoint {
    double x0;
    double E1, E2, Omega;
    double inv_V1, inv_V2;
    double overlap;
};

// Full pipeline locate -> split -> modes -> matrix elements at p.x0.
ModePoint mode_point(const PotentialParams& p, const Grid& g);

TwoModeParams attach_interaction(const ModePoint& mp, double g0, int N,
                                 double overlap_threshold = kOverlapWarnThreshold);

} // namespace dwell
