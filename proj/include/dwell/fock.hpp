#pragma once

#include <complex>
#include <vector>

#include "dwell/modes.hpp"

namespace dwell {

// Fock basis convention: index n = number of particles in mode 1 (left
// well), N-n in mode 2.
struct FockVector {
    int N = 0;
    std::vector<std::complex<double>> amplitudes;  // length N+1
};

// Two-mode many-body Hamiltonian in the Fock basis. Diagonal:
//   E1 n + E2 (N-n) + (g0/2V1) n(n-1) + (g0/2V2)(N-n)(N-n-1)
// Coupling n <-> n+1: (Omega/2) sqrt((n+1)(N-n))  (bosonic ladder algebra).
struct FockHamiltonian {
    int N = 0;
    std::vector<double> diagonal;      // length N+1
    std::vector<double> off_diagonal;  // length N
};

FockHamiltonian build_fock_hamiltonian(const TwoModeParams& p);

struct FockSpectrum {
    std::vector<double> energies;             // ascending
    std::vector<std::vector<double>> states;  // unit 2-norm, largest entry positive
};

// Full diagonalization of the (N+1)x(N+1) tridiagonal matrix.
FockSpectrum spectrum(const TwoModeParams& p);

struct SpectrumScan {
    std::vector<double> x0_values;
    std::vector<std::vector<double>> levels;  // per-particle energies, ascending
    std::vector<std::vector<double>> gaps;    // adjacent level differences
    std::vector<TwoModeParams> params_trace;
};

// Recomputes the modes and the two-mode parameters at every x0 (the trap
// shape changes with x0), then diagonalizes. NoDoubleWell / NoBoundMode
// propagate with the offending x0 attached.
SpectrumScan scan_spectrum(const PotentialParams& trap, const Grid& g,
                           const std::vector<double>& x0_list, double g0, int N,
                           double overlap_threshold = kOverlapWarnThreshold);

struct MinGap {
    double x0;
    int level_index;  // gap between levels (level_index-1, level_index)
    double gap;
};

MinGap min_gap(const SpectrumScan& scan);

} // namespace dwell
