#pragma once

#include <array>
#include <string>

#include "dwell/fock.hpp"

namespace dwell {

// Laser sweep x0(t) = x0_start + rate * t.
struct SweepProtocol {
    double x0_start = -5.0;
    double rate = 0.05;
    double t_end = 100.0;  // so x0 ends at x0_start + rate * t_end
    double dt = 2e-5;      // fixed RK4 step, sized for the norm-drift contract
};

// Two-mode parameters cached on a uniform x0 lattice and interpolated by
// natural cubic splines. The lattice stops at the last x0 where the
// construction is valid: wells located, both modes bound, |overlap| <=
// overlap_max.
class ModeTable {
  public:
    explicit ModeTable(std::vector<ModePoint> lattice_points);

    double x0_front() const { return x0_.front(); }
    double x0_back() const { return x0_.back(); }
    const std::vector<ModePoint>& lattice() const { return points_; }

    // Spline-interpolated parameters; x0 clamped to the lattice range.
    ModePoint at(double x0) const;

  private:
    struct Spline {
        std::vector<double> y;
        std::vector<double> y2;  // natural second derivatives
    };
    Spline make_spline(std::vector<double> y) const;
    double eval(const Spline& s, double x0) const;

    std::vector<ModePoint> points_;
    std::vector<double> x0_;
    double step_ = 0.0;
    Spline e1_, e2_, omega_, inv_v1_, inv_v2_, overlap_;
};

ModeTable build_mode_table(const PotentialParams& trap, const Grid& g,
                           double x0_from, double x0_to,
                           double lattice_step = 0.01, double overlap_max = 0.2);

struct SweepResult {
    std::vector<double> times;
    std::vector<double> x0s;
    std::vector<std::vector<double>> populations;  // Fock probabilities per sample
    FockVector final_state;
    double final_time = 0.0;
    double final_x0 = 0.0;
    bool truncated = false;   // window exit before the configured end of the sweep
    double norm_error = 0.0;  // | sum|psi|^2 - 1 | at the end
};

// Integrates i d|psi>/dt = H(x0(t)) |psi> with fixed-step RK4; H is rebuilt
// from the cached parameter table at each stage. The diagonal mean is
// subtracted each step (a global phase; populations and overlaps are
// unchanged). If x0(t) would leave the table before t_end, the trajectory is
// truncated there and flagged.
SweepResult propagate(const FockVector& initial, const SweepProtocol& protocol,
                      const ModeTable& table, double g0, int N,
                      double sample_interval = 0.1);

struct OverlapDistribution {
    std::vector<double> probabilities;  // |<n|psi>|^2 by ascending eigenvalue
    std::string basis_tag;              // which Hamiltonian's eigenstates
};

OverlapDistribution final_overlaps(const FockVector& state, const TwoModeParams& projection,
                                   std::string basis_tag = "projection-hamiltonian");

FockVector fock_ground_state(const TwoModeParams& p);

// Single-particle 2x2 propagation under the same E1(t), E2(t), Omega(t) and
// the same integrator; for g0 = 0 the many-body populations factorize into
// the binomial law built from this amplitude pair.
std::array<std::complex<double>, 2>
propagate_two_level(const SweepProtocol& protocol, const ModeTable& table, double t_final);

std::vector<double> binomial_populations(const std::array<std::complex<double>, 2>& ab, int N);

} // namespace dwell
