#include "dwell/classical_two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr int kThetaLattice = 10000;
constexpr double kFoldMergeTol = 1e-8;

// Consistency function: mu eliminated between the two stationary equations,
// multiplied through by sin(theta) cos(theta) so the axis poles cancel.
//   g(theta) = 1/2 [ (E1-E2) + L1 cos^2 - L2 sin^2 ] sin(2 theta)
//              - (Omega/2) cos(2 theta),   L_j = g0 N / V_j.
// Zeros of g on (-pi/2, pi/2] are exactly the stationary states when
// Omega != 0 (for Omega != 0 no solution sits on an axis).
double consistency(const TwoModeParams& p, double th) {
    const double L1 = p.g0 * p.N / p.V1;
    const double L2 = p.g0 * p.N / p.V2;
    const double c = std::cos(th), s = std::sin(th);
    return 0.5 * ((p.E1 - p.E2) + L1 * c * c - L2 * s * s) * std::sin(2.0 * th) -
           0.5 * p.Omega * std::cos(2.0 * th);
}

double recover_mu(const TwoModeParams& p, double c1, double c2) {
    // Use the equation whose amplitude is larger.
    if (std::abs(c1) >= std::abs(c2))
        return p.E1 + 0.5 * p.Omega * c2 / c1 + p.g0 * c1 * c1 / p.V1;
    return p.E2 + 0.5 * p.Omega * c1 / c2 + p.g0 * c2 * c2 / p.V2;
}

double hamiltonian(const TwoModeParams& p, double c1, double c2) {
    return p.E1 * c1 * c1 + p.E2 * c2 * c2 + p.Omega * c1 * c2 +
           0.5 * p.g0 / p.V1 * c1 * c1 * c1 * c1 +
           0.5 * p.g0 / p.V2 * c2 * c2 * c2 * c2;
}

bool satisfies_both_lines(const TwoModeParams& p, double c1, double c2, double mu) {
    const double tol = 1e-9 * std::max(1.0, std::abs(mu)) * std::sqrt(double(p.N));
    const double r1 = p.E1 * c1 + 0.5 * p.Omega * c2 + p.g0 * c1 * c1 * c1 / p.V1 - mu * c1;
    const double r2 = p.E2 * c2 + 0.5 * p.Omega * c1 + p.g0 * c2 * c2 * c2 / p.V2 - mu * c2;
    return std::abs(r1) <= tol && std::abs(r2) <= tol;
}

} // namespace

std::vector<ClassicalSolution> classical_roots(const TwoModeParams& p) {
    if (p.Omega == 0.0)
        throw DegenerateOmega("classical_roots: Omega = 0 leaves the relative phase free");

    const double pi = std::numbers::pi;
    const double dth = pi / kThetaLattice;

    // theta lattice spanning (-pi/2, pi/2]; g has period pi.
    std::vector<double> thetas;
    std::vector<double> zeros_found;
    double prev_th = -0.5 * pi;
    double prev_g = consistency(p, prev_th);
    for (int i = 1; i <= kThetaLattice; ++i) {
        const double th = -0.5 * pi + i * dth;
        const double gv = consistency(p, th);
        if (gv == 0.0) {
            zeros_found.push_back(th);
        } else if (prev_g != 0.0 && std::signbit(prev_g) != std::signbit(gv)) {
            double a = prev_th, b = th;
            double ga = prev_g;
            for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
                const double m = 0.5 * (a + b);
                const double gm = consistency(p, m);
                if (gm == 0.0) { a = b = m; break; }
                if (std::signbit(ga) != std::signbit(gm)) b = m;
                else { a = m; ga = gm; }
            }
            zeros_found.push_back(0.5 * (a + b));
        }
        prev_th = th;
        prev_g = gv;
    }

    // Map representatives into (-pi/2, pi/2] and merge near-coincident roots.
    for (double& th : zeros_found)
        if (th <= -0.5 * pi) th += pi;
    std::sort(zeros_found.begin(), zeros_found.end());

    std::vector<ClassicalSolution> out;
    const double sqrtN = std::sqrt(double(p.N));
    std::size_t i = 0;
    while (i < zeros_found.size()) {
        double th = zeros_found[i];
        bool fold = false;
        while (i + 1 < zeros_found.size() && zeros_found[i + 1] - th < kFoldMergeTol) {
            th = 0.5 * (th + zeros_found[i + 1]);
            fold = true;
            ++i;
        }
        ++i;
        ClassicalSolution s;
        s.theta = th;
        s.c1 = sqrtN * std::cos(th);
        s.c2 = sqrtN * std::sin(th);
        s.mu = recover_mu(p, s.c1, s.c2);
        s.energy = hamiltonian(p, s.c1, s.c2);
        s.fold = fold;
        if (satisfies_both_lines(p, s.c1, s.c2, s.mu))
            out.push_back(s);
    }

    std::sort(out.begin(), out.end(),
              [](const ClassicalSolution& a, const ClassicalSolution& b) {
                  return a.energy < b.energy;
              });
    return out;
}

double classical_energy(const ClassicalSolution& s, const TwoModeParams& p) {
    const double H = hamiltonian(p, s.c1, s.c2);
    // Per-particle identity H/N = mu - (g0/2N)(c1^4/V1 + c2^4/V2), the
    // two-mode analogue of the E/N formula for the full GPE.
    const double c14 = s.c1 * s.c1 * s.c1 * s.c1;
    const double c24 = s.c2 * s.c2 * s.c2 * s.c2;
    const double viaMu = s.mu - 0.5 * p.g0 / p.N * (c14 / p.V1 + c24 / p.V2);
    if (std::abs(H / p.N - viaMu) > 1e-9 * std::max(1.0, std::abs(H / p.N))) {
        std::ostringstream os;
        os << "classical_energy: identity violated, H/N=" << H / p.N
           << " vs " << viaMu;
        throw std::logic_error(os.str());
    }
    return H;
}

} // namespace dwell
