#pragma once

// Independent oracles used by the tests. These deliberately avoid the
// library's solver paths: the imaginary-time relaxation uses its own Thomas
// solve (the shifted matrix is strictly diagonally dominant), the quadrature
// uses Simpson weights instead of the Riemann sum, and slope scanning works
// directly on finite differences of the samples.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dwell/grid.hpp"
#include "dwell/operator1d.hpp"

namespace oracles {

// Thomas algorithm for a strictly diagonally dominant tridiagonal system.
inline std::vector<double> thomas_solve(const std::vector<double>& sub,
                                        const std::vector<double>& diag,
                                        const std::vector<double>& sup,
                                        const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n, 0.0), d(n, 0.0);
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - sub[i - 1] * c[i - 1];
        if (i + 1 < n) c[i] = sup[i] / m;
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / m;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

// Backward-Euler imaginary-time relaxation of the GPE to its ground state;
// runs until the energy change per sweep drops below 1e-13. Returns mu.
inline double imaginary_time_mu(const dwell::SampledFunction& potential, double Ng0,
                                double dtau = 0.05, int max_iters = 200000) {
    const auto& g = potential.grid;
    const int n = g.n_points;
    const double h = g.spacing();
    const double kd = 1.0 / (h * h);
    const double ko = -0.5 / (h * h);

    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = std::exp(-0.5 * g.point(i) * g.point(i));
    auto renorm = [&] {
        double s = 0.0;
        for (double v : phi) s += v * v;
        s = std::sqrt(h * s);
        for (double& v : phi) v /= s;
    };
    renorm();

    auto h0_phi = [&](const std::vector<double>& u) {
        std::vector<double> r(n);
        for (int i = 0; i < n; ++i) r[i] = (kd + potential.values[i]) * u[i];
        for (int i = 0; i + 1 < n; ++i) {
            r[i] += ko * u[i + 1];
            r[i + 1] += ko * u[i];
        }
        return r;
    };
    auto energy = [&] {
        auto r = h0_phi(phi);
        double e = 0.0, q = 0.0;
        for (int i = 0; i < n; ++i) {
            e += phi[i] * r[i];
            q += phi[i] * phi[i] * phi[i] * phi[i];
        }
        return h * e + 0.5 * Ng0 * h * q;
    };

    std::vector<double> sub(n - 1, dtau * ko), sup(n - 1, dtau * ko), diag(n);
    double e_prev = energy();
    for (int it = 0; it < max_iters; ++it) {
        for (int i = 0; i < n; ++i)
            diag[i] = 1.0 + dtau * (kd + potential.values[i] + Ng0 * phi[i] * phi[i]);
        phi = thomas_solve(sub, diag, sup, phi);
        renorm();
        const double e = energy();
        if (std::abs(e - e_prev) < 1e-13) break;
        e_prev = e;
    }
    auto r = h0_phi(phi);
    double mu = 0.0, q = 0.0;
    for (int i = 0; i < n; ++i) {
        mu += phi[i] * r[i];
        q += phi[i] * phi[i] * phi[i] * phi[i];
    }
    return h * mu + Ng0 * h * q;
}

// Simpson-rule quadrature of u * (H0 w) on the grid (needs an even number
// of intervals).
inline double simpson_matrix_element(const dwell::SampledFunction& u,
                                     const dwell::TridiagonalOperator& op,
                                     const dwell::SampledFunction& w) {
    const int n = op.grid.n_points;
    if (n % 2 == 0)
        throw std::invalid_argument("simpson oracle needs an odd number of nodes");
    const auto hw = dwell::apply(op, w.values);
    double s = u.values[0] * hw[0] + u.values[n - 1] * hw[n - 1];
    for (int i = 1; i < n - 1; ++i) s += (i % 2 ? 4.0 : 2.0) * u.values[i] * hw[i];
    return op.grid.spacing() / 3.0 * s;
}

// Positions where the finite-difference slope changes sign, classified by
// curvature; the brute-force cross-check for locate_wells.
struct SlopeScan {
    std::vector<double> minima;
    std::vector<double> maxima;
};

inline SlopeScan slope_scan(const dwell::SampledFunction& f) {
    SlopeScan out;
    const auto& v = f.values;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double sl = v[i] - v[i - 1];
        const double sr = v[i + 1] - v[i];
        if (sl < 0.0 && sr > 0.0) out.minima.push_back(f.grid.point(static_cast<int>(i)));
        if (sl > 0.0 && sr < 0.0) out.maxima.push_back(f.grid.point(static_cast<int>(i)));
    }
    return out;
}

} // namespace oracles
