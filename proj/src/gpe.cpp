#include "dwell/gpe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dwell/errors.hpp"
#include "lapack_util.hpp"

namespace dwell {

namespace {

constexpr double kResidualTol = 5e-11;   // drive below the 1e-9 contract
constexpr double kConstraintTol = 1e-12;
constexpr int kMaxNewtonIters = 200;

struct GpeSystem {
    PotentialParams params;
    Grid grid;
    double Ng0;
    std::vector<double> v;    // sampled potential
    std::vector<double> dv;   // dV/dx0, for continuation
    std::vector<double> off;  // H0 off-diagonal
    double h;

    GpeSystem(const PotentialParams& p, const Grid& g, double ng0) : params(p), grid(g), Ng0(ng0) {
        validate(g);
        h = g.spacing();
        const int n = g.n_points;
        v.resize(n);
        dv.resize(n);
        off.assign(n - 1, -0.5 / (h * h));
        set_x0(p.x0);
    }

    void set_x0(double x0) {
        params.x0 = x0;
        for (int i = 0; i < grid.n_points; ++i) {
            v[i] = eval_potential(params, grid.point(i));
            dv[i] = eval_potential_dx0(params, grid.point(i));
        }
    }

    // F_i = (H0 phi)_i + Ng0 phi_i^3 - mu phi_i
    void residual(const std::vector<double>& phi, double mu, std::vector<double>& F) const {
        const int n = grid.n_points;
        const double kd = 1.0 / (h * h);
        F.resize(n);
        for (int i = 0; i < n; ++i)
            F[i] = (kd + v[i]) * phi[i] + Ng0 * phi[i] * phi[i] * phi[i] - mu * phi[i];
        for (int i = 0; i + 1 < n; ++i) {
            F[i] += off[i] * phi[i + 1];
            F[i + 1] += off[i] * phi[i];
        }
    }

    double residual_norm(const std::vector<double>& phi, double mu) const {
        std::vector<double> F;
        residual(phi, mu, F);
        double s = 0.0;
        for (double f : F) s += f * f;
        return std::sqrt(h * s);
    }

    double constraint(const std::vector<double>& phi) const {
        double s = 0.0;
        for (double x : phi) s += x * x;
        return h * s - 1.0;
    }

    // diag of A = H0 + 3 Ng0 diag(phi^2) - mu
    void jac_diag(const std::vector<double>& phi, double mu, std::vector<double>& d) const {
        const int n = grid.n_points;
        const double kd = 1.0 / (h * h);
        d.resize(n);
        for (int i = 0; i < n; ++i) d[i] = kd + v[i] + 3.0 * Ng0 * phi[i] * phi[i] - mu;
    }

    double quartic_sum(const std::vector<double>& phi) const {
        double s = 0.0;
        for (double x : phi) s += x * x * x * x;
        return h * s;
    }

    double dot_h(const std::vector<double>& a, const std::vector<double>& b) const {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return h * s;
    }
};

double rayleigh_mu(const GpeSystem& sys, const std::vector<double>& phi) {
    // mu = <phi|H0 phi> + Ng0 int phi^4 for a normalized phi
    std::vector<double> F;
    sys.residual(phi, 0.0, F);  // F = H0 phi + Ng0 phi^3
    double s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * F[i];
    return sys.h * s;
}

// Newton with the normalization row bordered in; mu is the conjugate unknown.
// Returns false on non-convergence (caller decides whether that is an error).
bool newton_fixed_x0(const GpeSystem& sys, std::vector<double>& phi, double& mu) {
    const int n = sys.grid.n_points;
    std::vector<double> F, d, rhs, dphi(n);

    for (int iter = 0; iter < kMaxNewtonIters; ++iter) {
        sys.residual(phi, mu, F);
        const double c = sys.constraint(phi);
        double fn = 0.0;
        for (double f : F) fn += f * f;
        fn = std::sqrt(sys.h * fn);
        if (fn <= kResidualTol && std::abs(c) <= kConstraintTol) return true;

        sys.jac_diag(phi, mu, d);
        // One factorization, two right-hand sides: A a = F, A b = phi.
        rhs.resize(2 * n);
        std::copy(F.begin(), F.end(), rhs.begin());
        std::copy(phi.begin(), phi.end(), rhs.begin() + n);
        if (!lapack::tridiag_solve(sys.off, d, sys.off, rhs, 2))
            throw SingularJacobian("solve_gpe: singular tridiagonal core");

        const double* a = rhs.data();
        const double* b = rhs.data() + n;
        double pa = 0.0, pb = 0.0;
        for (int i = 0; i < n; ++i) {
            pa += phi[i] * a[i];
            pb += phi[i] * b[i];
        }
        pa *= 2.0 * sys.h;
        pb *= 2.0 * sys.h;
        if (pb == 0.0)
            throw SingularJacobian("solve_gpe: bordered system rank-deficient");
        const double dmu = (pa - c) / pb;
        for (int i = 0; i < n; ++i) dphi[i] = -a[i] + dmu * b[i];

        // Backtracking on the merit ||(F, c)||.
        const double base = std::hypot(fn, c);
        double t = 1.0;
        std::vector<double> trial(n);
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (int i = 0; i < n; ++i) trial[i] = phi[i] + t * dphi[i];
            const double mu_t = mu + t * dmu;
            const double fn_t = sys.residual_norm(trial, mu_t);
            const double c_t = sys.constraint(trial);
            if (std::hypot(fn_t, c_t) <= (1.0 - 1e-4 * t) * base) {
                phi.swap(trial);
                mu = mu_t;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) return false;  // line search stalled
    }
    return false;
}

GpeSolution package(const GpeSystem& sys, std::vector<double> phi, double mu) {
    GpeSolution s;
    s.phi.grid = sys.grid;
    s.phi.values = std::move(phi);
    s.mu = mu;
    s.Ng0 = sys.Ng0;
    s.params = sys.params;
    s.residual_norm = sys.residual_norm(s.phi.values, mu);
    s.energy_per_particle = mu - 0.5 * sys.Ng0 * sys.quartic_sum(s.phi.values);
    return s;
}

// Portable uniform in [0,1), independent of libstdc++ distribution details.
double uniform01(std::mt19937_64& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

} // namespace

GpeSolution solve_gpe(const PotentialParams& p, const Grid& g, double Ng0,
                      const SampledFunction& guess) {
    if (guess.grid != g)
        throw GridMismatch("solve_gpe: guess grid differs from requested grid");

    GpeSystem sys(p, g, Ng0);
    SampledFunction start = guess;
    normalize(start);
    std::vector<double> phi = start.values;
    double mu = rayleigh_mu(sys, phi);
    if (!newton_fixed_x0(sys, phi, mu))
        throw NoConvergence("solve_gpe: Newton did not converge");
    return package(sys, std::move(phi), mu);
}

GpeSolution solve_from_linear_level(const PotentialParams& p, const Grid& g,
                                    double Ng0, int level) {
    const SampledFunction v = sample_potential(p, g);
    auto pairs = eigensolve(build_h0(v), level + 1);
    SampledFunction phi = pairs[level].state;

    if (Ng0 == 0.0) return solve_gpe(p, g, 0.0, phi);

    GpeSolution cur = solve_gpe(p, g, 0.0, phi);
    double f = 0.0;
    double step = 0.25;
    while (f < 1.0) {
        const double f_next = std::min(1.0, f + step);
        GpeSystem sys(p, g, f_next * Ng0);
        std::vector<double> trial = cur.phi.values;
        double mu = rayleigh_mu(sys, trial);
        bool ok = newton_fixed_x0(sys, trial, mu);
        if (ok) {
            double ov = 0.0;
            for (std::size_t i = 0; i < trial.size(); ++i) ov += trial[i] * cur.phi.values[i];
            ov = std::abs(ov * g.spacing());
            if (ov < 0.9) ok = false;  // hopped branches, retry smaller
        }
        if (!ok) {
            step *= 0.5;
            if (step < 1.0 / 1024.0)
                throw NoConvergence("solve_from_linear_level: ramp stalled");
            continue;
        }
        cur = package(sys, std::move(trial), mu);
        f = f_next;
        step = std::min(0.25, step * 2.0);
    }
    return cur;
}

namespace {

// Extended continuation state: z = (phi, mu, x0) with weights (h, 1, 1).
struct ContinuationOps {
    GpeSystem& sys;

    double weighted_dot(const std::vector<double>& a_phi, double a_mu, double a_x0,
                        const std::vector<double>& b_phi, double b_mu, double b_x0) const {
        return sys.dot_h(a_phi, b_phi) + a_mu * b_mu + a_x0 * b_x0;
    }

    // Solves the bordered system
    //   [ A      -phi    dv*phi ] [dphi]   [r_phi]
    //   [ 2h phi   0       0    ] [dmu ] = [r_nrm]
    //   [ h tphi  tmu     tx0   ] [dx0 ]   [r_arc]
    // by a 2x2 Schur complement over the two border columns (three
    // right-hand sides share one factorization). Returns false when the
    // Schur system is singular.
    bool bordered_solve(const std::vector<double>& phi, double mu,
                        const std::vector<double>& tphi, double tmu, double tx0,
                        const std::vector<double>& r_phi, double r_nrm, double r_arc,
                        std::vector<double>& dphi, double& dmu, double& dx0) const {
        const int n = sys.grid.n_points;
        std::vector<double> d;
        sys.jac_diag(phi, mu, d);

        std::vector<double> rhs(3 * n);
        for (int i = 0; i < n; ++i) {
            rhs[i] = r_phi[i];
            rhs[n + i] = phi[i];
            rhs[2 * n + i] = sys.dv[i] * phi[i];
        }
        if (!lapack::tridiag_solve(sys.off, d, sys.off, rhs, 3)) return false;
        const double* a = rhs.data();
        const double* b1 = rhs.data() + n;
        const double* b2 = rhs.data() + 2 * n;

        auto dot_phi = [&](const double* w) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += phi[i] * w[i];
            return 2.0 * sys.h * s;
        };
        auto dot_t = [&](const double* w) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += tphi[i] * w[i];
            return sys.h * s;
        };

        // dphi = -a + dmu b1 - dx0 b2 substituted into the two border rows.
        const double m11 = dot_phi(b1), m12 = -dot_phi(b2);
        const double m21 = dot_t(b1) + tmu, m22 = -dot_t(b2) + tx0;
        const double q1 = dot_phi(a) - r_nrm;
        const double q2 = dot_t(a) - r_arc;
        const double det = m11 * m22 - m12 * m21;
        if (det == 0.0 || !std::isfinite(det)) return false;
        dmu = (q1 * m22 - m12 * q2) / det;
        dx0 = (m11 * q2 - q1 * m21) / det;

        dphi.resize(n);
        for (int i = 0; i < n; ++i) dphi[i] = -a[i] + dmu * b1[i] - dx0 * b2[i];
        return true;
    }

    // Unit tangent of the solution curve, oriented along the previous one.
    bool tangent(const std::vector<double>& phi, double mu,
                 std::vector<double>& tphi, double& tmu, double& tx0) const {
        const int n = sys.grid.n_points;
        std::vector<double> zero(n, 0.0), dphi;
        double dmu = 0.0, dx0 = 0.0;
        // Solve J t = e_last with the previous tangent as the closing row.
        if (!bordered_solve(phi, mu, tphi, tmu, tx0, zero, 0.0, -1.0, dphi, dmu, dx0))
            return false;
        // bordered_solve returns the Newton direction for residual r_arc = -1,
        // i.e. J dz = -r => J dz = e_last.
        double nrm = std::sqrt(weighted_dot(dphi, dmu, dx0, dphi, dmu, dx0));
        if (!(nrm > 0.0) || !std::isfinite(nrm)) return false;
        for (double& x : dphi) x /= nrm;
        dmu /= nrm;
        dx0 /= nrm;
        if (weighted_dot(dphi, dmu, dx0, tphi, tmu, tx0) < 0.0) {
            for (double& x : dphi) x = -x;
            dmu = -dmu;
            dx0 = -dx0;
        }
        tphi = std::move(dphi);
        tmu = dmu;
        tx0 = dx0;
        return true;
    }

    // Keller corrector at fixed arclength constraint. Returns iterations
    // used, or -1 on failure.
    int corrector(std::vector<double>& phi, double& mu, double& x0,
                  const std::vector<double>& tphi, double tmu, double tx0,
                  const std::vector<double>& zphi, double zmu, double zx0,
                  double ds) const {
        const int n = sys.grid.n_points;
        std::vector<double> F, dphi, diff(n);
        for (int iter = 0; iter < 12; ++iter) {
            sys.set_x0(x0);
            sys.residual(phi, mu, F);
            const double c = sys.constraint(phi);
            for (int i = 0; i < n; ++i) diff[i] = phi[i] - zphi[i];
            const double s = weighted_dot(diff, mu - zmu, x0 - zx0, tphi, tmu, tx0) - ds;
            double fn = 0.0;
            for (double f : F) fn += f * f;
            fn = std::sqrt(sys.h * fn);
            if (fn <= kResidualTol && std::abs(c) <= kConstraintTol && std::abs(s) <= 1e-11)
                return iter;

            double dmu = 0.0, dx0 = 0.0;
            if (!bordered_solve(phi, mu, tphi, tmu, tx0, F, c, s, dphi, dmu, dx0))
                return -1;
            if (!std::isfinite(dmu) || !std::isfinite(dx0)) return -1;
            for (int i = 0; i < n; ++i) phi[i] += dphi[i];
            mu += dmu;
            x0 += dx0;
        }
        return -1;
    }
};

} // namespace

Branch continue_branch(const GpeSolution& seed, double x0_lo, double x0_hi,
                       const ArclengthSettings& settings) {
    if (!(x0_lo < x0_hi))
        throw std::invalid_argument("continue_branch: empty x0 range");

    GpeSystem sys(seed.params, seed.phi.grid, seed.Ng0);
    ContinuationOps ops{sys};
    const int n = sys.grid.n_points;

    std::vector<double> phi = seed.phi.values;
    double mu = seed.mu;
    double x0 = seed.params.x0;
    sys.set_x0(x0);

    // Initial orientation: into the interior of the range.
    std::vector<double> tphi(n, 0.0);
    double tmu = 0.0;
    double tx0 = (std::abs(x0 - x0_lo) <= std::abs(x0 - x0_hi)) ? 1.0 : -1.0;
    if (!ops.tangent(phi, mu, tphi, tmu, tx0))
        throw SingularJacobian("continue_branch: tangent at the seed failed");

    Branch branch;
    branch.points.push_back({x0, seed, false});
    const std::vector<double> start_phi = phi;
    const double start_mu = mu, start_x0 = x0;

    double ds = settings.initial_step;
    double prev_tx0 = tx0;
    double prev_x0 = x0;

    while (static_cast<int>(branch.points.size()) < settings.max_points) {
        const std::vector<double> zphi = phi;
        const double zmu = mu, zx0 = x0;

        std::vector<double> cphi;
        double cmu = 0.0, cx0 = 0.0;
        int its = -1;
        while (true) {
            cphi = zphi;
            cmu = zmu;
            cx0 = zx0;
            for (int i = 0; i < n; ++i) cphi[i] += ds * tphi[i];
            cmu += ds * tmu;
            cx0 += ds * tx0;
            its = ops.corrector(cphi, cmu, cx0, tphi, tmu, tx0, zphi, zmu, zx0, ds);
            if (its >= 0) break;
            ds *= 0.5;
            if (ds < settings.collapse_step) {
                std::ostringstream os;
                os << "continue_branch: step collapsed near x0=" << zx0 << ", mu=" << zmu;
                throw StepCollapse(os.str());
            }
        }
        phi = std::move(cphi);
        mu = cmu;
        x0 = cx0;
        sys.set_x0(x0);

        if (!ops.tangent(phi, mu, tphi, tmu, tx0))
            throw SingularJacobian("continue_branch: tangent update failed");

        bool turning = false;
        if (std::signbit(prev_tx0) != std::signbit(tx0)) {
            turning = true;
            // Interpolated fold location between the two points.
            const double denom = prev_tx0 - tx0;
            const double frac = denom != 0.0 ? prev_tx0 / denom : 0.5;
            branch.turning_points.push_back(prev_x0 + frac * (x0 - prev_x0));
        }
        prev_tx0 = tx0;
        prev_x0 = x0;

        branch.points.push_back({x0, package(sys, phi, mu), turning});

        // Loop closure: back to the start in (x0, mu) and in state.
        if (branch.points.size() > 10 && std::abs(x0 - start_x0) < settings.closure_tol &&
            std::abs(mu - start_mu) < settings.closure_tol) {
            double ov = 0.0;
            for (int i = 0; i < n; ++i) ov += phi[i] * start_phi[i];
            if (std::abs(ov * sys.h) > settings.closure_overlap) {
                branch.closed = true;
                break;
            }
        }
        if (x0 < x0_lo || x0 > x0_hi) break;

        if (its <= 3) ds = std::min(ds * 1.4, settings.max_step);
        else if (its >= 8) ds = std::max(ds * 0.6, settings.min_step);
    }
    return branch;
}

std::vector<GpeSolution> count_solutions(const PotentialParams& p, const Grid& g,
                                         double Ng0, double mu_lo, double mu_hi,
                                         int n_starts, std::uint64_t seed) {
    if (n_starts < 16)
        throw std::invalid_argument("count_solutions: need at least 16 starts");

    const SampledFunction v = sample_potential(p, g);
    auto pairs = eigensolve(build_h0(v), 2);
    const auto& psi0 = pairs[0].state.values;
    const auto& psi1 = pairs[1].state.values;
    const int n = g.n_points;
    const double pi = std::numbers::pi;

    GpeSystem sys(p, g, Ng0);
    std::mt19937_64 rng(seed);
    std::vector<GpeSolution> found;

    for (int k = 0; k < n_starts; ++k) {
        // 16-point angle lattice plus a random wobble and nodewise noise.
        const double angle = -0.5 * pi + pi * (k % 16) / 16.0 +
                             0.05 * (2.0 * uniform01(rng) - 1.0);
        std::vector<double> phi(n);
        const double ca = std::cos(angle), sa = std::sin(angle);
        for (int i = 0; i < n; ++i)
            phi[i] = ca * psi0[i] + sa * psi1[i] + 0.01 * (2.0 * uniform01(rng) - 1.0);

        double s = 0.0;
        for (double x : phi) s += x * x;
        s = std::sqrt(sys.h * s);
        for (double& x : phi) x /= s;

        double mu = rayleigh_mu(sys, phi);
        bool ok;
        try {
            ok = newton_fixed_x0(sys, phi, mu);
        } catch (const SingularJacobian&) {
            ok = false;
        }
        if (!ok) continue;
        if (mu < mu_lo || mu > mu_hi) continue;

        bool duplicate = false;
        for (const auto& f : found) {
            double ov = 0.0;
            for (int i = 0; i < n; ++i) ov += phi[i] * f.phi.values[i];
            if (std::abs(ov * sys.h) > 0.999) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) found.push_back(package(sys, phi, mu));
    }

    std::sort(found.begin(), found.end(),
              [](const GpeSolution& a, const GpeSolution& b) { return a.mu < b.mu; });
    return found;
}

} // namespace dwell
