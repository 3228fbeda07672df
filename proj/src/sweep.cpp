#include "dwell/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "dwell/errors.hpp"

namespace dwell {

namespace {
using cplx = std::complex<double>;
} // namespace

ModeTable::ModeTable(std::vector<ModePoint> lattice_points) : points_(std::move(lattice_points)) {
    if (points_.size() < 4)
        throw std::invalid_argument("ModeTable: need at least 4 lattice points");
    x0_.reserve(points_.size());
    for (const auto& p : points_) x0_.push_back(p.x0);
    step_ = (x0_.back() - x0_.front()) / (x0_.size() - 1);
    if (!(step_ > 0.0))
        throw std::invalid_argument("ModeTable: lattice not ascending");

    auto channel = [&](auto member) {
        std::vector<double> y(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) y[i] = points_[i].*member;
        return make_spline(std::move(y));
    };
    e1_ = channel(&ModePoint::E1);
    e2_ = channel(&ModePoint::E2);
    omega_ = channel(&ModePoint::Omega);
    inv_v1_ = channel(&ModePoint::inv_V1);
    inv_v2_ = channel(&ModePoint::inv_V2);
    overlap_ = channel(&ModePoint::overlap);
}

// Natural cubic spline on the uniform lattice: second derivatives from the
// standard tridiagonal system (strictly diagonally dominant, plain Thomas).
ModeTable::Spline ModeTable::make_spline(std::vector<double> y) const {
    const std::size_t m = y.size();
    std::vector<double> y2(m, 0.0), c(m, 0.0), r(m, 0.0);
    const double h2 = step_ * step_;
    for (std::size_t i = 1; i + 1 < m; ++i)
        r[i] = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h2;
    // rows: y2[i-1] + 4 y2[i] + y2[i+1] = r[i], natural ends y2 = 0
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double prev = (i == 1) ? 0.0 : c[i - 1];
        const double denom = 4.0 - prev;
        c[i] = 1.0 / denom;
        r[i] = (r[i] - ((i == 1) ? 0.0 : r[i - 1])) / denom;
    }
    for (std::size_t i = m - 2; i >= 1; --i) {
        y2[i] = r[i] - c[i] * y2[i + 1];
        if (i == 1) break;
    }
    return Spline{std::move(y), std::move(y2)};
}

double ModeTable::eval(const Spline& s, double x0) const {
    const double xc = std::clamp(x0, x0_.front(), x0_.back());
    std::size_t i = static_cast<std::size_t>((xc - x0_.front()) / step_);
    if (i >= x0_.size() - 1) i = x0_.size() - 2;
    const double a = (x0_[i + 1] - xc) / step_;
    const double b = 1.0 - a;
    return a * s.y[i] + b * s.y[i + 1] +
           ((a * a * a - a) * s.y2[i] + (b * b * b - b) * s.y2[i + 1]) * step_ * step_ / 6.0;
}

ModePoint ModeTable::at(double x0) const {
    ModePoint p;
    p.x0 = std::clamp(x0, x0_.front(), x0_.back());
    p.E1 = eval(e1_, x0);
    p.E2 = eval(e2_, x0);
    p.Omega = eval(omega_, x0);
    p.inv_V1 = eval(inv_v1_, x0);
    p.inv_V2 = eval(inv_v2_, x0);
    p.overlap = eval(overlap_, x0);
    return p;
}

ModeTable build_mode_table(const PotentialParams& trap, const Grid& g,
                           double x0_from, double x0_to,
                           double lattice_step, double overlap_max) {
    if (!(lattice_step > 0.0))
        throw std::invalid_argument("build_mode_table: lattice_step must be positive");

    // Always cover at least 4 nodes so the spline is defined (a rate-0
    // protocol needs the table only at x0_from).
    const double x0_stop = std::max(x0_to, x0_from + 3.0 * lattice_step);

    std::vector<ModePoint> pts;
    for (int i = 0;; ++i) {
        const double x0 = x0_from + i * lattice_step;
        if (x0 > x0_stop + 1e-12) break;
        PotentialParams p = trap;
        p.x0 = x0;
        ModePoint mp;
        try {
            mp = mode_point(p, g);
        } catch (const NoDoubleWell& e) {
            if (pts.size() < 4) {
                std::ostringstream os;
                os << e.what() << " (x0=" << x0 << ", start of sweep window)";
                throw NoDoubleWell(os.str());
            }
            break;
        } catch (const NoBoundMode& e) {
            if (pts.size() < 4) {
                std::ostringstream os;
                os << e.what() << " (x0=" << x0 << ", start of sweep window)";
                throw NoBoundMode(os.str());
            }
            break;
        }
        if (std::abs(mp.overlap) > overlap_max) {
            if (pts.size() < 4)
                throw NoBoundMode("build_mode_table: overlap above cutoff at the window start");
            break;
        }
        pts.push_back(mp);
    }
    return ModeTable(std::move(pts));
}

namespace {

struct FockHBuffers {
    std::vector<double> diag;
    std::vector<double> off;
};

void fill_hamiltonian(const ModeTable& table, double x0, double g0, int N,
                      FockHBuffers& hb) {
    const ModePoint mp = table.at(x0);
    hb.diag.resize(N + 1);
    hb.off.resize(N);
    double mean = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double n1 = n, n2 = N - n;
        hb.diag[n] = mp.E1 * n1 + mp.E2 * n2 +
                     0.5 * g0 * mp.inv_V1 * n1 * (n1 - 1.0) +
                     0.5 * g0 * mp.inv_V2 * n2 * (n2 - 1.0);
        mean += hb.diag[n];
    }
    // Subtracting the diagonal mean is a pure global phase: it keeps the
    // RK4 phase error tied to the spectral spread, not the absolute scale.
    mean /= (N + 1);
    for (double& d : hb.diag) d -= mean;
    for (int n = 0; n < N; ++n)
        hb.off[n] = 0.5 * mp.Omega * std::sqrt((n + 1.0) * (N - n));
}

void deriv(const FockHBuffers& hb, const std::vector<cplx>& y, std::vector<cplx>& out) {
    const std::size_t dim = y.size();
    out.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = hb.diag[i] * y[i];
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        out[i] += hb.off[i] * y[i + 1];
        out[i + 1] += hb.off[i] * y[i];
    }
    const cplx mi(0.0, -1.0);
    for (auto& v : out) v *= mi;
}

// One classical RK4 step of the non-autonomous linear system; H sampled at
// t, t + dt/2 and t + dt.
struct Rk4Work {
    std::vector<cplx> k1, k2, k3, k4, tmp;
    FockHBuffers h_begin, h_mid, h_end;
};

template <typename FillH>
void rk4_step(std::vector<cplx>& y, double t, double dt, FillH&& fill, Rk4Work& w) {
    fill(t, w.h_begin);
    fill(t + 0.5 * dt, w.h_mid);
    fill(t + dt, w.h_end);
    const std::size_t dim = y.size();

    deriv(w.h_begin, y, w.k1);
    w.tmp.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) w.tmp[i] = y[i] + 0.5 * dt * w.k1[i];
    deriv(w.h_mid, w.tmp, w.k2);
    for (std::size_t i = 0; i < dim; ++i) w.tmp[i] = y[i] + 0.5 * dt * w.k2[i];
    deriv(w.h_mid, w.tmp, w.k3);
    for (std::size_t i = 0; i < dim; ++i) w.tmp[i] = y[i] + dt * w.k3[i];
    deriv(w.h_end, w.tmp, w.k4);
    for (std::size_t i = 0; i < dim; ++i)
        y[i] += dt / 6.0 * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

double norm_sq(const std::vector<cplx>& y) {
    double s = 0.0;
    for (const auto& v : y) s += std::norm(v);
    return s;
}

} // namespace

SweepResult propagate(const FockVector& initial, const SweepProtocol& protocol,
                      const ModeTable& table, double g0, int N,
                      double sample_interval) {
    if (initial.N != N || static_cast<int>(initial.amplitudes.size()) != N + 1)
        throw std::invalid_argument("propagate: initial state dimension mismatch");
    if (!(protocol.dt > 0.0))
        throw std::invalid_argument("propagate: dt must be positive");

    const double x0_target = protocol.x0_start + protocol.rate * protocol.t_end;
    double t_final = protocol.t_end;
    bool truncated = false;
    if (protocol.rate > 0.0 && x0_target > table.x0_back() + 1e-12) {
        t_final = (table.x0_back() - protocol.x0_start) / protocol.rate;
        truncated = true;
    } else if (protocol.rate < 0.0 && x0_target < table.x0_front() - 1e-12) {
        t_final = (table.x0_front() - protocol.x0_start) / protocol.rate;
        truncated = true;
    }
    if (t_final < 0.0) t_final = 0.0;

    auto x0_at = [&](double t) {
        return std::clamp(protocol.x0_start + protocol.rate * t,
                          table.x0_front(), table.x0_back());
    };
    auto fill = [&](double t, FockHBuffers& hb) { fill_hamiltonian(table, x0_at(t), g0, N, hb); };

    std::vector<cplx> y = initial.amplitudes;
    Rk4Work work;
    SweepResult res;

    const long n_steps = static_cast<long>(std::floor(t_final / protocol.dt + 1e-9));
    const long sample_every =
        std::max<long>(1, static_cast<long>(std::llround(sample_interval / protocol.dt)));

    auto record = [&](double t) {
        res.times.push_back(t);
        res.x0s.push_back(x0_at(t));
        std::vector<double> pops(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) pops[i] = std::norm(y[i]);
        res.populations.push_back(std::move(pops));
    };

    double t = 0.0;
    record(t);
    for (long s = 0; s < n_steps; ++s) {
        t = s * protocol.dt;
        rk4_step(y, t, protocol.dt, fill, work);
        if ((s + 1) % sample_every == 0) record((s + 1) * protocol.dt);
    }
    t = n_steps * protocol.dt;
    const double rem = t_final - t;
    if (rem > 1e-13 * std::max(1.0, t_final)) {
        rk4_step(y, t, rem, fill, work);
        t = t_final;
    }
    if (res.times.back() != t) record(t);

    res.final_state = FockVector{N, y};
    res.final_time = t;
    res.final_x0 = x0_at(t);
    res.truncated = truncated;
    res.norm_error = std::abs(std::sqrt(norm_sq(y)) - 1.0);
    return res;
}

OverlapDistribution final_overlaps(const FockVector& state, const TwoModeParams& projection,
                                   std::string basis_tag) {
    const FockSpectrum sp = spectrum(projection);
    if (sp.states.size() != state.amplitudes.size())
        throw std::invalid_argument("final_overlaps: state and projection dimensions differ");

    OverlapDistribution dist;
    dist.basis_tag = std::move(basis_tag);
    dist.probabilities.resize(sp.states.size());
    for (std::size_t k = 0; k < sp.states.size(); ++k) {
        cplx c(0.0, 0.0);
        for (std::size_t i = 0; i < sp.states[k].size(); ++i)
            c += sp.states[k][i] * state.amplitudes[i];
        dist.probabilities[k] = std::norm(c);
    }
    return dist;
}

FockVector fock_ground_state(const TwoModeParams& p) {
    const FockSpectrum sp = spectrum(p);
    FockVector v;
    v.N = p.N;
    v.amplitudes.assign(sp.states[0].begin(), sp.states[0].end());
    return v;
}

std::array<cplx, 2> propagate_two_level(const SweepProtocol& protocol,
                                        const ModeTable& table, double t_final) {
    auto x0_at = [&](double t) {
        return std::clamp(protocol.x0_start + protocol.rate * t,
                          table.x0_front(), table.x0_back());
    };
    // H is the single-particle 2x2 [[E1, Om/2], [Om/2, E2]], which is the
    // N = 1, g0 = 0 Fock Hamiltonian up to basis order; reuse that machinery
    // for the initial state so sign conventions match everywhere.
    const TwoModeParams p0 = attach_interaction(table.at(protocol.x0_start), 0.0, 1);
    const FockSpectrum sp0 = spectrum(p0);
    // Fock index n = particles in mode 1: amplitudes (b, a) with a = mode-1.
    std::vector<cplx> y = {cplx(sp0.states[0][0]), cplx(sp0.states[0][1])};

    auto fill = [&](double t, FockHBuffers& hb) {
        const ModePoint mp = table.at(x0_at(t));
        const double mean = 0.5 * (mp.E1 + mp.E2);
        hb.diag = {mp.E2 - mean, mp.E1 - mean};  // n = 0 -> mode 2, n = 1 -> mode 1
        hb.off = {0.5 * mp.Omega};
    };

    Rk4Work work;
    const long n_steps = static_cast<long>(std::floor(t_final / protocol.dt + 1e-9));
    for (long s = 0; s < n_steps; ++s)
        rk4_step(y, s * protocol.dt, protocol.dt, fill, work);
    const double t = n_steps * protocol.dt;
    const double rem = t_final - t;
    if (rem > 1e-13 * std::max(1.0, t_final)) rk4_step(y, t, rem, fill, work);

    // Return as (mode-1 amplitude, mode-2 amplitude).
    return {y[1], y[0]};
}

std::vector<double> binomial_populations(const std::array<cplx, 2>& ab, int N) {
    const double a2 = std::norm(ab[0]);
    const double b2 = std::norm(ab[1]);
    std::vector<double> p(N + 1, 0.0);
    for (int n = 0; n <= N; ++n) {
        if (a2 == 0.0 && n > 0) continue;
        if (b2 == 0.0 && n < N) continue;
        double lp = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
        if (n > 0) lp += n * std::log(a2);
        if (n < N) lp += (N - n) * std::log(b2);
        p[n] = std::exp(lp);
    }
    return p;
}

} // namespace dwell
