#include "dwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "dwell/errors.hpp"

namespace dwell {

double eval_potential(const PotentialParams& p, double x) {
    const double d = x - p.x0;
    return 0.5 * x * x +
           p.U0 * std::atan(p.x0) * std::exp(-d * d / (2.0 * p.sigma * p.sigma));
}

double eval_potential_dx0(const PotentialParams& p, double x) {
    const double d = x - p.x0;
    const double gauss = std::exp(-d * d / (2.0 * p.sigma * p.sigma));
    return p.U0 * gauss *
           (1.0 / (1.0 + p.x0 * p.x0) + std::atan(p.x0) * d / (p.sigma * p.sigma));
}

SampledFunction sample_potential(const PotentialParams& p, const Grid& g) {
    validate(g);
    SampledFunction f{g, std::vector<double>(g.n_points)};
    for (int i = 0; i < g.n_points; ++i) f.values[i] = eval_potential(p, g.point(i));
    return f;
}

namespace {

// Flat-noise guard: neighbors must differ by more than this to count.
constexpr double kExtremumTol = 1e-12;

// Vertex of the parabola through (x_{i-1},v_{i-1}), (x_i,v_i), (x_{i+1},v_{i+1}).
double refine_extremum(const SampledFunction& f, int i) {
    const double h = f.grid.spacing();
    const double vm = f.values[i - 1], v0 = f.values[i], vp = f.values[i + 1];
    const double curv = vm - 2.0 * v0 + vp;
    if (std::abs(curv) < 1e-300) return f.grid.point(i);
    return f.grid.point(i) + 0.5 * h * (vm - vp) / curv;
}

} // namespace

WellGeometry locate_wells(const SampledFunction& f) {
    const auto& v = f.values;
    const int n = static_cast<int>(v.size());
    std::vector<int> minima, maxima;
    for (int i = 1; i + 1 < n; ++i) {
        if (v[i] < v[i - 1] - kExtremumTol && v[i] < v[i + 1] - kExtremumTol)
            minima.push_back(i);
        else if (v[i] > v[i - 1] + kExtremumTol && v[i] > v[i + 1] + kExtremumTol)
            maxima.push_back(i);
    }
    if (minima.size() < 2) {
        std::ostringstream os;
        os << "locate_wells: found " << minima.size() << " local minima, need 2";
        throw NoDoubleWell(os.str());
    }
    // Two deepest minima, in spatial order.
    std::sort(minima.begin(), minima.end(), [&](int a, int b) { return v[a] < v[b]; });
    int il = minima[0], ir = minima[1];
    if (il > ir) std::swap(il, ir);

    int ib = -1;
    for (int i : maxima)
        if (i > il && i < ir && (ib < 0 || v[i] > v[ib])) ib = i;
    if (ib < 0)
        throw NoDoubleWell("locate_wells: no interior maximum between the minima");

    WellGeometry w{refine_extremum(f, il), refine_extremum(f, ib), refine_extremum(f, ir)};
    return w;
}

WellGeometry locate_wells(const PotentialParams& p, const Grid& g) {
    return locate_wells(sample_potential(p, g));
}

} // namespace dwell
