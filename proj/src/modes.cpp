#include "dwell/modes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

int snap_to_node(const Grid& g, double x) {
    int i = static_cast<int>(std::lround((x - g.x_min) / g.spacing()));
    return std::clamp(i, 1, g.n_points - 2);
}

int argmin(const std::vector<double>& v) {
    return static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
}

} // namespace

std::pair<SampledFunction, SampledFunction>
split_potential(const SampledFunction& v, const WellGeometry& w) {
    const int ib = snap_to_node(v.grid, w.barrier_top);
    const double plateau = v.values[ib];

    SampledFunction left = v, right = v;
    for (int i = ib + 1; i < v.grid.n_points; ++i) left.values[i] = plateau;
    for (int i = 0; i < ib; ++i) right.values[i] = plateau;
    return {std::move(left), std::move(right)};
}

std::pair<SampledFunction, SampledFunction>
split_potential(const PotentialParams& p, const Grid& g, const WellGeometry& w) {
    return split_potential(sample_potential(p, g), w);
}

std::pair<SampledFunction, SampledFunction>
build_modes(const SampledFunction& left_v, const SampledFunction& right_v) {
    if (left_v.grid != right_v.grid)
        throw GridMismatch("build_modes: split potentials on different grids");

    auto solve_well = [](const SampledFunction& v, double plateau, const char* side) {
        auto pairs = eigensolve(build_h0(v), 1);
        if (pairs[0].energy >= plateau) {
            std::ostringstream os;
            os << "build_modes: " << side << " ground energy " << pairs[0].energy
               << " not below plateau " << plateau;
            throw NoBoundMode(os.str());
        }
        SampledFunction u = std::move(pairs[0].state);
        // Sign convention: positive at the well minimum.
        if (u.values[argmin(v.values)] < 0.0)
            for (double& x : u.values) x = -x;
        return u;
    };

    // The flattened side carries the plateau value at the grid edge.
    SampledFunction u1 = solve_well(left_v, left_v.values.back(), "left");
    SampledFunction u2 = solve_well(right_v, right_v.values.front(), "right");
    return {std::move(u1), std::move(u2)};
}

TwoModeParams two_mode_params(const SampledFunction& u1, const SampledFunction& u2,
                              const TridiagonalOperator& full_h0, double g0, int N,
                              double overlap_threshold) {
    if (u1.grid != full_h0.grid || u2.grid != full_h0.grid)
        throw GridMismatch("two_mode_params: modes and operator on different grids");

    const double h = full_h0.grid.spacing();
    TwoModeParams p;
    p.E1 = matrix_element(u1, full_h0, u1);
    p.E2 = matrix_element(u2, full_h0, u2);
    p.Omega = 2.0 * matrix_element(u1, full_h0, u2);

    double q1 = 0.0, q2 = 0.0;
    for (std::size_t i = 0; i < u1.values.size(); ++i) {
        q1 += u1.values[i] * u1.values[i] * u1.values[i] * u1.values[i];
        q2 += u2.values[i] * u2.values[i] * u2.values[i] * u2.values[i];
    }
    p.V1 = 1.0 / (h * q1);
    p.V2 = 1.0 / (h * q2);
    p.g0 = g0;
    p.N = N;
    p.overlap = inner(u1, u2);
    p.overlap_warning = std::abs(p.overlap) > overlap_threshold;
    return p;
}

SampledFunction load_tabulated_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_tabulated_potential: cannot open " + path);

    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        double x, v;
        if (ls >> x >> v) {
            xs.push_back(x);
            vs.push_back(v);
        }
    }
    if (xs.size() < 3)
        throw std::runtime_error("load_tabulated_potential: need at least 3 rows");

    const double h = (xs.back() - xs.front()) / (xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (xs.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::runtime_error("load_tabulated_potential: grid not uniform");

    SampledFunction f;
    f.grid = Grid{xs.front(), xs.back(), static_cast<int>(xs.size())};
    validate(f.grid);
    f.values = std::move(vs);
    return f;
}

ModePoint mode_point(const PotentialParams& p, const Grid& g) {
    const SampledFunction v = sample_potential(p, g);
    const WellGeometry w = locate_wells(v);
    auto [left_v, right_v] = split_potential(v, w);
    auto [u1, u2] = build_modes(left_v, right_v);
    const TridiagonalOperator h0 = build_h0(v);

    TwoModeParams tp = two_mode_params(u1, u2, h0, 0.0, 1);
    return ModePoint{p.x0, tp.E1,      tp.E2,      tp.Omega,
                     1.0 / tp.V1,      1.0 / tp.V2, tp.overlap};
}

TwoModeParams attach_interaction(const ModePoint& mp, double g0, int N,
                                 double overlap_threshold) {
    TwoModeParams p;
    p.E1 = mp.E1;
    p.E2 = mp.E2;
    p.Omega = mp.Omega;
    p.V1 = 1.0 / mp.inv_V1;
    p.V2 = 1.0 / mp.inv_V2;
    p.g0 = g0;
    p.N = N;
    p.overlap = mp.overlap;
    p.overlap_warning = std::abs(mp.overlap) > overlap_threshold;
    return p;
}

} // namespace dwell
