#pragma once

#include <vector>

namespace dwell {

// Uniform 1D grid in oscillator units, nodes x_i = x_min + i*h.
struct Grid {
    double x_min = -12.0;
    double x_max = 12.0;
    int n_points = 4801;

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double point(int i) const { return x_min + i * spacing(); }

    bool operator==(const Grid&) const = default;
};

// Throws std::invalid_argument if x_min >= x_max or n_points < 3.
void validate(const Grid& g);

// Default discretization: h = 0.005 resolves sigma = 0.5 features with
// ~100 nodes per Gaussian width; the domain edges sit at V ~ 72.
inline Grid default_grid() { return Grid{-12.0, 12.0, 4801}; }

// Real-valued function sampled on grid nodes.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;
};

// Discrete inner product h * sum(u_i w_i). Throws GridMismatch on
// different grids.
double inner(const SampledFunction& u, const SampledFunction& w);

double norm(const SampledFunction& u);

// Scales so that sum |u|^2 h = 1.
void normalize(SampledFunction& u);

} // namespace dwell
