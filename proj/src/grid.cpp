#include "dwell/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "dwell/errors.hpp"

namespace dwell {

void validate(const Grid& g) {
    if (!(g.x_min < g.x_max))
        throw std::invalid_argument("grid: x_min must be < x_max");
    if (g.n_points < 3)
        throw std::invalid_argument("grid: n_points must be >= 3");
    if (!(g.spacing() > 0.0))
        throw std::invalid_argument("grid: spacing must be positive");
}

double inner(const SampledFunction& u, const SampledFunction& w) {
    if (u.grid != w.grid)
        throw GridMismatch("inner: functions on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) s += u.values[i] * w.values[i];
    return u.grid.spacing() * s;
}

double norm(const SampledFunction& u) {
    double s = 0.0;
    for (double v : u.values) s += v * v;
    return std::sqrt(u.grid.spacing() * s);
}

void normalize(SampledFunction& u) {
    const double n = norm(u);
    if (n == 0.0)
        throw std::invalid_argument("normalize: zero function");
    for (double& v : u.values) v /= n;
}

} // namespace dwell
