#include "dwell/operator1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dwell/errors.hpp"
#include "lapack_util.hpp"

namespace dwell {

TridiagonalOperator build_h0(const SampledFunction& v) {
    validate(v.grid);
    const int n = v.grid.n_points;
    const double h = v.grid.spacing();
    TridiagonalOperator op;
    op.grid = v.grid;
    op.diagonal.resize(n);
    op.off_diagonal.assign(n - 1, -0.5 / (h * h));
    for (int i = 0; i < n; ++i) op.diagonal[i] = 1.0 / (h * h) + v.values[i];
    return op;
}

std::vector<double> apply(const TridiagonalOperator& op, const std::vector<double>& u) {
    const std::size_t n = op.diagonal.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = op.diagonal[i] * u[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        r[i] += op.off_diagonal[i] * u[i + 1];
        r[i + 1] += op.off_diagonal[i] * u[i];
    }
    return r;
}

std::vector<Eigenpair> eigensolve(const TridiagonalOperator& op, int k) {
    const int n = static_cast<int>(op.diagonal.size());
    if (k < 1 || k > n)
        throw std::invalid_argument("eigensolve: k out of range");

    std::vector<double> values, vectors;
    if (!lapack::tridiag_eig_lowest(op.diagonal, op.off_diagonal, k, values, vectors))
        throw ConvergenceFailure("eigensolve: tridiagonal eigensolver failed");

    const double h = op.grid.spacing();
    const double scale = 1.0 / std::sqrt(h);  // unit 2-norm -> sum|u|^2 h = 1

    std::vector<Eigenpair> out(k);
    for (int j = 0; j < k; ++j) {
        Eigenpair& ep = out[j];
        ep.energy = values[j];
        ep.state.grid = op.grid;
        ep.state.values.resize(n);
        const double* col = vectors.data() + static_cast<std::size_t>(j) * n;
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(col[i]) > std::abs(col[imax])) imax = i;
        const double sign = col[imax] < 0 ? -scale : scale;
        for (int i = 0; i < n; ++i) ep.state.values[i] = sign * col[i];

        auto r = apply(op, ep.state.values);
        double rn = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = r[i] - ep.energy * ep.state.values[i];
            rn += d * d;
        }
        rn = std::sqrt(h * rn);
        if (rn > 1e-9 * std::max(1.0, std::abs(ep.energy))) {
            std::ostringstream os;
            os << "eigensolve: residual " << rn << " for eigenvalue " << ep.energy;
            throw ConvergenceFailure(os.str());
        }
    }
    return out;
}

double matrix_element(const SampledFunction& u, const TridiagonalOperator& op,
                      const SampledFunction& w) {
    if (u.grid != op.grid || w.grid != op.grid)
        throw GridMismatch("matrix_element: operands on different grids");
    const auto hw = apply(op, w.values);
    double s = 0.0;
    for (std::size_t i = 0; i < hw.size(); ++i) s += u.values[i] * hw[i];
    return op.grid.spacing() * s;
}

} // namespace dwell
