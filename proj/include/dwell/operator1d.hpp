#pragma once

#include "dwell/grid.hpp"

namespace dwell {

// H0 = -1/2 d^2/dx^2 + V(x) with the 3-point stencil and Dirichlet
// boundaries (wavefunction implicitly zero outside the grid).
// Symmetric by construction: one off-diagonal array.
struct TridiagonalOperator {
    Grid grid;
    std::vector<double> diagonal;      // 1/h^2 + V_i
    std::vector<double> off_diagonal;  // -1/(2 h^2), length n-1
};

TridiagonalOperator build_h0(const SampledFunction& v);

std::vector<double> apply(const TridiagonalOperator& op, const std::vector<double>& u);

struct Eigenpair {
    double energy;
    SampledFunction state;  // sum |u|^2 h = 1, largest-magnitude entry positive
};

// k lowest eigenpairs in increasing order. Residual contract:
// ||H u - E u||_h <= 1e-9 * max(1, |E|) per pair, else ConvergenceFailure.
std::vector<Eigenpair> eigensolve(const TridiagonalOperator& op, int k);

// h * u^T (op w). Throws GridMismatch if u, w, op live on different grids.
double matrix_element(const SampledFunction& u, const TridiagonalOperator& op,
                      const SampledFunction& w);

} // namespace dwell
