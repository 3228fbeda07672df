#pragma once

#include <vector>

// Thin wrappers over LAPACKE for the two kernels everything else reduces to:
// symmetric-tridiagonal eigenpairs and pivoted tridiagonal solves.

namespace dwell::lapack {

// Lowest k eigenpairs of the symmetric tridiagonal matrix (diag, off).
// values: k ascending eigenvalues; vectors: column-major, unit 2-norm,
// vectors[j*n + i] is component i of eigenvector j. Returns false on
// LAPACK failure.
bool tridiag_eig_lowest(const std::vector<double>& diag, const std::vector<double>& off,
                        int k, std::vector<double>& values, std::vector<double>& vectors);

// Solves T X = B with partial pivoting (dgtsv); B is column-major n x nrhs
// and is overwritten with the solution. Returns false on an exactly zero
// pivot.
bool tridiag_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                   const std::vector<double>& sup, std::vector<double>& rhs, int nrhs);

} // namespace dwell::lapack
