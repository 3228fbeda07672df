#include "lapack_util.hpp"

#include <lapacke.h>

namespace dwell::lapack {

bool tridiag_eig_lowest(const std::vector<double>& diag, const std::vector<double>& off,
                        int k, std::vector<double>& values, std::vector<double>& vectors) {
    const lapack_int n = static_cast<lapack_int>(diag.size());
    if (k < 1 || k > n) return false;

    // dstevr destroys its inputs.
    std::vector<double> d = diag;
    std::vector<double> e = off;
    e.resize(n, 0.0);  // needs length n workspace per LAPACK docs

    values.assign(n, 0.0);
    vectors.assign(static_cast<std::size_t>(n) * k, 0.0);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(k > 0 ? k : 1));

    lapack_int m = 0;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(),
                                     0.0, 0.0, 1, k, 0.0, &m, values.data(),
                                     vectors.data(), n, isuppz.data());
    if (info != 0 || m != k) return false;
    values.resize(k);
    return true;
}

bool tridiag_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                   const std::vector<double>& sup, std::vector<double>& rhs, int nrhs) {
    const lapack_int n = static_cast<lapack_int>(diag.size());
    std::vector<double> dl = sub;
    std::vector<double> d = diag;
    std::vector<double> du = sup;
    lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, nrhs, dl.data(), d.data(),
                                    du.data(), rhs.data(), n);
    return info == 0;
}

} // namespace dwell::lapack
