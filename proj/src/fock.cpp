#include "dwell/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dwell/errors.hpp"
#include "lapack_util.hpp"

namespace dwell {

FockHamiltonian build_fock_hamiltonian(const TwoModeParams& p) {
    const int N = p.N;
    FockHamiltonian H;
    H.N = N;
    H.diagonal.resize(N + 1);
    H.off_diagonal.resize(N);
    for (int n = 0; n <= N; ++n) {
        const double n1 = n, n2 = N - n;
        H.diagonal[n] = p.E1 * n1 + p.E2 * n2 +
                        0.5 * p.g0 / p.V1 * n1 * (n1 - 1.0) +
                        0.5 * p.g0 / p.V2 * n2 * (n2 - 1.0);
    }
    for (int n = 0; n < N; ++n)
        H.off_diagonal[n] = 0.5 * p.Omega * std::sqrt((n + 1.0) * (N - n));
    return H;
}

FockSpectrum spectrum(const TwoModeParams& p) {
    const FockHamiltonian H = build_fock_hamiltonian(p);
    const int dim = H.N + 1;

    std::vector<double> values, vectors;
    if (!lapack::tridiag_eig_lowest(H.diagonal, H.off_diagonal, dim, values, vectors))
        throw ConvergenceFailure("spectrum: Fock-basis diagonalization failed");

    FockSpectrum out;
    out.energies = std::move(values);
    out.states.resize(dim);
    for (int j = 0; j < dim; ++j) {
        const double* col = vectors.data() + static_cast<std::size_t>(j) * dim;
        int imax = 0;
        for (int i = 1; i < dim; ++i)
            if (std::abs(col[i]) > std::abs(col[imax])) imax = i;
        const double sign = col[imax] < 0 ? -1.0 : 1.0;
        out.states[j].assign(col, col + dim);
        if (sign < 0)
            for (double& x : out.states[j]) x = -x;
    }
    return out;
}

SpectrumScan scan_spectrum(const PotentialParams& trap, const Grid& g,
                           const std::vector<double>& x0_list, double g0, int N,
                           double overlap_threshold) {
    SpectrumScan scan;
    scan.x0_values.reserve(x0_list.size());
    for (double x0 : x0_list) {
        PotentialParams p = trap;
        p.x0 = x0;
        ModePoint mp;
        try {
            mp = mode_point(p, g);
        } catch (const NoDoubleWell& e) {
            std::ostringstream os;
            os << e.what() << " (x0=" << x0 << ")";
            throw NoDoubleWell(os.str());
        } catch (const NoBoundMode& e) {
            std::ostringstream os;
            os << e.what() << " (x0=" << x0 << ")";
            throw NoBoundMode(os.str());
        }
        const TwoModeParams tp = attach_interaction(mp, g0, N, overlap_threshold);
        const FockSpectrum sp = spectrum(tp);

        std::vector<double> levels(sp.energies.size());
        for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = sp.energies[i] / N;
        std::vector<double> gaps(levels.size() > 1 ? levels.size() - 1 : 0);
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) gaps[i] = levels[i + 1] - levels[i];

        scan.x0_values.push_back(x0);
        scan.levels.push_back(std::move(levels));
        scan.gaps.push_back(std::move(gaps));
        scan.params_trace.push_back(tp);
    }
    return scan;
}

MinGap min_gap(const SpectrumScan& scan) {
    if (scan.x0_values.empty())
        throw std::invalid_argument("min_gap: empty scan");
    MinGap best{0.0, -1, 0.0};
    bool first = true;
    for (std::size_t c = 0; c < scan.x0_values.size(); ++c) {
        for (std::size_t i = 0; i < scan.gaps[c].size(); ++i) {
            if (first || scan.gaps[c][i] < best.gap) {
                best = MinGap{scan.x0_values[c], static_cast<int>(i + 1), scan.gaps[c][i]};
                first = false;
            }
        }
    }
    if (best.level_index < 0)
        throw std::invalid_argument("min_gap: scan has no adjacent levels (N = 0?)");
    return best;
}

} // namespace dwell
