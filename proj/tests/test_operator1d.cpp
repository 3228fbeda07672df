#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dwell/errors.hpp"
#include "dwell/operator1d.hpp"
#include "dwell/potential.hpp"

using namespace dwell;

namespace {

SampledFunction harmonic(const Grid& g) {
    SampledFunction v{g, std::vector<double>(g.n_points)};
    for (int i = 0; i < g.n_points; ++i) v.values[i] = 0.5 * g.point(i) * g.point(i);
    return v;
}

// Frozen fine-grid (h/4, 19201 nodes) reference for the Fig-1 trap; the live
// oracle below re-derives these before they are trusted.
constexpr double kFig1FineE0 = 0.497539988315;
constexpr double kFig1FineE1 = 0.664662882915;

} // namespace

TEST_CASE("stencil entries for zero potential at unit spacing") {
    Grid g{0.0, 10.0, 11};  // h = 1
    SampledFunction v{g, std::vector<double>(11, 0.0)};
    const auto op = build_h0(v);
    for (double d : op.diagonal) CHECK(d == 1.0);
    for (double o : op.off_diagonal) CHECK(o == -0.5);
}

TEST_CASE("harmonic spectrum on the default grid") {
    const auto op = build_h0(harmonic(default_grid()));
    const auto pairs = eigensolve(op, 6);
    for (int n = 0; n < 6; ++n)
        CHECK(std::abs(pairs[n].energy - (n + 0.5)) < 1e-4);
    for (int n = 0; n + 1 < 6; ++n) CHECK(pairs[n].energy < pairs[n + 1].energy);
}

TEST_CASE("residual and normalization contracts hold") {
    const auto op = build_h0(sample_potential(PotentialParams{6.4, 0.5, -3.7}, default_grid()));
    const double h = op.grid.spacing();
    for (const auto& [E, u] : eigensolve(op, 4)) {
        double nrm = 0.0;
        for (double x : u.values) nrm += x * x;
        CHECK(std::abs(h * nrm - 1.0) < 1e-10);

        const auto r = apply(op, u.values);
        double rs = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double d = r[i] - E * u.values[i];
            rs += d * d;
        }
        CHECK(std::sqrt(h * rs) <= 1e-9 * std::max(1.0, std::abs(E)));

        int imax = 0;
        for (int i = 1; i < op.grid.n_points; ++i)
            if (std::abs(u.values[i]) > std::abs(u.values[imax])) imax = i;
        CHECK(u.values[imax] > 0.0);
    }
}

TEST_CASE("operator application reproduces the analytic action on a Gaussian") {
    // psi = exp(-x^2/2) is an eigenfunction of the harmonic H0: H0 psi = psi/2.
    auto max_error = [](int n) {
        const Grid g{-12.0, 12.0, n};
        const auto op = build_h0(harmonic(g));
        std::vector<double> psi(g.n_points);
        for (int i = 0; i < g.n_points; ++i) psi[i] = std::exp(-0.5 * g.point(i) * g.point(i));
        const auto hp = apply(op, psi);
        double err = 0.0;
        for (int i = 1; i + 1 < g.n_points; ++i)
            err = std::max(err, std::abs(hp[i] - 0.5 * psi[i]));
        return err;
    };
    const double e1 = max_error(4801);
    const double e2 = max_error(9601);
    CHECK(e1 < 1e-4);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("Fig-1 lowest levels against the fine-grid reference") {
    const PotentialParams p{6.4, 0.5, -3.7};

    // Live oracle: the same diagonalization on the h/4 grid.
    const auto fine = eigensolve(build_h0(sample_potential(p, Grid{-12.0, 12.0, 19201})), 2);
    CHECK(fine[0].energy == doctest::Approx(kFig1FineE0).epsilon(1e-9));
    CHECK(fine[1].energy == doctest::Approx(kFig1FineE1).epsilon(1e-9));

    const auto coarse = eigensolve(build_h0(sample_potential(p, default_grid())), 2);
    CHECK(std::abs(coarse[0].energy - kFig1FineE0) < 1e-4);
    CHECK(std::abs(coarse[1].energy - kFig1FineE1) < 1e-4);
}

TEST_CASE("halving h quarters the ground-state error") {
    auto err = [](int n) {
        const auto p = eigensolve(build_h0(harmonic(Grid{-12.0, 12.0, n})), 1);
        return std::abs(p[0].energy - 0.5);
    };
    const double r = err(4801) / err(9601);
    CHECK(r > 3.5);
    CHECK(r < 4.5);
}

TEST_CASE("matrix elements: diagonal value, orthogonality, symmetry") {
    const auto op = build_h0(harmonic(default_grid()));
    const auto pairs = eigensolve(op, 2);
    const auto& u0 = pairs[0].state;
    const auto& u1 = pairs[1].state;

    CHECK(matrix_element(u0, op, u0) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(std::abs(matrix_element(u0, op, u1)) < 1e-10);

    const double a = matrix_element(u0, op, u1);
    const double b = matrix_element(u1, op, u0);
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("grid mismatch is rejected") {
    const auto op = build_h0(harmonic(default_grid()));
    const auto other = eigensolve(build_h0(harmonic(Grid{-12.0, 12.0, 2401})), 1);
    CHECK_THROWS_AS(matrix_element(other[0].state, op, other[0].state), GridMismatch);
}
