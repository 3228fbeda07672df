#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dwell/errors.hpp"
#include "dwell/potential.hpp"
#include "oracles.hpp"

using namespace dwell;

namespace {
const PotentialParams kFig1{6.4, 0.5, -3.7};
}

TEST_CASE("x0 = 0 reduces to the bare harmonic trap") {
    PotentialParams p{6.4, 0.5, 0.0};
    for (double x : {-7.3, -1.0, 0.0, 0.4, 2.5, 11.0})
        CHECK(eval_potential(p, x) == 0.5 * x * x);  // atan(0) kills the Gaussian exactly
}

TEST_CASE("value at the dip center for the Fig-1 trap") {
    const double v = eval_potential(kFig1, -3.7);
    // Direct arithmetic of the formula: Gaussian factor is 1 at x = x0.
    CHECK(v == doctest::Approx(6.845 + 6.4 * std::atan(-3.7)).epsilon(1e-14));
    CHECK(v == doctest::Approx(-1.518728660282830).epsilon(1e-12));
    CHECK(v < 0.0);
}

TEST_CASE("Gaussian term is gone ten widths out") {
    for (double x : {-3.7 + 10 * 0.5, -3.7 - 10 * 0.5, 8.0}) {
        const double v = eval_potential(kFig1, x);
        CHECK(std::abs(v - 0.5 * x * x) <= 1e-10 * std::abs(0.5 * x * x));
    }
}

TEST_CASE("sampling is the pointwise evaluation, bit for bit") {
    const Grid g{-10.0, 10.0, 2001};
    const auto f = sample_potential(kFig1, g);
    for (int i : {0, 1, 515, 1000, 1999, 2000})
        CHECK(f.values[i] == eval_potential(kFig1, g.point(i)));

    PotentialParams harm{6.4, 0.5, 0.0};
    const auto fh = sample_potential(harm, g);
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.point(i);
        REQUIRE(fh.values[i] == 0.5 * x * x);
    }
}

TEST_CASE("Fig-1 sampled minimum is below the trap bottom") {
    const auto f = sample_potential(kFig1, default_grid());
    double vmin = f.values[0];
    for (double v : f.values) vmin = std::min(vmin, v);
    CHECK(vmin < 0.0);
}

TEST_CASE("locate_wells rejects single-well shapes") {
    CHECK_THROWS_AS(locate_wells(PotentialParams{6.4, 0.5, 0.0}, default_grid()), NoDoubleWell);
    CHECK_THROWS_AS(locate_wells(PotentialParams{0.0, 0.5, -3.7}, default_grid()), NoDoubleWell);
}

TEST_CASE("locate_wells finds the Fig-1 geometry") {
    const Grid g = default_grid();
    const WellGeometry w = locate_wells(kFig1, g);

    CHECK(w.left_min < w.barrier_top);
    CHECK(w.barrier_top < w.right_min);
    CHECK(std::abs(w.left_min - (-3.7)) < 0.2);   // shifted off the dip center by the harmonic slope
    CHECK(std::abs(w.right_min) < 0.05);
    const double vb = eval_potential(kFig1, w.barrier_top);
    CHECK(vb > eval_potential(kFig1, w.left_min));
    CHECK(vb > eval_potential(kFig1, w.right_min));

    // Brute-force cross-check: slope sign changes on the samples.
    const auto scan = oracles::slope_scan(sample_potential(kFig1, g));
    REQUIRE(scan.minima.size() == 2);
    REQUIRE(scan.maxima.size() >= 1);
    CHECK(std::abs(scan.minima[0] - w.left_min) <= g.spacing());
    CHECK(std::abs(scan.minima[1] - w.right_min) <= g.spacing());
    bool barrier_matched = false;
    for (double m : scan.maxima)
        if (std::abs(m - w.barrier_top) <= g.spacing()) barrier_matched = true;
    CHECK(barrier_matched);
}

TEST_CASE("quadratic refinement converges at second order") {
    auto wells = [](int n) { return locate_wells(kFig1, Grid{-12.0, 12.0, n}); };
    const WellGeometry w1 = wells(4801);
    const WellGeometry w2 = wells(9601);
    const WellGeometry w4 = wells(19201);

    auto ratio_ok = [](double a, double b, double c) {
        const double e1 = std::abs(a - b), e2 = std::abs(b - c);
        if (e2 < 1e-13) return true;  // already at roundoff
        const double r = e1 / e2;
        return r >= 2.0 && r <= 8.0;
    };
    CHECK(ratio_ok(w1.left_min, w2.left_min, w4.left_min));
    CHECK(ratio_ok(w1.barrier_top, w2.barrier_top, w4.barrier_top));
    CHECK(ratio_ok(w1.right_min, w2.right_min, w4.right_min));
}

TEST_CASE("x0 derivative matches a finite difference") {
    const double eps = 1e-6;
    for (double x : {-4.0, -3.0, -1.0, 0.5}) {
        PotentialParams pp = kFig1, pm = kFig1;
        pp.x0 += eps;
        pm.x0 -= eps;
        const double fd = (eval_potential(pp, x) - eval_potential(pm, x)) / (2 * eps);
        CHECK(eval_potential_dx0(kFig1, x) == doctest::Approx(fd).epsilon(1e-7));
    }
}
