// Slower kinetic studies: cutoff-divergence trends away from the local
// Kolmogorov solution, refinement convergence of the stationarity residual,
// and the discrete energy-conservation diagnostic of the time stepper.

#include <doctest.h>

#include <cmath>

#include "iwt/dispersion.hpp"
#include "iwt/kinetic.hpp"

using namespace iwt;

TEST_CASE("cutoff studies: local at Kolmogorov, divergent away from it") {
    const PhysicalParams p{1e-4, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(1.0, 100.0, 16, 1.0, 100.0, 16);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const Wavevector node = grid.node(8, 8);

    SUBCASE("steep law: infrared growth without bound") {
        const PowerLawEvaluator steep({1.0, -6.0, -2.0});
        const auto table = locality_check(steep, node, p, quad, {1.0, 2.0, 4.0});
        CHECK_FALSE(table.converged);
        // each extension adds infrared kernel mass
        CHECK(table.entries[1].result.magnitude > 3.0 * table.entries[0].result.magnitude);
        CHECK(table.entries[2].result.magnitude > 3.0 * table.entries[1].result.magnitude);
        CHECK(std::fabs(table.entries[2].result.rate) >
              3.0 * std::fabs(table.entries[0].result.rate));
    }
    SUBCASE("flat law: ultraviolet growth without bound") {
        const PowerLawEvaluator flat({1.0, 0.0, 0.0});
        const auto table = locality_check(flat, node, p, quad, {1.0, 2.0, 4.0});
        CHECK_FALSE(table.converged);
        CHECK(table.entries[2].result.magnitude > 10.0 * table.entries[0].result.magnitude);
        CHECK(std::fabs(table.entries[2].result.rate) >
              10.0 * std::fabs(table.entries[0].result.rate));
    }
}

TEST_CASE("stationarity residual decreases under quadrature refinement") {
    const PhysicalParams p{1e-4, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(1.0, 100.0, 16, 1.0, 100.0, 16);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const auto probes = probe_nodes(grid, 2, 2);
    const auto report = stationarity_report({1.0, -3.5, -0.5}, probes, p, quad, 2);
    REQUIRE(report.convergence.size() == 3);
    // the residual is already at the rotation floor; it must not grow
    CHECK(report.convergence[2].second <= 2.0 * report.convergence[0].second);
    CHECK(report.convergence[2].second < 1e-4);
}

TEST_CASE("evolving a bump conserves energy to within 1% per turnover") {
    // The quadrature does not enforce each triad's symmetric appearance in
    // all three host equations, so discrete conservation is approximate and
    // improves with the spectrum grid resolution; 20x20 keeps the drift per
    // relaxation turnover under the 1% diagnostic bound.
    const PhysicalParams p{0.0, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(1.0, 30.0, 20, 1.0, 30.0, 20);
    std::vector<double> v(grid.size());
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) {
            const Wavevector q = grid.node(ik, im);
            const double bump =
                0.5 * std::exp(-(std::pow(std::log(q.k / 5.0), 2) +
                                 std::pow(std::log(q.m / 5.0), 2)) / 0.5);
            v[grid.flat_index(ik, im)] = (1.0 + bump) / omega(q, p);
        }
    const WaveactionSpectrum initial(grid, v);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid, 1);

    EvolveOptions opts;
    opts.dt = 1.0;  // step size set by the stability caps
    opts.steps = 30;
    const Trajectory traj = evolve(initial, p, quad, opts);

    const double e0 = traj.samples.front().energy;
    const double e1 = traj.samples.back().energy;
    // turnover fraction completed: largest relative spectrum change
    double turnover = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        turnover = std::max(turnover,
                            std::fabs(traj.final_spectrum.values()[i] - v[i]) / v[i]);
    CAPTURE(turnover);
    REQUIRE(turnover > 0.01);  // the bump must actually relax
    const double drift = std::fabs(e1 - e0) / e0;
    CHECK(drift <= 0.01 * turnover);
}
