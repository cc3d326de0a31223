#include <doctest.h>

#include <cmath>

#include "iwt/gm.hpp"

using namespace iwt;

namespace {
GMParams typical() {
    GMParams gm;
    gm.E = 1.0;
    gm.m_star = 0.01;
    gm.physical = {1e-4, 9.81, 1e-2, 1000.0};
    return gm;
}
}  // namespace

TEST_CASE("gm density fixed point cross-check") {
    GMParams gm;
    gm.E = 1.0;
    gm.m_star = 1.0;
    gm.physical = {1e-4, 1e-2, 1e-2, 1000.0};
    const auto& P = gm.physical;
    // independent evaluation, different association order
    const double u = 1.0 / gm.m_star;
    const double expected =
        (3.0 * gm.E / M_PI) * P.f * P.N * u /
        (std::pow(1.0 + u, 2.5) * (P.N * P.N + P.f * P.f));
    CHECK(gm_energy_density(1.0, 1.0, gm) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("gm density is exactly linear in E") {
    GMParams a = typical(), b = typical();
    b.E = 2.0 * a.E;
    CHECK(gm_energy_density(0.7, 3.0, b) == 2.0 * gm_energy_density(0.7, 3.0, a));
}

TEST_CASE("gm density domain errors") {
    GMParams gm = typical();
    CHECK_THROWS_AS(gm_energy_density(-1.0, 1.0, gm), std::domain_error);
    CHECK_THROWS_AS(gm_energy_density(1.0, 0.0, gm), std::domain_error);
    gm.physical.f = 0.0;
    CHECK_THROWS_AS(gm_energy_density(0.0, 1.0, gm), std::domain_error);  // zero denominator
}

TEST_CASE("gm density asymptotic slopes approach (-2, -3/2)") {
    const GMParams gm = typical();
    // window: m >> m*, N k >> f m
    const auto fit = slope_fit_function(
        [&](double k, double m) { return gm_energy_density(k, m, gm); }, 100.0, 1000.0, 10.0,
        100.0);
    CHECK(std::fabs(fit.x_slope - (-2.0)) < 0.05 * 2.0);
    CHECK(std::fabs(fit.y_slope - (-1.5)) < 0.05 * 1.5);
}

TEST_CASE("gm density decreases monotonically in k") {
    const GMParams gm = typical();
    double prev = gm_energy_density(0.1, 5.0, gm);
    for (double k = 0.2; k < 10.0; k *= 1.5) {
        const double cur = gm_energy_density(k, 5.0, gm);
        CHECK(cur < prev);
        CHECK(cur > 0.0);
        prev = cur;
    }
}

TEST_CASE("moored spectrum closed-form point") {
    GMParams gm = typical();
    const double f = gm.physical.f;
    const double w = f * std::sqrt(2.0);
    CHECK(gm_moored(w, gm) ==
          doctest::Approx(std::sqrt(2.0) * gm.E / (M_PI * f)).epsilon(1e-14));
}

TEST_CASE("moored spectrum slope is -2 away from the inertial peak") {
    const GMParams gm = typical();
    const double f = gm.physical.f;
    for (double ratio : {30.0, 100.0, 1000.0}) {
        const double slope =
            local_log_slope([&](double w) { return gm_moored(w, gm); }, ratio * f);
        CHECK(std::fabs(slope - (-2.0)) <= 0.02 * 2.0);
    }
}

TEST_CASE("moored spectrum grows monotonically toward the inertial frequency") {
    const GMParams gm = typical();
    const double f = gm.physical.f;
    CHECK_THROWS_AS(gm_moored(f, gm), std::domain_error);
    double prev = gm_moored(f * 1.5, gm);
    for (double eps : {0.2, 0.05, 0.01, 0.001}) {
        const double cur = gm_moored(f * (1.0 + eps), gm);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK(prev > 1e3 * gm_moored(10.0 * f, gm));
}

TEST_CASE("moored spectrum integrates finitely above the inertial peak") {
    // exact total: int_f^inf E(omega) d omega = E; the square-root peak is
    // integrable, so the truncated integral approaches E from below
    const GMParams gm = typical();
    const double f = gm.physical.f;
    auto integral_from = [&](double eps) {
        const double lo = std::log(f * (1.0 + eps)), hi = std::log(1e7 * f);
        const int n = 40000;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = std::exp(lo + (hi - lo) * (i + 0.5) / n);
            acc += gm_moored(w, gm) * w * (hi - lo) / n;
        }
        return acc;
    };
    const double total = integral_from(1e-6);
    CHECK(total == doctest::Approx(gm.E).epsilon(0.01));
    CHECK(integral_from(1e-2) < total);
}

TEST_CASE("numeric k-integration of E(k, omega) reproduces the moored form") {
    const GMParams gm = typical();
    const double f = gm.physical.f;
    for (double ratio : {1.5, 3.0, 10.0, 50.0}) {
        const double w = ratio * f;
        CHECK(gm_moored_numeric(w, gm) == doctest::Approx(gm_moored(w, gm)).epsilon(1e-6));
    }
}

TEST_CASE("wt density: direct substitution and consistency identity") {
    CHECK(wt_energy_density(4.0, 9.0, 1.0) == doctest::Approx(1.0 / 216.0).epsilon(1e-14));
    // E = k omega n with omega ~ k/m and n = k^(-7/2) m^(-1/2)
    for (double k : {0.3, 1.0, 7.0}) {
        for (double m : {0.5, 2.0, 20.0}) {
            const double lhs = k * (k / m) * std::pow(k, -3.5) * std::pow(m, -0.5);
            CHECK(wt_energy_density(k, m, 1.0) == doctest::Approx(lhs).epsilon(1e-13));
        }
    }
}

TEST_CASE("slope_fit is exact on synthetic power laws") {
    const SpectralGrid g = make_log_grid(1.0, 100.0, 10, 1.0, 100.0, 10);
    std::vector<double> values(g.size());
    for (std::size_t ik = 0; ik < g.nk(); ++ik)
        for (std::size_t im = 0; im < g.nm(); ++im)
            values[g.flat_index(ik, im)] =
                2.7 * std::pow(g.k_axis()[ik], -1.7) * std::pow(g.m_axis()[im], 0.9);
    const auto fit = slope_fit(g, values, 1.0, 100.0, 1.0, 100.0);
    CHECK(fit.x_slope == doctest::Approx(-1.7).epsilon(1e-12));
    CHECK(fit.y_slope == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(fit.rms_residual < 1e-10);
}

TEST_CASE("slope_fit recovers the wave-turbulence slopes by regression") {
    const auto fit = slope_fit_function(
        [](double k, double m) { return wt_energy_density(k, m, 3.0); }, 1.0, 10.0, 1.0, 10.0);
    CHECK(fit.x_slope == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(fit.y_slope == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(fit.rms_residual < 1e-10);
}

TEST_CASE("GM and WT k-slopes differ by 1/2 in the asymptotic regime") {
    const GMParams gm = typical();
    const auto gm_fit = slope_fit_function(
        [&](double k, double m) { return gm_energy_density(k, m, gm); }, 100.0, 1000.0, 10.0,
        100.0);
    const auto wt_fit = slope_fit_function(
        [](double k, double m) { return wt_energy_density(k, m, 1.0); }, 100.0, 1000.0, 10.0,
        100.0);
    CHECK(std::fabs((wt_fit.x_slope - gm_fit.x_slope) - 0.5) < 0.05);
}

TEST_CASE("slope_fit rejects bad windows") {
    const SpectralGrid g = make_log_grid(1.0, 100.0, 10, 1.0, 100.0, 10);
    std::vector<double> values(g.size(), 1.0);
    CHECK_THROWS_AS(slope_fit(g, values, 1.0, 1.5, 1.0, 100.0), std::invalid_argument);
    values[g.flat_index(5, 5)] = 0.0;
    CHECK_THROWS_AS(slope_fit(g, values, 1.0, 100.0, 1.0, 100.0), std::domain_error);
}
