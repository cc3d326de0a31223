#include <doctest.h>

#include <cmath>
#include <random>

#include "iwt/dispersion.hpp"
#include "iwt/triads.hpp"

using namespace iwt;

namespace {

PhysicalParams nd(double f_over_N = 0.01) {
    // nondimensional-style medium
    return {f_over_N, 1.0, 1.0, 1.0};
}

// Random resonant triad in vector form.
Triad random_vector_triad(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> mdist(0.1, 3.0);
    std::bernoulli_distribution sgn;
    const double a2 = ang(rng), a3 = ang(rng);
    const double r2 = mag(rng), r3 = mag(rng);
    const Vec2 k2{r2 * std::cos(a2), r2 * std::sin(a2)};
    const Vec2 k3{r3 * std::cos(a3), r3 * std::sin(a3)};
    double m2 = mdist(rng) * (sgn(rng) ? 1.0 : -1.0);
    double m3 = mdist(rng) * (sgn(rng) ? 1.0 : -1.0);
    if (m2 + m3 == 0.0) m3 *= 1.5;
    return Triad::from_vectors(k2, k3, m2, m3);
}

}  // namespace

TEST_CASE("collinear triad: I matches the unit-cosine closed form") {
    const PhysicalParams p = nd();
    const Vec2 k2{1.3, 0.0}, k3{2.1, 0.0};
    const Triad t = Triad::from_vectors(k2, k3, 0.7, 0.9);
    const double w1 = omega(t.p1(), p), w2 = omega(t.p2(), p), w3 = omega(t.p3(), p);
    const double expected = -p.N / (4.0 * std::sqrt(2.0 * p.g)) *
                            (std::sqrt(w2 * w3 / w1) * t.k1() +
                             std::sqrt(w1 * w3 / w2) * t.k2() +
                             std::sqrt(w1 * w2 / w3) * t.k3());
    CHECK(I_term(t, p) == doctest::Approx(expected).epsilon(1e-13));
}

// Under omega_i = N xi_i and k_i = kappa_i / L, all three coefficient lines
// factor as N^(3/2) / (L sqrt(g)) times a dimensionless bracket.  Rebuild
// the same (kappa, xi) triad at different N and L and compare ratios.
TEST_CASE("I, J, K scale as N^(3/2)/L at fixed (kappa, xi)") {
    PhysicalParams base = nd(0.05);
    std::mt19937 rng(101);
    for (int rep = 0; rep < 10; ++rep) {
        const Triad t = random_vector_triad(rng);

        const double N2 = 3.7, L2 = 2.3, G2 = 1.9;
        // omega ~ g k/(rho0 N |m|): to hold xi = omega/N fixed while
        // k -> k/L2, N -> N2 N and g -> G2 g, vertical wavenumbers rescale
        // by G2 N^2/(N2^2 L2).
        PhysicalParams scaled = base;
        scaled.N = N2 * base.N;
        scaled.g = G2 * base.g;
        scaled.f = base.f * (scaled.N / base.N);  // fixed f/N
        const double mscale = G2 * (base.N * base.N) / (scaled.N * scaled.N) / L2;
        // rebuild with the same horizontal geometry, scaled magnitudes
        const Triad ts = Triad::from_vectors(
            {t.p2().k / L2 * std::cos(0.3), t.p2().k / L2 * std::sin(0.3)},
            {t.p3().k / L2 * std::cos(1.1), t.p3().k / L2 * std::sin(1.1)},
            t.m2() * mscale, t.m3() * mscale);
        const Triad tb = Triad::from_vectors(
            {t.p2().k * std::cos(0.3), t.p2().k * std::sin(0.3)},
            {t.p3().k * std::cos(1.1), t.p3().k * std::sin(1.1)},
            t.m2(), t.m3());

        // xi invariance: omega/N identical between the two builds
        CHECK(omega(ts.p2(), scaled) / scaled.N ==
              doctest::Approx(omega(tb.p2(), base) / base.N).epsilon(1e-12));

        // all three lines scale as N^(3/2) g^(-1/2) / L
        const double expected = std::pow(scaled.N / base.N, 1.5) / std::sqrt(G2) / L2;
        CHECK(I_term(ts, scaled) / I_term(tb, base) ==
              doctest::Approx(expected).epsilon(1e-11));
        CHECK(J_term(ts, scaled) / J_term(tb, base) ==
              doctest::Approx(expected).epsilon(1e-11));
        CHECK(K_term_imag(ts, scaled) / K_term_imag(tb, base) ==
              doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("I and J are symmetric and K invariant under the 2<->3 swap") {
    std::mt19937 rng(7);
    const PhysicalParams p = nd(0.3);
    for (int rep = 0; rep < 200; ++rep) {
        const Triad t = random_vector_triad(rng);
        const Triad s = t.swapped23();
        CHECK(I_term(t, p) == doctest::Approx(I_term(s, p)).epsilon(1e-13));
        CHECK(J_term(t, p) == doctest::Approx(J_term(s, p)).epsilon(1e-13));
        CHECK(K_term_imag(t, p) == doctest::Approx(K_term_imag(s, p)).epsilon(1e-12));
        CHECK(v_squared(t, p) == doctest::Approx(v_squared(s, p)).epsilon(1e-12));
    }
}

TEST_CASE("J vanishes identically at f = 0") {
    std::mt19937 rng(13);
    const PhysicalParams p = nd(0.0);
    for (int rep = 0; rep < 20; ++rep) CHECK(J_term(random_vector_triad(rng), p) == 0.0);
}

TEST_CASE("J scales exactly with f^2 at fixed frequencies") {
    std::mt19937 rng(17);
    const TriadOptions hf{true, false};  // frequencies independent of f
    PhysicalParams p1 = nd(0.04), p2 = nd(0.02);
    for (int rep = 0; rep < 20; ++rep) {
        const Triad t = random_vector_triad(rng);
        CHECK(J_term(t, p2, hf) == doctest::Approx(0.25 * J_term(t, p1, hf)).epsilon(1e-15));
        // full dispersion: quarter-scaling holds to O((f/N)^2)
        CHECK(J_term(t, p2) == doctest::Approx(0.25 * J_term(t, p1)).epsilon(1e-2));
    }
}

TEST_CASE("K vanishes at f = 0 and for collinear triads") {
    std::mt19937 rng(19);
    CHECK(K_term_imag(random_vector_triad(rng), nd(0.0)) == 0.0);
    const Triad collinear = Triad::from_vectors({1.0, 0.0}, {2.5, 0.0}, 0.3, 0.4);
    CHECK(K_term_imag(collinear, nd(0.3)) == 0.0);
}

TEST_CASE("K quarter-prefactor switch rescales exactly") {
    std::mt19937 rng(23);
    const PhysicalParams p = nd(0.2);
    const Triad t = random_vector_triad(rng);
    TriadOptions quarter;
    quarter.k_prefactor_quarter = true;
    CHECK(K_term_imag(t, p, quarter) == doctest::Approx(0.25 * K_term_imag(t, p)).epsilon(1e-15));
}

TEST_CASE("magnitude form refuses a signed K but supplies |K| through v_squared") {
    const Triad t = Triad::from_magnitudes(2.0, 1.5, 1.0, 0.9, 0.5, 0.4);
    CHECK_THROWS_AS(K_term_imag(t, nd(0.3)), std::domain_error);
    CHECK(v_squared(t, nd(0.3)) > 0.0);
}

TEST_CASE("v_squared: f = 0 reduces to I^2") {
    std::mt19937 rng(29);
    const PhysicalParams p = nd(0.0);
    for (int rep = 0; rep < 50; ++rep) {
        const Triad t = random_vector_triad(rng);
        const double i = I_term(t, p);
        CHECK(v_squared(t, p) == doctest::Approx(i * i).epsilon(1e-14));
    }
}

TEST_CASE("vector and magnitude forms agree to 1e-12 over random resonant triads") {
    std::mt19937 rng(31);
    const PhysicalParams p = nd(0.3);
    for (int rep = 0; rep < 1000; ++rep) {
        const Triad tv = random_vector_triad(rng);
        const Triad tm = Triad::from_magnitudes(tv.k1(), tv.k2(), tv.k3(),
                                                tv.m1(), tv.m2(), tv.m3());
        CHECK(v_squared(tm, p) ==
              doctest::Approx(v_squared(tv, p)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate triangle contributes no |K|^2") {
    const double k2 = 1.1, k3 = 0.6;
    const Triad t = Triad::from_magnitudes(k2 + k3, k2, k3, 1.0, 0.6, 0.4);
    const PhysicalParams p = nd(0.4);
    const double ij = I_term(t, p) + J_term(t, p);
    CHECK(v_squared(t, p) == doctest::Approx(ij * ij).epsilon(1e-13));
}

TEST_CASE("high-frequency dominance of I over J and K") {
    std::mt19937 rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        const Triad t = random_vector_triad(rng);
        const PhysicalParams pa = nd(0.01);
        const double cj = std::fabs(J_term(t, pa) / I_term(t, pa)) / (0.01 * 0.01);
        const double ck = std::fabs(K_term_imag(t, pa) / I_term(t, pa)) / 0.01;
        const PhysicalParams pb = nd(0.002);
        CHECK(std::fabs(J_term(t, pb) / I_term(t, pb)) <= 1.5 * cj * 0.002 * 0.002);
        CHECK(std::fabs(K_term_imag(t, pb) / I_term(t, pb)) <= 1.5 * ck * 0.002);
    }
}

TEST_CASE("triangle inequality violations are rejected") {
    CHECK_THROWS_AS(Triad::from_magnitudes(5.0, 1.0, 1.0, 1.0, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(Triad::from_magnitudes(2.0, 1.5, 1.0, 1.0, 0.5, 0.4), std::domain_error);
}

TEST_CASE("zero wavenumber magnitudes are domain errors") {
    const Triad t = Triad::from_vectors({1.0, 0.0}, {-1.0, 0.0}, 0.5, 0.5);  // k1 = 0
    CHECK_THROWS_AS(I_term(t, nd()), std::domain_error);
    const Triad tz = Triad::from_vectors({1.0, 0.0}, {0.5, 0.5}, 0.5, -0.5);  // m1 = 0
    CHECK_THROWS_AS(I_term(tz, nd()), std::domain_error);
}
