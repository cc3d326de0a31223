#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "iwt/dispersion.hpp"

using namespace iwt;

namespace {
PhysicalParams ocean() {
    return {1e-4, 9.81, 1e-2, 1000.0};
}
}  // namespace

TEST_CASE("omega collapses to f at k = 0") {
    const PhysicalParams p = ocean();
    CHECK(omega({0.0, 3.0}, p) == 1e-4);
    CHECK(omega({0.0, -0.4}, p) == 1e-4);
}

TEST_CASE("omega direct substitution") {
    const PhysicalParams p{1.0, 1.0, 1.0, 1.0};
    CHECK(omega({3.0, 4.0}, p) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("omega m = 0 is a domain error") {
    CHECK_THROWS_AS(omega({1.0, 0.0}, ocean()), std::domain_error);
}

TEST_CASE("f = 0 limit reduces to the high-frequency form") {
    PhysicalParams p = ocean();
    p.f = 0.0;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        const Wavevector w{u(rng), u(rng)};
        CHECK(omega(w, p) == doctest::Approx(omega_high_frequency(w, p)).epsilon(1e-15));
    }
}

TEST_CASE("omega is even in m and bounded below by f") {
    const PhysicalParams p = ocean();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(1e-3, 1e3);
    for (int i = 0; i < 100; ++i) {
        const double k = u(rng), m = u(rng);
        CHECK(omega({k, m}, p) == omega({k, -m}, p));
        CHECK(omega({k, m}, p) >= p.f);
    }
}

TEST_CASE("high-frequency dispersion is scale invariant") {
    PhysicalParams p = ocean();
    p.f = 0.0;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double k = u(rng), m = u(rng), lam = u(rng);
        CHECK(omega({lam * k, lam * m}, p) ==
              doctest::Approx(omega({k, m}, p)).epsilon(1e-14));
    }
}

TEST_CASE("m_star linear map and direct substitution") {
    PhysicalParams p;
    p.g = 10.0;
    p.rho0 = 1000.0;
    p.N = 0.01;
    CHECK(m_star({1.0, 0.0}, p) == 0.0);
    // -(rho0 N^2 / g) m = -(1000 * 1e-4 / 10)(-1) = 0.01
    CHECK(m_star({1.0, -1.0}, p) == doctest::Approx(0.01).epsilon(1e-15));
    // nondimensional medium (rho0 N^2 = g): the two conversion conventions
    // coincide and the map is the identity on magnitudes
    const PhysicalParams nd{0.0, 1.0, 1.0, 1.0};
    CHECK(m_star({1.0, -2.0}, nd) == 2.0);
}

TEST_CASE("Eulerian and isopycnal dispersion agree through m_star") {
    const PhysicalParams p = ocean();
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double k = std::pow(10.0, u(rng));
        const double m = std::copysign(std::pow(10.0, u(rng)), u(rng));
        const Wavevector w{k, m};
        const double direct = omega(w, p);
        const double via_euler = omega_eulerian(k, m_star(w, p), p);
        CHECK(via_euler == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("normal_coeffs matches the f = 0 closed form") {
    PhysicalParams p = ocean();
    p.f = 0.0;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double k = u(rng), m = u(rng);
        const auto c = normal_coeffs({k, m}, p);
        // f = 0: f_p = k rho0 |m| / N, derived by simplifying sqrt(A/B)
        CHECK(c.f_p == doctest::Approx(k * p.rho0 * m / p.N).epsilon(1e-13));
    }
}

TEST_CASE("normal_coeffs is even in m and rejects k = 0") {
    const PhysicalParams p = ocean();
    const auto a = normal_coeffs({2.0, 5.0}, p);
    const auto b = normal_coeffs({2.0, -5.0}, p);
    CHECK(a.f_p == b.f_p);
    CHECK(a.omega == b.omega);
    CHECK_THROWS_AS(normal_coeffs({0.0, 5.0}, p), std::domain_error);
}

TEST_CASE("transformation coefficients agree with the general weight") {
    const PhysicalParams p = ocean();
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int i = 0; i < 100; ++i) {
        const Wavevector w{u(rng), u(rng)};
        const auto c = normal_coeffs(w, p);
        CHECK(c.phi_coeff() ==
              doctest::Approx(1.0 / std::sqrt(2.0 * c.f_p)).epsilon(1e-13));
        CHECK(c.pi_coeff() == doctest::Approx(std::sqrt(c.f_p / 2.0)).epsilon(1e-13));
    }
}

// The choice of f_p must diagonalize the quadratic Hamiltonian: evaluating
// 1/2 sum (A|phi|^2 + B|Pi|^2) through the transformation on random complex
// amplitudes must return sum omega |a|^2 with no cross terms left over.
TEST_CASE("quadratic Hamiltonian diagonalizes to omega |a|^2") {
    const PhysicalParams p = ocean();
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Wavevector w{u(rng), u(rng)};
        const auto c = normal_coeffs(w, p);
        const std::complex<double> a_plus(gauss(rng), gauss(rng));
        const std::complex<double> a_minus(gauss(rng), gauss(rng));

        const std::complex<double> I(0.0, 1.0);
        const std::complex<double> phi_p = I * c.phi_coeff() * (a_plus - std::conj(a_minus));
        const std::complex<double> pi_p = c.pi_coeff() * (a_plus + std::conj(a_minus));
        const std::complex<double> phi_m = I * c.phi_coeff() * (a_minus - std::conj(a_plus));
        const std::complex<double> pi_m = c.pi_coeff() * (a_minus + std::conj(a_plus));

        const double A = quadratic_coeff_phi(w, p);
        const double B = quadratic_coeff_pi(w, p);
        const double h = 0.5 * (A * std::norm(phi_p) + B * std::norm(pi_p) +
                                A * std::norm(phi_m) + B * std::norm(pi_m));
        const double diag = c.omega * (std::norm(a_plus) + std::norm(a_minus));
        CHECK(std::fabs(h - diag) / diag < 1e-12);
    }
}

TEST_CASE("omega_dk is the analytic slope") {
    const PhysicalParams p = ocean();
    const Wavevector w{2.0, 3.0};
    const double h = 1e-6;
    const double fd = (omega({w.k + h, w.m}, p) - omega({w.k - h, w.m}, p)) / (2.0 * h);
    CHECK(omega_dk(w, p) == doctest::Approx(fd).epsilon(1e-8));
}
