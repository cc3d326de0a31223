#include "iwt/dispersion.hpp"

#include <cmath>

namespace iwt {

double omega(const Wavevector& p, const PhysicalParams& params) {
    if (p.m == 0.0) throw std::domain_error("omega: m = 0 (frequency diverges)");
    const double r = params.g * p.k / (params.rho0 * params.N * std::fabs(p.m));
    return std::sqrt(params.f * params.f + r * r);
}

double omega_high_frequency(const Wavevector& p, const PhysicalParams& params) {
    if (p.m == 0.0) throw std::domain_error("omega_high_frequency: m = 0");
    return params.g * p.k / (params.rho0 * params.N * std::fabs(p.m));
}

double omega_dk(const Wavevector& p, const PhysicalParams& params) {
    const double c = params.g / (params.rho0 * params.N * std::fabs(p.m));
    return c * c * p.k / omega(p, params);
}

double m_star(const Wavevector& p, const PhysicalParams& params) {
    // m_z = (d rho/d z) m with the background gradient -rho0 N^2 / g; this
    // is the conversion under which the Eulerian form sqrt(f^2 + N^2k^2/m_z^2)
    // reproduces omega(p) identically.
    return -(params.rho0 * params.N * params.N / params.g) * p.m;
}

double omega_eulerian(double k, double mz, const PhysicalParams& params) {
    if (mz == 0.0) throw std::domain_error("omega_eulerian: m_star = 0");
    const double r = params.N * k / mz;
    return std::sqrt(params.f * params.f + r * r);
}

double quadratic_coeff_phi(const Wavevector& p, const PhysicalParams& params) {
    return params.g * p.k * p.k / (params.N * params.N);
}

double quadratic_coeff_pi(const Wavevector& p, const PhysicalParams& params) {
    if (p.k == 0.0) throw std::domain_error("quadratic_coeff_pi: k = 0");
    if (p.m == 0.0) throw std::domain_error("quadratic_coeff_pi: m = 0");
    const double nf = params.N * params.f;
    return nf * nf / (params.g * p.k * p.k) +
           params.g / (params.rho0 * params.rho0 * p.m * p.m);
}

NormalModeCoeffs normal_coeffs(const Wavevector& p, const PhysicalParams& params) {
    if (p.k <= 0.0)
        throw std::domain_error("normal_coeffs: k must be > 0 (phi coefficient diverges)");
    if (p.m == 0.0) throw std::domain_error("normal_coeffs: m = 0");
    NormalModeCoeffs c;
    const double a = quadratic_coeff_phi(p, params);
    const double b = quadratic_coeff_pi(p, params);
    c.f_p = std::sqrt(a / b);
    c.omega = std::sqrt(a * b);
    c.g_ = params.g;
    c.N_ = params.N;
    c.k_ = p.k;
    return c;
}

double NormalModeCoeffs::phi_coeff() const {
    return N_ * std::sqrt(omega) / (std::sqrt(2.0 * g_) * k_);
}

double NormalModeCoeffs::pi_coeff() const {
    return std::sqrt(g_) * k_ / (std::sqrt(2.0 * omega) * N_);
}

}  // namespace iwt
