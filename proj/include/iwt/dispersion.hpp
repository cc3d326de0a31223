#pragma once

#include "iwt/core.hpp"

// Linear dispersion of long internal waves in isopycnal coordinates, the
// Eulerian conversion of the vertical wavenumber, and the normal-variable
// transformation that diagonalizes the quadratic Hamiltonian.

namespace iwt {

// omega(k, m) = sqrt(f^2 + g^2 k^2 / (rho0^2 m^2 N^2)).  Even in m;
// omega >= f with equality iff k = 0.  m = 0 is a domain error.
double omega(const Wavevector& p, const PhysicalParams& params);

// High-frequency (f -> 0) form: omega = g k / (rho0 N |m|).
double omega_high_frequency(const Wavevector& p, const PhysicalParams& params);

// d omega / dk at fixed m, for the full dispersion.
double omega_dk(const Wavevector& p, const PhysicalParams& params);

// Vertical wavenumber in z coordinates: m_star = -(rho0 N^2 / g) m.
// Evaluating sqrt(f^2 + N^2 k^2 / m_star^2) with it reproduces omega exactly.
double m_star(const Wavevector& p, const PhysicalParams& params);

// Eulerian-form dispersion, sqrt(f^2 + N^2 k^2 / mz^2), mz the z-space
// vertical wavenumber.
double omega_eulerian(double k, double mz, const PhysicalParams& params);

// Weight f_p of the canonical transformation
//   phi_p = i/(sqrt(2) sqrt(f_p)) (a_p - a*_{-p}),
//   Pi_p  = sqrt(f_p)/sqrt(2)     (a_p + a*_{-p}),
// chosen so the quadratic Hamiltonian becomes sum omega_p |a_p|^2.
struct NormalModeCoeffs {
    double f_p = 0.0;
    double omega = 0.0;

    // |coefficients| of the diagonalizing transformation; the phi one
    // carries an additional factor i.
    double phi_coeff() const;  // N sqrt(omega) / (sqrt(2 g) k), from 1/(sqrt(2) sqrt(f_p))
    double pi_coeff() const;   // sqrt(g) k / (sqrt(2 omega) N), from sqrt(f_p)/sqrt(2)

private:
    friend NormalModeCoeffs normal_coeffs(const Wavevector&, const PhysicalParams&);
    double g_ = 0.0, N_ = 0.0, k_ = 0.0;
};

NormalModeCoeffs normal_coeffs(const Wavevector& p, const PhysicalParams& params);

// Coefficients of the quadratic Hamiltonian density,
//   H_linear = 1/2 sum_p (A_p |phi_p|^2 + B_p |Pi_p|^2),
// with A_p = (g/N^2) k^2 and B_p = N^2 f^2/(g k^2) + g/(rho0^2 m^2).
// f_p = sqrt(A_p / B_p) and omega = sqrt(A_p B_p).
double quadratic_coeff_phi(const Wavevector& p, const PhysicalParams& params);
double quadratic_coeff_pi(const Wavevector& p, const PhysicalParams& params);

}  // namespace iwt
