#pragma once

#include <functional>

#include "iwt/core.hpp"

// Garrett-Munk empirical spectrum, its moored (frequency) form, the
// wave-turbulence high-frequency spectrum, and slope-fit comparison
// utilities.

namespace iwt {

struct GMParams {
    double E = 1.0;       // total energy constant
    double m_star = 1.0;  // reference vertical wavenumber
    PhysicalParams physical;

    void validate() const;
};

// E(k, m) = 3 f N E (m/m*) / (pi (1 + m/m*)^(5/2) (N^2 k^2 + f^2 m^2)).
double gm_energy_density(double k, double m, const GMParams& gm);

// Moored spectrum E(omega) = 2 f E / (pi sqrt(1 - (f/omega)^2) omega^2),
// defined for omega > f; diverges at the inertial frequency.
double gm_moored(double omega, const GMParams& gm);

// Wave-turbulence energy spectrum E(k, m) = amplitude k^(-3/2) m^(-3/2),
// i.e. E = k omega n applied to n = k^(-7/2) |m|^(-1/2) with omega ~ k/m.
double wt_energy_density(double k, double m, double amplitude);

// E(k, omega): change of variables of the GM density through the
// (Eulerian-form) dispersion m = N k / sqrt(omega^2 - f^2), with the
// analytic Jacobian |dm/domega|.
double gm_energy_density_komega(double k, double omega, const GMParams& gm);

// integral over k of E(k, omega); cross-checks the closed-form moored
// spectrum.
double gm_moored_numeric(double omega, const GMParams& gm, int points_per_decade = 32);

struct SlopeFit {
    double x_slope = 0.0;     // d log v / d log k
    double y_slope = 0.0;     // d log v / d log m
    double rms_residual = 0.0;
};

// Least-squares plane fit of log(value) over (log k, log m) inside the
// window [k_lo, k_hi] x [m_lo, m_hi].  Requires >= 4 nodes per axis in the
// window and positive values there.
SlopeFit slope_fit(const SpectralGrid& grid, const std::vector<double>& values,
                   double k_lo, double k_hi, double m_lo, double m_hi);

// Convenience: fit a callable density sampled on a fresh log window.
SlopeFit slope_fit_function(const std::function<double(double, double)>& density,
                            double k_lo, double k_hi, double m_lo, double m_hi,
                            std::size_t nk = 16, std::size_t nm = 16);

// Local log-log slope of a one-variable function by central differencing.
double local_log_slope(const std::function<double(double)>& fn, double x, double rel_step = 1e-4);

}  // namespace iwt
