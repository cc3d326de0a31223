#pragma once

#include <complex>

#include "iwt/hamlab/models.hpp"

// Time integration of the canonical pairs: classical RK4 and an implicit
// midpoint rule for long conservation runs, plus the plane-wave frequency
// measurement used to verify linear dispersion.

namespace iwt::hamlab {

enum class Scheme { rk4, implicit_midpoint };

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme scheme);

struct IntegrateOptions {
    double dt = 0.0;
    std::size_t steps = 0;
    Scheme scheme = Scheme::rk4;
    std::size_t snapshot_every = 0;  // 0 = endpoints only
    double midpoint_tol = 1e-14;     // fixed-point tolerance (relative)
    std::size_t midpoint_max_iter = 200;
};

struct LabTrajectory {
    std::vector<double> times;
    std::vector<double> energies;
    double max_rel_drift = 0.0;  // max |H - H0| / max(|H0|, tiny)
    std::vector<std::pair<double, FieldState>> snapshots;
    FieldState final_state;
};

LabTrajectory integrate(const Model& model, FieldState state, const IntegrateOptions& opts);

// Complex amplitude of one Fourier mode of field a.
std::complex<double> mode_amplitude(const BoxGrid& grid, const RealField& field,
                                    const std::array<int, 3>& mode);

// Evolves the eigenmode of `mode` and extracts |d arg/dt| of its complex
// amplitude by a least-squares fit of the unwrapped phase.
double measure_mode_frequency(const Model& model, const std::array<int, 3>& mode,
                              double amplitude, double dt, std::size_t steps,
                              Scheme scheme = Scheme::rk4);

}  // namespace iwt::hamlab
