#pragma once

#include <array>
#include <string>

#include "iwt/core.hpp"
#include "iwt/hamlab/field.hpp"

// The Hamiltonian hierarchy on periodic boxes: linear and nonlinear shallow
// water (with and without rotation) and hydrostatic internal waves in
// isopycnal coordinates.  Each model supplies its Hamiltonian, the exact
// canonical right-hand side, closed-form plane-wave frequencies, and the
// eigenmode initializer used by the dispersion tests.

namespace iwt::hamlab {

enum class ModelKind {
    linear_sw,
    nonlinear_sw,
    rotating_linear_sw,
    rotating_nonlinear_sw,
    internal_waves,
    rotating_internal_waves,
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

bool model_is_internal(ModelKind kind);
bool model_is_rotating(ModelKind kind);
bool model_is_linear(ModelKind kind);

struct ModelConfig {
    ModelKind kind = ModelKind::linear_sw;
    // Internal-wave models take the dimensional medium from here; shallow
    // water is nondimensional (f absorbed into time, so effectively 1).
    PhysicalParams params{};
    double q0 = 1.0;                 // rotating nonlinear SW background PV
    std::vector<double> q0_profile;  // rotating IW: q0 per density level
                                     // (empty: the rest-state value f/Pi0)

    double reference_pi0() const { return -params.g / (params.N * params.N); }
    double effective_f() const;
};

// Conjugate pair on the collocation grid: a is the height deviation eta for
// shallow water or the stratification deviation Pi - Pi0 for internal
// waves; b is the velocity potential phi.
struct FieldState {
    BoxGrid grid;
    RealField a;
    RealField b;

    static FieldState zeros(const BoxGrid& grid);
};

class Model {
public:
    Model(const ModelConfig& config, const BoxGrid& grid);

    const ModelConfig& config() const { return config_; }
    const BoxGrid& grid() const { return grid_; }
    const SpectralOps& ops() const { return ops_; }
    double dealias_fraction() const;

    double hamiltonian(const FieldState& state) const;
    // Canonical tendencies (a_t, b_t) = (dH/db, -dH/da), dealiased.
    FieldState rhs(const FieldState& state) const;
    FieldState mask(const FieldState& state) const;

    // Plane-wave frequency of the linearization, from the closed forms.
    double mode_frequency(const std::array<int, 3>& mode) const;
    // Linear eigenmode (a = A cos theta, b = B sin theta) of that mode.
    FieldState eigenmode(const std::array<int, 3>& mode, double amplitude) const;

private:
    ModelConfig config_;
    BoxGrid grid_;
    SpectralOps ops_;
    std::vector<double> q0_of_r_;

    void check_state(const FieldState& state) const;
    std::array<double, 3> mode_wavevector(const std::array<int, 3>& mode) const;
};

// Directional-derivative verification of the canonical structure:
// <dH/da, da> + <dH/db, db> from rhs against centered finite differences of
// the Hamiltonian, minimized over the step sequence.  Returns the smallest
// relative error.
double functional_derivative_check(const Model& model, const FieldState& state,
                                   const FieldState& direction,
                                   const std::vector<double>& eps_seq);

}  // namespace iwt::hamlab
