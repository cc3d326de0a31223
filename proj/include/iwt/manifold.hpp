#pragma once

#include <optional>
#include <vector>

#include "iwt/core.hpp"
#include "iwt/triads.hpp"

// Resolution of the vertical-wavenumber and frequency delta functions of the
// angle-averaged kinetic equation: closed-form inversion of the dispersion
// relation, the triangle kernel 1/Delta, and the quadrature enumeration of
// the resonant manifold for each collision branch.

namespace iwt {

// The three terms of the angle-averaged collision integral.
enum class CollisionBranch {
    direct,   // R^k_{12}:  omega   = omega_1 + omega_2,  m   = m_1 + m_2
    mirror1,  // R^1_{k2}:  omega_1 = omega   + omega_2,  m_1 = m   + m_2
    mirror2,  // R^2_{1k}:  omega_2 = omega_1 + omega  ,  m_2 = m_1 + m
};

constexpr CollisionBranch all_branches[] = {CollisionBranch::direct, CollisionBranch::mirror1,
                                            CollisionBranch::mirror2};

struct RootJacobian {
    double k;         // nonnegative root of omega(k, m) = omega_target
    double jacobian;  // |d omega / d k|^{-1} at the root; +inf when k = 0
};

// Inverts the dispersion relation at fixed vertical wavenumber:
//   k = (rho0 N |m| / g) sqrt(omega^2 - f^2).
// Returns nullopt for omega_target < f (no resonance, not a fault).
std::optional<RootJacobian> solve_k2(double omega_target, double m2, const PhysicalParams& params);

// 1/Delta with Delta the doubled triangle area of (k, k1, k2); nullopt when
// the triangle inequality fails (off manifold), +inf on the degenerate
// boundary.  Symmetric under any permutation of the arguments.
std::optional<double> triangle_kernel(double k, double k1, double k2);

// Quadrature controls shared by the manifold enumeration and the collision
// kernels built on it.
struct QuadratureSettings {
    int refinement = 0;            // each level doubles node densities
    int mu_per_decade = 16;        // vertical-wavenumber nodes per decade (base)
    int gl_points = 24;            // Gauss-Legendre points per frequency interval (base)
    int scan_points = 96;          // feasibility scan density per interval search
    bool boundary_map = true;      // sine substitution absorbing 1/sqrt endpoints
    bool mixed_sign_m = true;      // include mixed-sign vertical-wavenumber sectors
    bool swap_outgoing_roles = false;  // enumerate the other outgoing leg as free
    bool high_frequency_omega = false; // kernels use the f = 0 dispersion form
    bool k_prefactor_quarter = false;  // alternative K-term normalization
    double kernel_norm = 1.0;          // overall collision-integral constant

    // Integration domain; every wavevector magnitude entering the kernel
    // stays inside these bounds.
    double k_cut_min = 0.0, k_cut_max = 0.0;
    double m_cut_min = 0.0, m_cut_max = 0.0;

    int mu_per_decade_eff() const { return mu_per_decade << refinement; }
    int gl_points_eff() const { return gl_points << refinement; }

    static QuadratureSettings for_grid(const SpectralGrid& grid, int refinement = 0,
                                       double extend = 1.0);
    QuadratureSettings with_cutoff_factor(double factor) const;
    void validate() const;
};

// One quadrature point on the resonant manifold of a target wavevector.
// (k1, m1) are the free integration variables (m1, m2 signed), (k2, m2)
// resolved from the vertical and frequency resonances.
struct ResonantPoint {
    double k1 = 0.0, m1 = 0.0;
    double k2 = 0.0, m2 = 0.0;
    double omega1 = 0.0, omega2 = 0.0;  // bookkept exactly resonant frequencies
    double jacobian = 0.0;              // |d omega_2 / d k_2|^{-1}
    double weight = 0.0;                // dk1 dm1 quadrature weight
    double delta = 0.0;                 // triangle Delta(k, k1, k2)
    double inv_delta = 0.0;             // triangle kernel 1/Delta
    CollisionBranch branch = CollisionBranch::direct;
};

// Enumerates quadrature points of one collision branch for target p.
// Deterministic ordering: sectors in fixed order, then ascending |m1|,
// then ascending frequency.  Empty result is legal (no resonances inside
// the cutoffs).
std::vector<ResonantPoint> enumerate_manifold(const Wavevector& p, CollisionBranch branch,
                                              const PhysicalParams& params,
                                              const QuadratureSettings& quad);

// Total kernel-weighted measure sum(weight * jacobian * inv_delta) of a
// branch; used by refinement-convergence diagnostics.
double manifold_measure(const Wavevector& p, CollisionBranch branch,
                        const PhysicalParams& params, const QuadratureSettings& quad);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace iwt
