#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "iwt/core.hpp"
#include "iwt/manifold.hpp"

// Flat-section key/value run configuration: parsing with line-number
// diagnostics, strict unknown-key rejection, validation against the module
// preconditions, and re-emission of the effective configuration (the
// manifest format, which parses back to the same configuration).

namespace iwt {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what) {}
};

struct GridConfig {
    double k_min = 1.0, k_max = 100.0;
    std::size_t nk = 32;
    double m_min = 1.0, m_max = 100.0;
    std::size_t nm = 32;

    SpectralGrid build() const { return make_log_grid(k_min, k_max, nk, m_min, m_max, nm); }
};

struct QuadConfig {
    int refinement = 0;
    int mu_per_decade = 16;
    int gl_points = 24;
    int scan_points = 96;
    bool boundary_map = true;
    bool mixed_sign_m = true;
    bool high_frequency_omega = false;
    bool k_prefactor_quarter = false;
    double kernel_norm = 1.0;
    double cutoff_extend = 1.0;
};

struct ScanConfig {
    double x_min = -4.5, x_max = -2.5;
    std::size_t nx = 9;
    double y_min = -1.5, y_max = 0.5;
    std::size_t ny = 9;
    double amplitude = 1.0;
    std::size_t probes_k = 3, probes_m = 4;
};

struct LawConfig {
    double amplitude = 1.0;
    double x = -3.5, y = -0.5;
    bool equipartition = false;  // overrides the power law with n = 1/omega
};

struct LocalityConfig {
    std::vector<double> factors{1.0, 2.0, 4.0};
    double tolerance = 0.01;
    // probe node indices; negative means the grid midpoint
    int node_ik = -1, node_im = -1;
};

struct EvolveConfig {
    double dt = 1e-4;
    std::size_t steps = 10;
    std::size_t snapshot_every = 0;
    double rate_cap = 0.1;
    double stiffness_cap = 0.5;
    // initial condition: the [law] spectrum times an optional log-normal bump
    double bump_amplitude = 0.0;
    double bump_k = 10.0, bump_m = 10.0, bump_width = 0.5;
};

struct TriadsConfig {
    std::size_t count = 100;
    bool high_frequency = false;
};

struct GmConfig {
    double E = 1.0;
    double m_star = 0.01;  // deep m >> m* asymptotics inside the default window
    double wt_amplitude = 1.0;
    double fit_k_lo = 100.0, fit_k_hi = 1000.0;
    double fit_m_lo = 10.0, fit_m_hi = 100.0;
    std::size_t fit_nk = 16, fit_nm = 16;
};

struct HamlabConfig {
    std::string model = "linear_sw";
    std::size_t nx = 32, ny = 32, nr = 1;
    double amplitude = 1e-3;
    double dt = 0.01;
    std::size_t steps = 100;
    std::string scheme = "rk4";
    std::array<int, 3> mode{2, 1, 0};
    double q0 = 1.0;
    std::size_t snapshot_every = 0;
};

struct RunSettings {
    unsigned seed = 0;
    int threads = 0;  // 0 = machine default
    bool deterministic = false;
    std::string output = "out";
};

struct RunConfig {
    PhysicalParams physical;
    GridConfig grid;
    QuadConfig quad;
    ScanConfig scan;
    LawConfig law;
    LocalityConfig locality;
    EvolveConfig evolve;
    TriadsConfig triads;
    GmConfig gm;
    HamlabConfig hamlab;
    RunSettings run;

    // validated QuadratureSettings for the configured grid
    QuadratureSettings quadrature() const;
    void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string to_text(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace iwt
