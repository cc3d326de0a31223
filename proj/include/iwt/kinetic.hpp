#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "iwt/core.hpp"
#include "iwt/manifold.hpp"

// The collision integral of the angle-averaged three-wave kinetic equation,
// stationarity diagnostics through the Zakharov (Kuznetsov) transformation,
// exponent scanning, locality tables and explicit time evolution of n(k, m).

namespace iwt {

// Wave-action density as seen by the quadrature; implementations are
// analytic laws or interpolating grid spectra.
class SpectrumEvaluator {
public:
    virtual ~SpectrumEvaluator() = default;
    virtual double operator()(double k, double m_abs) const = 0;
};

class PowerLawEvaluator final : public SpectrumEvaluator {
public:
    explicit PowerLawEvaluator(const PowerLawSpectrum& law) : law_(law) { law_.validate(); }
    double operator()(double k, double m_abs) const override { return law_(k, m_abs); }

private:
    PowerLawSpectrum law_;
};

// Thermodynamic equilibrium n = 1/omega, evaluated through the full
// dispersion relation.
class EquipartitionEvaluator final : public SpectrumEvaluator {
public:
    explicit EquipartitionEvaluator(const PhysicalParams& params) : params_(params) {}
    double operator()(double k, double m_abs) const override;

private:
    PhysicalParams params_;
};

// Log-bilinear interpolation of a gridded spectrum (power-law extrapolated
// beyond cutoffs, zero through cells with a zero corner).
class GridSpectrumEvaluator final : public SpectrumEvaluator {
public:
    explicit GridSpectrumEvaluator(WaveactionSpectrum spectrum) : spectrum_(std::move(spectrum)) {}
    double operator()(double k, double m_abs) const override {
        return spectrum_.interpolate(k, m_abs);
    }
    const WaveactionSpectrum& spectrum() const { return spectrum_; }

private:
    WaveactionSpectrum spectrum_;
};

// f_{p12} = n1 n2 - n (n1 + n2); n is the decaying (parent) wave.
double occupation_factor(double n, double n1, double n2);

struct CollisionResult {
    Wavevector node;
    double rate = 0.0;           // dn/dt at the node
    double branch_gain = 0.0;    // R^k_{12} integral
    double branch_loss1 = 0.0;   // R^1_{k2} integral (enters rate with -)
    double branch_loss2 = 0.0;   // R^2_{1k} integral (enters rate with -)
    double magnitude = 0.0;      // same quadrature with |n1 n2| + |n(n1+n2)|
    double max_pointwise = 0.0;  // max over points of |f|/(|n1 n2| + |n(n1+n2)|)
    std::size_t point_count = 0;
    int refinement = 0;
};

CollisionResult collision_rate(const SpectrumEvaluator& n, const Wavevector& node,
                               const PhysicalParams& params, const QuadratureSettings& quad);
CollisionResult collision_rate(const WaveactionSpectrum& spectrum, std::size_t ik, std::size_t im,
                               const PhysicalParams& params, const QuadratureSettings& quad);

// Rates at many nodes; the OpenMP path parallelizes over nodes and is
// bit-identical to the serial reference (each node owns its quadrature).
std::vector<CollisionResult> collision_rates(const SpectrumEvaluator& n,
                                             const std::vector<Wavevector>& nodes,
                                             const PhysicalParams& params,
                                             const QuadratureSettings& quad,
                                             bool parallel = true);

// Factor of the Zakharov/Kuznetsov-transformed collision integrand,
//   1 - (k1/k)^(-6-2x) (m/m1)^(2+2y) - (k2/k)^(-6-2x) (m/m2)^(2+2y),
// vertical wavenumbers entering as magnitudes (positive-sector form).
double zakharov_factor(const Wavevector& node, const ResonantPoint& pt, double x, double y);

struct StationarityReport {
    PowerLawSpectrum law;
    double residual_norm = 0.0;          // ||rate||_2 / ||magnitude||_2 over probes
    std::vector<double> node_rates;      // transformed rate per probe
    std::vector<double> node_magnitudes; // cancellation normalizer per probe
    std::vector<std::pair<int, double>> convergence;  // (refinement, residual_norm)
};

// Caches the direct-branch manifold (same-sign sectors) of each probe so a
// family of power laws can be tested cheaply.  This is the transformed
// integral: exponent-independent kernel factors are precomputed once.
class ZakharovStationarity {
public:
    ZakharovStationarity(std::vector<Wavevector> probes, const PhysicalParams& params,
                         const QuadratureSettings& quad);
    StationarityReport evaluate(const PowerLawSpectrum& law) const;
    const std::vector<Wavevector>& probes() const { return probes_; }
    std::size_t total_points() const;

private:
    struct Point {
        double k1, m1, k2, m2;
        double base;  // weight * jacobian / Delta * |V|^2 * k k1 k2 * kernel_norm / k
    };
    struct ProbeCache {
        Wavevector node;
        std::vector<Point> points;
    };
    std::vector<Wavevector> probes_;
    std::vector<ProbeCache> caches_;
};

StationarityReport stationarity_report(const PowerLawSpectrum& law,
                                       const std::vector<Wavevector>& probes,
                                       const PhysicalParams& params,
                                       const QuadratureSettings& quad,
                                       int convergence_levels = 0);

struct ExponentScan {
    std::vector<double> xs, ys;
    std::vector<double> residual;  // row-major over (x, y)
    double best_x = 0.0, best_y = 0.0, best_residual = 0.0;

    double at(std::size_t ix, std::size_t iy) const { return residual[ix * ys.size() + iy]; }
};

ExponentScan stationarity_scan(double amplitude, const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               const std::vector<Wavevector>& probes,
                               const PhysicalParams& params, const QuadratureSettings& quad,
                               bool parallel = true);

struct LocalityEntry {
    double factor = 1.0;
    CollisionResult result;
};

struct LocalityTable {
    std::vector<LocalityEntry> entries;
    bool converged = false;  // successive rates differ < tolerance * magnitude
    double tolerance = 0.01;
};

// Collision rate at one node as the integration cutoffs are pushed out by
// the given factors (>= 1, ascending).
LocalityTable locality_check(const SpectrumEvaluator& n, const Wavevector& node,
                             const PhysicalParams& params, const QuadratureSettings& quad,
                             const std::vector<double>& factors, double tolerance = 0.01);

// E = sum over nodes of k omega n dk dm on the log-cell measure.
double spectrum_energy(const WaveactionSpectrum& spectrum, const PhysicalParams& params);

struct EvolveOptions {
    double dt = 0.0;
    std::size_t steps = 0;
    double rate_cap = 0.1;          // dt * max|rate/n| <= rate_cap per step
    double stiffness_cap = 0.5;     // dt * max(magnitude/n^2) <= stiffness_cap
    std::size_t snapshot_every = 0; // 0 = endpoints only
    double blowup_factor = 4.0;     // abort if E exceeds this multiple of E(0)
    bool parallel = true;
};

struct EvolveSample {
    double time = 0.0;
    double energy = 0.0;
    double max_abs_rate = 0.0;
    std::size_t clip_events = 0;
};

struct Trajectory {
    std::vector<EvolveSample> samples;
    std::vector<std::pair<double, WaveactionSpectrum>> snapshots;
    std::size_t total_clip_events = 0;
    WaveactionSpectrum final_spectrum;
};

Trajectory evolve(const WaveactionSpectrum& n0, const PhysicalParams& params,
                  const QuadratureSettings& quad, const EvolveOptions& opts);

// Interior probe selection: evenly spread nodes from the central portion of
// the grid, away from cutoff-edge effects.
std::vector<Wavevector> probe_nodes(const SpectralGrid& grid, std::size_t count_k,
                                    std::size_t count_m);

}  // namespace iwt
