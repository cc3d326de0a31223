#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types for the internal-wave turbulence toolkit: physical
// constants of the medium, wavevectors in isopycnal coordinates, log-spaced
// spectral grids and the wave-action fields living on them.

namespace iwt {

// Environmental constants of the stratified, rotating medium.
// f: Coriolis parameter [rad/s], g: gravity [m/s^2],
// N: buoyancy frequency [rad/s] (constant profile), rho0: reference density.
struct PhysicalParams {
    double f = 1e-4;
    double g = 9.81;
    double N = 1e-2;
    double rho0 = 1000.0;

    void validate() const {
        if (!(g > 0.0)) throw std::invalid_argument("PhysicalParams: g must be > 0");
        if (!(N > 0.0)) throw std::invalid_argument("PhysicalParams: N must be > 0");
        if (!(rho0 > 0.0)) throw std::invalid_argument("PhysicalParams: rho0 must be > 0");
        if (!(f >= 0.0)) throw std::invalid_argument("PhysicalParams: f must be >= 0");
    }

    double coriolis_to_buoyancy() const { return f / N; }

    // The rotation-free approximations of the high-frequency limit are
    // considered applicable below this ratio.
    bool high_frequency_regime() const { return coriolis_to_buoyancy() <= 0.01; }
};

// Wavevector in isopycnal coordinates: k is the horizontal magnitude
// [rad/m], m the signed vertical wavenumber conjugate to density
// [m^3 rad/kg].
struct Wavevector {
    double k = 0.0;
    double m = 0.0;
};

// Axisymmetric (k, m) lattice, logarithmically spaced along both axes.
// Only positive m is stored; spectra are even in m.
class SpectralGrid {
public:
    SpectralGrid() = default;
    SpectralGrid(std::vector<double> k_axis, std::vector<double> m_axis);

    const std::vector<double>& k_axis() const { return k_axis_; }
    const std::vector<double>& m_axis() const { return m_axis_; }
    std::size_t nk() const { return k_axis_.size(); }
    std::size_t nm() const { return m_axis_.size(); }
    std::size_t size() const { return nk() * nm(); }

    double k_min() const { return k_axis_.front(); }
    double k_max() const { return k_axis_.back(); }
    double m_min() const { return m_axis_.front(); }
    double m_max() const { return m_axis_.back(); }

    Wavevector node(std::size_t ik, std::size_t im) const {
        return {k_axis_.at(ik), m_axis_.at(im)};
    }
    std::size_t flat_index(std::size_t ik, std::size_t im) const { return ik * nm() + im; }

    // Width of the logarithmic cell around node i, used as the quadrature
    // measure in energy sums: dx_i = x_i * (sqrt(r) - 1/sqrt(r)).
    double k_cell_width(std::size_t ik) const;
    double m_cell_width(std::size_t im) const;

    bool operator==(const SpectralGrid& other) const {
        return k_axis_ == other.k_axis_ && m_axis_ == other.m_axis_;
    }

private:
    std::vector<double> k_axis_;
    std::vector<double> m_axis_;

    static void check_axis(const std::vector<double>& axis, const std::string& name);
};

// n(k, m) = amplitude * k^x * |m|^y.
struct PowerLawSpectrum {
    double amplitude = 1.0;
    double x = 0.0;
    double y = 0.0;

    void validate() const;
    double operator()(double k, double m_abs) const;
};

// Nonnegative wave-action density sampled on a SpectralGrid, row-major in
// (ik, im). Immutable-by-convention after construction: all toolkit code
// treats spectra as values.
class WaveactionSpectrum {
public:
    WaveactionSpectrum() = default;
    WaveactionSpectrum(SpectralGrid grid, std::vector<double> values);
    explicit WaveactionSpectrum(SpectralGrid grid);  // all zeros

    const SpectralGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t ik, std::size_t im) const { return values_[grid_.flat_index(ik, im)]; }
    void set_value(std::size_t ik, std::size_t im, double v);

    // Log-bilinear interpolation in (log k, log m) with power-law
    // extrapolation beyond the grid cutoffs. Cells with a zero corner
    // evaluate to zero (the log interpolant cannot represent them).
    double interpolate(double k, double m_abs) const;

private:
    SpectralGrid grid_;
    std::vector<double> values_;

    double interpolate_clamped(double logk, double logm) const;
};

SpectralGrid make_log_grid(double k_min, double k_max, std::size_t nk,
                           double m_min, double m_max, std::size_t nm);

WaveactionSpectrum sample_power_law(const SpectralGrid& grid, const PowerLawSpectrum& law);

// Compensated (Kahan) accumulator; kernel sums must stay meaningful at
// 1e-12 residual scale against O(1) cancellations.
class KahanSum {
public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace iwt
