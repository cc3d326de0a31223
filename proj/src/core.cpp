#include "iwt/core.hpp"

#include <algorithm>
#include <cmath>

namespace iwt {

void SpectralGrid::check_axis(const std::vector<double>& axis, const std::string& name) {
    if (axis.size() < 2) throw std::invalid_argument("SpectralGrid: " + name + " needs >= 2 nodes");
    if (!(axis.front() > 0.0))
        throw std::invalid_argument("SpectralGrid: " + name + " must be positive");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1]))
            throw std::invalid_argument("SpectralGrid: " + name + " must be strictly increasing");
    }
    // constant node ratio (log spacing); interpolation and cell measures
    // rely on it
    const double r0 = axis[1] / axis[0];
    for (std::size_t i = 2; i < axis.size(); ++i) {
        const double r = axis[i] / axis[i - 1];
        if (std::fabs(r / r0 - 1.0) > 1e-9)
            throw std::invalid_argument("SpectralGrid: " + name + " must be log-spaced");
    }
}

SpectralGrid::SpectralGrid(std::vector<double> k_axis, std::vector<double> m_axis)
    : k_axis_(std::move(k_axis)), m_axis_(std::move(m_axis)) {
    check_axis(k_axis_, "k_axis");
    check_axis(m_axis_, "m_axis");
}

double SpectralGrid::k_cell_width(std::size_t ik) const {
    const double r = k_axis_[1] / k_axis_[0];
    return k_axis_.at(ik) * (std::sqrt(r) - 1.0 / std::sqrt(r));
}

double SpectralGrid::m_cell_width(std::size_t im) const {
    const double r = m_axis_[1] / m_axis_[0];
    return m_axis_.at(im) * (std::sqrt(r) - 1.0 / std::sqrt(r));
}

void PowerLawSpectrum::validate() const {
    if (!(amplitude > 0.0)) throw std::invalid_argument("PowerLawSpectrum: amplitude must be > 0");
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("PowerLawSpectrum: exponents must be finite");
}

double PowerLawSpectrum::operator()(double k, double m_abs) const {
    return amplitude * std::pow(k, x) * std::pow(m_abs, y);
}

WaveactionSpectrum::WaveactionSpectrum(SpectralGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("WaveactionSpectrum: value count does not match grid");
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("WaveactionSpectrum: values must be finite and nonnegative");
    }
}

WaveactionSpectrum::WaveactionSpectrum(SpectralGrid grid)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

void WaveactionSpectrum::set_value(std::size_t ik, std::size_t im, double v) {
    if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("WaveactionSpectrum: values must be finite and nonnegative");
    values_[grid_.flat_index(ik, im)] = v;
}

namespace {

// Index of the axis cell containing x (clamped), plus the interpolation
// fraction in log space.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double logx) {
    const std::size_t n = axis.size();
    double lo = std::log(axis.front());
    double hi = std::log(axis.back());
    const double step = (hi - lo) / static_cast<double>(n - 1);
    double u = (logx - lo) / step;
    if (u <= 0.0) return {0, 0.0};
    if (u >= static_cast<double>(n - 1)) return {n - 2, 1.0};
    auto i = static_cast<std::size_t>(u);
    if (i > n - 2) i = n - 2;
    return {i, u - static_cast<double>(i)};
}

}  // namespace

double WaveactionSpectrum::interpolate_clamped(double logk, double logm) const {
    const auto [ik, tk] = locate(grid_.k_axis(), logk);
    const auto [im, tm] = locate(grid_.m_axis(), logm);
    const double v00 = value(ik, im);
    const double v01 = value(ik, im + 1);
    const double v10 = value(ik + 1, im);
    const double v11 = value(ik + 1, im + 1);
    if (v00 <= 0.0 || v01 <= 0.0 || v10 <= 0.0 || v11 <= 0.0) return 0.0;
    const double l00 = std::log(v00), l01 = std::log(v01);
    const double l10 = std::log(v10), l11 = std::log(v11);
    const double l0 = l00 + tm * (l01 - l00);
    const double l1 = l10 + tm * (l11 - l10);
    return std::exp(l0 + tk * (l1 - l0));
}

double WaveactionSpectrum::interpolate(double k, double m_abs) const {
    if (!(k > 0.0) || !(m_abs > 0.0)) throw std::domain_error("interpolate: k, |m| must be > 0");
    double logk = std::log(k);
    double logm = std::log(m_abs);

    // Power-law extrapolation beyond cutoffs: continue the local log-log
    // slope at the boundary.
    const double lk_lo = std::log(grid_.k_min()), lk_hi = std::log(grid_.k_max());
    const double lm_lo = std::log(grid_.m_min()), lm_hi = std::log(grid_.m_max());
    const double lk = std::clamp(logk, lk_lo, lk_hi);
    const double lm = std::clamp(logm, lm_lo, lm_hi);
    double v = interpolate_clamped(lk, lm);
    if (v <= 0.0) return 0.0;

    double logv = std::log(v);
    const double eps_k = 1e-3 * (lk_hi - lk_lo);
    const double eps_m = 1e-3 * (lm_hi - lm_lo);
    if (logk != lk) {
        const double lk2 = (logk < lk_lo) ? lk_lo + eps_k : lk_hi - eps_k;
        const double v2 = interpolate_clamped(lk2, lm);
        if (v2 <= 0.0) return 0.0;
        const double slope = (logv - std::log(v2)) / (lk - lk2);
        logv += slope * (logk - lk);
    }
    if (logm != lm) {
        const double lm2 = (logm < lm_lo) ? lm_lo + eps_m : lm_hi - eps_m;
        const double v2 = interpolate_clamped(lk, lm2);
        if (v2 <= 0.0) return 0.0;
        const double slope = (logv - std::log(v2)) / (lm - lm2);
        logv += slope * (logm - lm);
    }
    return std::exp(logv);
}

SpectralGrid make_log_grid(double k_min, double k_max, std::size_t nk,
                           double m_min, double m_max, std::size_t nm) {
    if (!(k_min > 0.0) || !(m_min > 0.0))
        throw std::invalid_argument("make_log_grid: bounds must be positive");
    if (!(k_min < k_max) || !(m_min < m_max))
        throw std::invalid_argument("make_log_grid: inverted or degenerate range");
    if (nk < 2 || nm < 2) throw std::invalid_argument("make_log_grid: need at least 2 nodes per axis");

    auto fill = [](double lo, double hi, std::size_t n) {
        std::vector<double> axis(n);
        const double llo = std::log(lo), lhi = std::log(hi);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            axis[i] = std::exp(llo + t * (lhi - llo));
        }
        axis.front() = lo;  // endpoints exact
        axis.back() = hi;
        return axis;
    };
    return SpectralGrid(fill(k_min, k_max, nk), fill(m_min, m_max, nm));
}

WaveactionSpectrum sample_power_law(const SpectralGrid& grid, const PowerLawSpectrum& law) {
    law.validate();
    std::vector<double> values(grid.size());
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im)
            values[grid.flat_index(ik, im)] = law(grid.k_axis()[ik], grid.m_axis()[im]);
    return WaveactionSpectrum(grid, std::move(values));
}

}  // namespace iwt
