#include "iwt/gm.hpp"

#include <cmath>

#include "iwt/manifold.hpp"

namespace iwt {

void GMParams::validate() const {
    physical.validate();
    if (!(E > 0.0)) throw std::invalid_argument("GMParams: E must be > 0");
    if (!(m_star > 0.0)) throw std::invalid_argument("GMParams: m_star must be > 0");
}

double gm_energy_density(double k, double m, const GMParams& gm) {
    if (k < 0.0 || !(m > 0.0)) throw std::domain_error("gm_energy_density: need k >= 0, m > 0");
    const PhysicalParams& P = gm.physical;
    const double denom = P.N * P.N * k * k + P.f * P.f * m * m;
    if (denom == 0.0) throw std::domain_error("gm_energy_density: k = m = 0 denominator");
    const double u = m / gm.m_star;
    return 3.0 * P.f * P.N * gm.E * u / (M_PI * std::pow(1.0 + u, 2.5) * denom);
}

double gm_moored(double omega, const GMParams& gm) {
    const double f = gm.physical.f;
    if (!(omega > f)) throw std::domain_error("gm_moored: omega must exceed f");
    const double r = f / omega;
    return 2.0 * f * gm.E / (M_PI * std::sqrt(1.0 - r * r) * omega * omega);
}

double wt_energy_density(double k, double m, double amplitude) {
    if (!(k > 0.0) || !(m > 0.0))
        throw std::domain_error("wt_energy_density: need k > 0, m > 0");
    if (!(amplitude > 0.0)) throw std::domain_error("wt_energy_density: amplitude must be > 0");
    return amplitude * std::pow(k, -1.5) * std::pow(m, -1.5);
}

double gm_energy_density_komega(double k, double omega, const GMParams& gm) {
    const PhysicalParams& P = gm.physical;
    if (!(omega > P.f)) throw std::domain_error("gm_energy_density_komega: omega must exceed f");
    if (!(k > 0.0)) throw std::domain_error("gm_energy_density_komega: k must be > 0");
    const double s2 = omega * omega - P.f * P.f;
    const double s = std::sqrt(s2);
    const double m = P.N * k / s;
    const double jac = P.N * k * omega / (s2 * s);  // |dm/domega|
    return gm_energy_density(k, m, gm) * jac;
}

double gm_moored_numeric(double omega, const GMParams& gm, int points_per_decade) {
    gm.validate();
    const PhysicalParams& P = gm.physical;
    if (!(omega > P.f)) throw std::domain_error("gm_moored_numeric: omega must exceed f");
    const double s = std::sqrt(omega * omega - P.f * P.f);
    // k corresponding to m/m* = u: k = u m* s / N.  The integrand decays
    // like (1 + u)^(-5/2); fourteen decades around u = 1 make the truncated
    // tails negligible.
    const double k_lo = 1e-8 * gm.m_star * s / P.N;
    const double k_hi = 1e6 * gm.m_star * s / P.N;
    const double llo = std::log(k_lo), lhi = std::log(k_hi);
    const int segments = static_cast<int>((lhi - llo) / std::log(10.0) * 2.0) + 1;
    const auto& gl = gauss_legendre(std::max(8, points_per_decade / 2));
    KahanSum sum;
    for (int seg = 0; seg < segments; ++seg) {
        const double a = llo + (lhi - llo) * seg / segments;
        const double b = llo + (lhi - llo) * (seg + 1) / segments;
        const double c = 0.5 * (a + b), r = 0.5 * (b - a);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = c + r * gl.nodes[i];
            const double k = std::exp(u);
            sum.add(gl.weights[i] * r * k * gm_energy_density_komega(k, omega, gm));
        }
    }
    return sum.value();
}

namespace {

SlopeFit plane_fit(const std::vector<double>& lk, const std::vector<double>& lm,
                   const std::vector<double>& lv) {
    const std::size_t n = lv.size();
    double su = 0, sv = 0, sw = 0, suu = 0, svv = 0, suv = 0, suw = 0, svw = 0;
    for (std::size_t i = 0; i < n; ++i) {
        su += lk[i];
        sv += lm[i];
        sw += lv[i];
        suu += lk[i] * lk[i];
        svv += lm[i] * lm[i];
        suv += lk[i] * lm[i];
        suw += lk[i] * lv[i];
        svw += lm[i] * lv[i];
    }
    const double N = static_cast<double>(n);
    // Normal equations for w = a + sx u + sy v, solved by Cramer's rule.
    const double det = N * (suu * svv - suv * suv) - su * (su * svv - suv * sv) +
                       sv * (su * suv - suu * sv);
    if (det == 0.0) throw std::runtime_error("slope_fit: singular normal equations");
    const double det_a = sw * (suu * svv - suv * suv) - su * (suw * svv - suv * svw) +
                         sv * (suw * suv - suu * svw);
    const double det_x = N * (suw * svv - svw * suv) - sw * (su * svv - suv * sv) +
                         sv * (su * svw - suw * sv);
    const double det_y = N * (suu * svw - suw * suv) - su * (su * svw - suw * sv) +
                         sw * (su * suv - suu * sv);
    const double a = det_a / det;
    const double sx = det_x / det;
    const double sy = det_y / det;

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = a + sx * lk[i] + sy * lm[i] - lv[i];
        ss += r * r;
    }
    return {sx, sy, std::sqrt(ss / N)};
}

}  // namespace

SlopeFit slope_fit(const SpectralGrid& grid, const std::vector<double>& values,
                   double k_lo, double k_hi, double m_lo, double m_hi) {
    if (values.size() != grid.size()) throw std::invalid_argument("slope_fit: value count mismatch");
    std::vector<std::size_t> iks, ims;
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        if (grid.k_axis()[ik] >= k_lo && grid.k_axis()[ik] <= k_hi) iks.push_back(ik);
    for (std::size_t im = 0; im < grid.nm(); ++im)
        if (grid.m_axis()[im] >= m_lo && grid.m_axis()[im] <= m_hi) ims.push_back(im);
    if (iks.size() < 4 || ims.size() < 4)
        throw std::invalid_argument("slope_fit: window needs >= 4 nodes per axis");

    std::vector<double> lk, lm, lv;
    for (std::size_t ik : iks) {
        for (std::size_t im : ims) {
            const double v = values[grid.flat_index(ik, im)];
            if (!(v > 0.0)) throw std::domain_error("slope_fit: nonpositive value in window");
            lk.push_back(std::log(grid.k_axis()[ik]));
            lm.push_back(std::log(grid.m_axis()[im]));
            lv.push_back(std::log(v));
        }
    }
    return plane_fit(lk, lm, lv);
}

SlopeFit slope_fit_function(const std::function<double(double, double)>& density,
                            double k_lo, double k_hi, double m_lo, double m_hi,
                            std::size_t nk, std::size_t nm) {
    const SpectralGrid window = make_log_grid(k_lo, k_hi, nk, m_lo, m_hi, nm);
    std::vector<double> values(window.size());
    for (std::size_t ik = 0; ik < nk; ++ik)
        for (std::size_t im = 0; im < nm; ++im)
            values[window.flat_index(ik, im)] =
                density(window.k_axis()[ik], window.m_axis()[im]);
    return slope_fit(window, values, k_lo, k_hi, m_lo, m_hi);
}

double local_log_slope(const std::function<double(double)>& fn, double x, double rel_step) {
    const double h = rel_step;
    const double up = fn(x * (1.0 + h));
    const double dn = fn(x * (1.0 - h));
    if (!(up > 0.0) || !(dn > 0.0)) throw std::domain_error("local_log_slope: nonpositive values");
    return (std::log(up) - std::log(dn)) / (std::log1p(h) - std::log1p(-h));
}

}  // namespace iwt
