#include "iwt/hamlab/field.hpp"

#include <cmath>
#include <stdexcept>

namespace iwt::hamlab {

void BoxGrid::validate() const {
    if (!is_power_of_two(nx) || !is_power_of_two(ny) || !is_power_of_two(nr))
        throw std::invalid_argument("BoxGrid: dimensions must be powers of two");
    if (nx < 4 || ny < 1) throw std::invalid_argument("BoxGrid: nx >= 4, ny >= 1 required");
    if (!(Lx > 0.0 && Ly > 0.0 && Lr > 0.0))
        throw std::invalid_argument("BoxGrid: box lengths must be positive");
}

double field_rms(const RealField& f) {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(s / static_cast<double>(f.size()));
}

double field_max_abs(const RealField& f) {
    double s = 0.0;
    for (double v : f) s = std::max(s, std::fabs(v));
    return s;
}

namespace {

std::vector<double> wavenumbers(std::size_t n, double L, bool zero_nyquist) {
    std::vector<double> k(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto half = n / 2;
        double idx = (i <= half) ? static_cast<double>(i)
                                 : static_cast<double>(i) - static_cast<double>(n);
        if (zero_nyquist && n > 1 && i == half) idx = 0.0;
        k[i] = 2.0 * M_PI / L * idx;
    }
    return k;
}

}  // namespace

SpectralOps::SpectralOps(const BoxGrid& grid) : grid_(grid) {
    grid_.validate();
    kx_ = wavenumbers(grid_.nx, grid_.Lx, false);
    ky_ = wavenumbers(grid_.ny, grid_.Ly, false);
    kr_ = wavenumbers(grid_.nr, grid_.Lr, false);
    kx_d_ = wavenumbers(grid_.nx, grid_.Lx, true);
    ky_d_ = wavenumbers(grid_.ny, grid_.Ly, true);
    kr_d_ = wavenumbers(grid_.nr, grid_.Lr, true);
}

double SpectralOps::cell_measure() const {
    return grid_.Lx * grid_.Ly * (grid_.three_dimensional() ? grid_.Lr : 1.0) /
           static_cast<double>(grid_.size());
}

std::vector<cplx> SpectralOps::to_spectral(const RealField& f) const {
    if (f.size() != grid_.size()) throw std::invalid_argument("SpectralOps: field size mismatch");
    std::vector<cplx> spec(f.begin(), f.end());
    transform(spec, false);
    return spec;
}

RealField SpectralOps::to_real(std::vector<cplx> spec) const {
    transform(spec, true);
    RealField out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i].real();
    return out;
}

void SpectralOps::transform(std::vector<cplx>& data, bool inverse) const {
    const std::size_t nx = grid_.nx, ny = grid_.ny, nr = grid_.nr;
    if (nx > 1) fft_axis(data, 1, nx, ny * nr, inverse);
    if (ny > 1) fft_axis(data, nx, ny, nr, inverse);
    if (nr > 1) fft_axis(data, nx * ny, nr, 1, inverse);
}

RealField SpectralOps::dx(const RealField& f) const {
    auto spec = to_spectral(f);
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy)
            for (std::size_t ir = 0; ir < grid_.nr; ++ir)
                spec[grid_.index(ix, iy, ir)] *= cplx(0.0, kx_d_[ix]);
    return to_real(std::move(spec));
}

RealField SpectralOps::dy(const RealField& f) const {
    auto spec = to_spectral(f);
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy)
            for (std::size_t ir = 0; ir < grid_.nr; ++ir)
                spec[grid_.index(ix, iy, ir)] *= cplx(0.0, ky_d_[iy]);
    return to_real(std::move(spec));
}

RealField SpectralOps::laplacian_h(const RealField& f) const {
    auto spec = to_spectral(f);
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy) {
            const double k2 = kx_[ix] * kx_[ix] + ky_[iy] * ky_[iy];
            for (std::size_t ir = 0; ir < grid_.nr; ++ir)
                spec[grid_.index(ix, iy, ir)] *= -k2;
        }
    return to_real(std::move(spec));
}

RealField SpectralOps::inv_laplacian_h(const RealField& f, double mean_tol) const {
    auto spec = to_spectral(f);
    if (mean_tol >= 0.0) {
        const double scale = field_rms(f) + 1e-300;
        for (std::size_t ir = 0; ir < grid_.nr; ++ir) {
            const double mean = std::abs(spec[grid_.index(0, 0, ir)]) /
                                static_cast<double>(grid_.nx * grid_.ny);
            if (mean > mean_tol * scale)
                throw std::domain_error(
                    "inv_laplacian_h: nonzero horizontal mean where Delta^-1 is applied");
        }
    }
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy) {
            const double k2 = kx_[ix] * kx_[ix] + ky_[iy] * ky_[iy];
            const double mult = (k2 > 0.0) ? -1.0 / k2 : 0.0;
            for (std::size_t ir = 0; ir < grid_.nr; ++ir)
                spec[grid_.index(ix, iy, ir)] *= mult;
        }
    return to_real(std::move(spec));
}

std::pair<RealField, RealField> SpectralOps::perp_grad_inv_lap(const RealField& f,
                                                               double mean_tol) const {
    const RealField psi = inv_laplacian_h(f, mean_tol);
    return {dy(psi), dx(psi)};  // caller applies (-first, +second)
}

RealField SpectralOps::vertical_antiderivative(const RealField& f) const {
    if (!grid_.three_dimensional())
        throw std::domain_error("vertical_antiderivative: grid has no density axis");
    auto spec = to_spectral(f);
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy)
            for (std::size_t ir = 0; ir < grid_.nr; ++ir) {
                const double m = kr_d_[ir];
                spec[grid_.index(ix, iy, ir)] *= (m != 0.0) ? cplx(0.0, -1.0 / m) : cplx(0.0, 0.0);
            }
    return to_real(std::move(spec));
}

RealField SpectralOps::dealias(const RealField& f, double frac) const {
    auto spec = to_spectral(f);
    auto keep = [frac](std::size_t i, std::size_t n) {
        if (n == 1) return true;
        const auto half = n / 2;
        const double idx = (i <= half) ? static_cast<double>(i)
                                       : static_cast<double>(n) - static_cast<double>(i);
        return idx <= frac * static_cast<double>(half);
    };
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy)
            for (std::size_t ir = 0; ir < grid_.nr; ++ir)
                if (!keep(ix, grid_.nx) || !keep(iy, grid_.ny) || !keep(ir, grid_.nr))
                    spec[grid_.index(ix, iy, ir)] = 0.0;
    return to_real(std::move(spec));
}

double SpectralOps::max_imag_residue(const RealField& f) const {
    auto spec = to_spectral(f);
    transform(spec, true);
    double r = 0.0;
    for (const cplx& c : spec) r = std::max(r, std::fabs(c.imag()));
    return r;
}

}  // namespace iwt::hamlab
