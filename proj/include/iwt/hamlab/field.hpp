#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "iwt/hamlab/fft.hpp"

// Periodic collocation grids and the spectral operator toolbox used by the
// Hamiltonian lab: derivatives, horizontal inverse Laplacian (zero mode
// pinned), vertical antiderivative, and sharp dealiasing masks.

namespace iwt::hamlab {

// Periodic box, row-major storage (ix, iy, ir) with ir fastest.  nr = 1 is
// the two-dimensional shallow-water case; for internal waves the third axis
// is the density coordinate.
struct BoxGrid {
    std::size_t nx = 1, ny = 1, nr = 1;
    double Lx = 2.0 * M_PI, Ly = 2.0 * M_PI, Lr = 2.0 * M_PI;

    std::size_t size() const { return nx * ny * nr; }
    bool three_dimensional() const { return nr > 1; }
    std::size_t index(std::size_t ix, std::size_t iy, std::size_t ir) const {
        return (ix * ny + iy) * nr + ir;
    }
    void validate() const;
    bool operator==(const BoxGrid&) const = default;
};

using RealField = std::vector<double>;

double field_rms(const RealField& f);
double field_max_abs(const RealField& f);

class SpectralOps {
public:
    explicit SpectralOps(const BoxGrid& grid);

    const BoxGrid& grid() const { return grid_; }
    double cell_measure() const;

    RealField dx(const RealField& f) const;
    RealField dy(const RealField& f) const;
    RealField laplacian_h(const RealField& f) const;

    // Inverse horizontal Laplacian with the per-slice zero mode set to zero.
    // When mean_tol >= 0, inputs whose horizontal-mean modes exceed
    // mean_tol * rms(f) are rejected (zero-mode ambiguity).
    RealField inv_laplacian_h(const RealField& f, double mean_tol = -1.0) const;

    // (-d_y, d_x) of the inverse horizontal Laplacian.
    std::pair<RealField, RealField> perp_grad_inv_lap(const RealField& f,
                                                      double mean_tol = -1.0) const;

    // Antiderivative along the density axis: 1/(i m) in Fourier space with
    // the m = 0 plane pinned to zero mean.
    RealField vertical_antiderivative(const RealField& f) const;

    // Sharp spectral cutoff keeping |mode| <= frac * (n/2) per active axis.
    RealField dealias(const RealField& f, double frac) const;

    // Imaginary residue of a forward/backward transform round trip.
    double max_imag_residue(const RealField& f) const;

private:
    BoxGrid grid_;
    std::vector<double> kx_, ky_, kr_;        // signed wavenumbers
    std::vector<double> kx_d_, ky_d_, kr_d_;  // derivative version (Nyquist zeroed)

    std::vector<cplx> to_spectral(const RealField& f) const;
    RealField to_real(std::vector<cplx> spec) const;
    void transform(std::vector<cplx>& data, bool inverse) const;
};

}  // namespace iwt::hamlab
