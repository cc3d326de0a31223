#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Minimal radix-2 complex FFT for the pseudo-spectral lab.  Grid sizes are
// powers of two and small (<= 128 per axis), so an iterative Cooley-Tukey
// with precomputed twiddles is all that is needed.

namespace iwt::hamlab {

using cplx = std::complex<double>;

bool is_power_of_two(std::size_t n);

// In-place transform of a contiguous array of length n (power of two).
// Forward is unnormalized; inverse divides by n.
void fft_inplace(cplx* data, std::size_t n, bool inverse);

// Transform along one axis of a row-major multi-dimensional array.
// `pre` is the product of dimensions before the axis, `n` the axis length,
// `post` the product after it (stride of consecutive axis elements).
void fft_axis(std::vector<cplx>& data, std::size_t pre, std::size_t n, std::size_t post,
              bool inverse);

}  // namespace iwt::hamlab
