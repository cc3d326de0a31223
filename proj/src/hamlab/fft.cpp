#include "iwt/hamlab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace iwt::hamlab {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(cplx* data, std::size_t n, bool inverse) {
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
    if (n == 1) return;

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = data[i + j];
                const cplx v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) data[i] *= inv;
    }
}

void fft_axis(std::vector<cplx>& data, std::size_t pre, std::size_t n, std::size_t post,
              bool inverse) {
    std::vector<cplx> line(n);
    for (std::size_t p = 0; p < pre; ++p) {
        for (std::size_t q = 0; q < post; ++q) {
            cplx* base = data.data() + (p * n) * post + q;
            for (std::size_t i = 0; i < n; ++i) line[i] = base[i * post];
            fft_inplace(line.data(), n, inverse);
            for (std::size_t i = 0; i < n; ++i) base[i * post] = line[i];
        }
    }
}

}  // namespace iwt::hamlab
