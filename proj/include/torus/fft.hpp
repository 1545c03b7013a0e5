// Radix-2 complex FFT and axis-wise multi-dimensional transforms.
//
// Desk-scale sizes only (<= 2^20 per axis); a straightforward iterative
// Cooley-Tukey with per-stage twiddles is plenty.

#pragma once

#include <vector>

#include "torus/common.hpp"

namespace torus::detail {

/// In-place transform of a power-of-two complex vector.
/// sign = +1 computes sum_t a[t] e^{+2 pi i t s / M} (synthesis, unnormalised),
/// sign = -1 the conjugate sum (analysis, unnormalised).
inline void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if ((n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2: size must be a power of two");

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * two_pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// Apply fft_pow2 along one axis of a row-major array.
inline void fft_along_axis(std::vector<cplx>& data, const std::vector<std::size_t>& shape, std::size_t axis,
                           int sign) {
    const std::size_t n = shape[axis];
    if (n <= 1) return;
    const auto strides = row_major_strides(shape);
    const std::size_t stride = strides[axis];
    const std::size_t total = shape_product(shape);
    const std::size_t lines = total / n;

    std::vector<cplx> line(n);
    for (std::size_t l = 0; l < lines; ++l) {
        // decompose line index over the remaining axes
        std::size_t rem = l, base = 0;
        for (std::size_t j = shape.size(); j-- > 0;) {
            if (j == axis) continue;
            base += (rem % shape[j]) * strides[j];
            rem /= shape[j];
        }
        for (std::size_t t = 0; t < n; ++t) line[t] = data[base + t * stride];
        fft_pow2(line, sign);
        for (std::size_t t = 0; t < n; ++t) data[base + t * stride] = line[t];
    }
}

inline void fft_nd(std::vector<cplx>& data, const std::vector<std::size_t>& shape, int sign) {
    for (std::size_t axis = 0; axis < shape.size(); ++axis) fft_along_axis(data, shape, axis, sign);
}

}  // namespace torus::detail
