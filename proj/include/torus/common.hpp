// Shared aliases, error types and small utilities used across the library.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace torus {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Requested sample resolution cannot represent the polynomial without aliasing.
class resolution_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A grid allocation would exceed the configured memory budget.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_mem_budget = std::size_t{2} << 30;  // 2 GiB

/// Smallest power of two >= n (n >= 1).
inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

inline int log2_exact(std::size_t n) {
    int l = 0;
    while ((std::size_t{1} << l) < n) ++l;
    if ((std::size_t{1} << l) != n) throw std::invalid_argument("log2_exact: not a power of two");
    return l;
}

/// Throws budget_error if a complex grid with `cells` entries would exceed `budget` bytes.
inline void check_grid_budget(std::size_t cells, std::size_t budget = default_mem_budget) {
    if (cells > budget / sizeof(cplx))
        throw budget_error("grid of " + std::to_string(cells) + " complex cells exceeds memory budget of " +
                           std::to_string(budget) + " bytes");
}

/// Row-major strides for a shape vector.
inline std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& shape) {
    std::vector<std::size_t> st(shape.size());
    std::size_t acc = 1;
    for (std::size_t j = shape.size(); j-- > 0;) {
        st[j] = acc;
        acc *= shape[j];
    }
    return st;
}

inline std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t s : shape) n *= s;
    return n;
}

}  // namespace torus
