#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace diskbond::detail {

/// In-place radix-2 DIT transform, X(j) = sum_k x(k) exp(-2*pi*i*j*k/m).
/// m must be a power of two. Twiddles come from a direct-evaluation table so
/// rounding stays O(log m) instead of the O(m) of a recurrence.
inline void fft(std::vector<std::complex<double>>& x) {
    const std::size_t m = x.size();
    if (m == 0 || (m & (m - 1)) != 0) {
        throw std::invalid_argument("fft: size must be a power of two");
    }
    if (m == 1) {
        return;
    }
    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(x[i], x[j]);
        }
    }
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<std::complex<double>> tw(m / 2);
    for (std::size_t k = 0; k < m / 2; ++k) {
        const double ang = -two_pi * static_cast<double>(k) /
                           static_cast<double>(m);
        tw[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t stride = m / len;
        for (std::size_t i = 0; i < m; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto even = x[i + k];
                const auto odd = x[i + k + len / 2] * tw[k * stride];
                x[i + k] = even + odd;
                x[i + k + len / 2] = even - odd;
            }
        }
    }
}

inline std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

}  // namespace diskbond::detail
