#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

#include "finsum/error.hpp"

namespace finsum::kernels {

namespace detail {

// Twiddle factors e^(2 pi i j / n) for one power-of-two size, built once
// from exact per-index angles (no recurrence drift) and shared read-only.
inline const std::vector<std::complex<double>>& fft_twiddles(std::size_t n) {
    static std::mutex mu;
    static std::vector<std::vector<std::complex<double>>> cache(32);
    int log2n = std::countr_zero(n);
    std::lock_guard<std::mutex> lock(mu);
    auto& tw = cache[log2n];
    if (tw.empty()) {
        tw.resize(n / 2);
        const double two_pi = 6.283185307179586476925286766559;
        for (std::size_t j = 0; j < n / 2; ++j) {
            double ang = two_pi * static_cast<double>(j) / static_cast<double>(n);
            tw[j] = {std::cos(ang), std::sin(ang)};
        }
    }
    return tw;
}

}  // namespace detail

/// In-place radix-2 FFT with kernel e^(+2 pi i j k / n); conjugate the input
/// and output to get the opposite sign. Size must be a power of two >= 2.
inline void fft_pow2(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n < 2 || (n & (n - 1)) != 0) throw Error("fft_pow2: size must be a power of two >= 2");
    const auto& tw = detail::fft_twiddles(n);
    for (std::size_t i = 1, j = 0; i < n; ++i) {  // bit reversal
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = x[i + j];
                std::complex<double> v = x[i + j + len / 2] * tw[j * stride];
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
            }
        }
    }
}

}  // namespace finsum::kernels

namespace finsum {
using kernels::fft_pow2;
}  // namespace finsum
