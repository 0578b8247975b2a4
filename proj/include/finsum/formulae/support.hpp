#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "finsum/formulae/hooks.hpp"
#include "finsum/formulae/types.hpp"
#include "finsum/kernels/fourier.hpp"
#include "finsum/kernels/quadrature.hpp"
#include "finsum/smoothfn/smooth_function.hpp"

namespace finsum::formulae::detail {

inline void absorb(Diagnostics& diag, const QuadratureResult& q) {
    diag.quad_error += q.error_estimate;
    diag.quadrature_converged = diag.quadrature_converged && q.converged;
    diag.panels += q.panels_used;
}

inline std::complex<double> integral_of(const SmoothFunction& f, double a, double b, double tol,
                                        Diagnostics& diag) {
    const QuadratureResult q = integrate(
        [&f](double u) { return std::complex<double>(f.value(u), 0.0); }, a, b, tol);
    absorb(diag, q);
    return q.value;
}

/// Integral over [a,b] of psi(((u/m) - r)/k) f'(u) du, split at the kernel
/// kinks u = m (r + j k).
inline std::complex<double> weighted_psi_integral(const SmoothFunction& f, double a, double b,
                                                  std::int64_t m, std::int64_t r, std::int64_t k,
                                                  double tol, Diagnostics& diag) {
    const double mk = static_cast<double>(m) * static_cast<double>(k);
    std::vector<double> breaks;
    const double j_lo = std::ceil((a / static_cast<double>(m) - static_cast<double>(r)) /
                                  static_cast<double>(k)) -
                        1.0;
    for (double j = j_lo;; j += 1.0) {
        const double u = static_cast<double>(m) * static_cast<double>(r) + j * mk;
        if (u >= b) break;
        if (u > a) breaks.push_back(u);
    }
    const auto g = [&f, m, r, k](double u) {
        const double arg =
            (u / static_cast<double>(m) - static_cast<double>(r)) / static_cast<double>(k);
        return std::complex<double>(hooked_psi(0, arg) * f.derivative_value(u, 1), 0.0);
    };
    const QuadratureResult q = integrate_piecewise(g, a, b, breaks, tol);
    absorb(diag, q);
    return q.value;
}

/// Fourier coefficient ladder with oversampling retries: the err[] channel
/// of a pass is the fine-vs-half-resolution delta, i.e. roughly the error
/// of the HALVED pass; the fine pass itself sits ~2^12 below that for the
/// Gauss-6 panels used. A pass is accepted when that conservative delta is
/// already within tol.
inline kernels::FourierBatch batch_with_retry(const std::function<double(double)>& g, double a,
                                              double b, double D, int N, double tol,
                                              Diagnostics& diag) {
    kernels::FourierBatch batch;
    for (int oversample : {1, 2, 4}) {
        batch = kernels::fourier_coefficients(g, a, b, D, N, oversample);
        diag.panels += batch.panels_used;
        const double worst = *std::max_element(batch.err.begin(), batch.err.end());
        if (worst <= tol || oversample == 4) {
            diag.quad_error += worst / 4096.0;
            if (worst > tol) diag.quadrature_converged = false;
            break;
        }
    }
    return batch;
}

/// Exact unit phase of i^(-p) times (2 pi n)^(-p): equals (2 pi i n)^(-p)
/// for integer n >= 1 without going through complex pow.
inline std::complex<double> inv_two_pi_i_n_pow(std::int64_t n, int p) {
    const double two_pi = 6.283185307179586476925286766559;
    const double mag = std::pow(two_pi * static_cast<double>(n), -p);
    switch (((p % 4) + 4) % 4) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, -mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, mag};
    }
}

inline double parity_sign(int p) { return (p % 2 == 0) ? 1.0 : -1.0; }

}  // namespace finsum::formulae::detail
