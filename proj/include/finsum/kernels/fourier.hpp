#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "finsum/error.hpp"
#include "finsum/kernels/fft.hpp"
#include "finsum/kernels/quadrature.hpp"
#include "finsum/parallel.hpp"

namespace finsum::kernels {

/// Fourier-type integrals of one real integrand against a ladder of
/// harmonic frequencies: coeff[n] = integral over [a,b] of
/// g(u) e^(+2 pi i n u / D) du for n = 0..N. For real g the value at -n is
/// the conjugate of coeff[n].
struct FourierBatch {
    std::vector<std::complex<double>> coeff;
    std::vector<double> err;  // fine-vs-halved-resolution delta per n
    std::int64_t panels_used = 0;
};

inline constexpr std::int64_t kMaxBatchPanels = std::int64_t{1} << 23;

namespace detail {

// Single uniform-panel pass. Panel width h = D/Q with Q a power of two, so
// along the panel index p the phase factor is e^(2 pi i n p / Q): folding
// the per-node values mod Q turns the sum over panels into one length-Q DFT
// per Gauss node. The leftover sliver [a + P h, b] (width < h) is added
// directly per n.
inline void fourier_pass(const std::function<double(double)>& g, double a, double b, double D,
                         int N, std::int64_t Q, std::vector<std::complex<double>>& out,
                         std::int64_t& panels) {
    const double two_pi = 6.283185307179586476925286766559;
    const GaussRule& rule = gauss_rule(6);
    const int M = 6;
    const double h = D / static_cast<double>(Q);
    const double len = b - a;
    std::int64_t P = static_cast<std::int64_t>(std::floor(len / h + 1e-9));
    if (P * h > len) --P;
    double tail_lo = a + static_cast<double>(P) * h;
    bool has_tail = (b - tail_lo) > 1e-12 * std::max(1.0, std::abs(b));
    panels += P + (has_tail ? 1 : 0);

    // Gauss abscissae mapped to [0,1].
    double xi[6], w[6];
    for (int j = 0; j < M; ++j) {
        xi[j] = 0.5 * (1.0 + rule.node[j]);
        w[j] = 0.5 * rule.weight[j];
    }

    std::vector<std::vector<std::complex<double>>> bins(
        M, std::vector<std::complex<double>>(Q, {0.0, 0.0}));
    // Evaluate in fixed-size chunks; workers fill disjoint slots of the
    // chunk buffer and the fold stays sequential, so the result does not
    // depend on the thread count.
    const std::int64_t chunk = 1 << 16;
    std::vector<double> vals(static_cast<std::size_t>(std::min(P, chunk)) * M);
    for (std::int64_t base = 0; base < P; base += chunk) {
        std::int64_t count = std::min(chunk, P - base);
        std::int64_t blocks = (count + 255) / 256;
        parallel::for_each_index(static_cast<std::size_t>(blocks), [&](std::size_t blk) {
            std::int64_t lo = base + static_cast<std::int64_t>(blk) * 256;
            std::int64_t hi = std::min(lo + 256, base + count);
            for (std::int64_t p = lo; p < hi; ++p) {
                double panel_lo = a + static_cast<double>(p) * h;
                for (int j = 0; j < M; ++j)
                    vals[static_cast<std::size_t>(p - base) * M + j] = g(panel_lo + xi[j] * h);
            }
        });
        for (std::int64_t p = base; p < base + count; ++p) {
            std::size_t slot = static_cast<std::size_t>(p & (Q - 1));
            for (int j = 0; j < M; ++j)
                bins[j][slot] += vals[static_cast<std::size_t>(p - base) * M + j];
        }
    }
    for (int j = 0; j < M; ++j) fft_pow2(bins[j]);

    const double inv_D = 1.0 / D;
    for (int n = 0; n <= N; ++n) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < M; ++j) {
            double ang = two_pi * static_cast<double>(n) * xi[j] / static_cast<double>(Q);
            acc += (w[j] * h) * std::complex<double>(std::cos(ang), std::sin(ang)) *
                   bins[j][static_cast<std::size_t>(n) & (Q - 1)];
        }
        double base_ang = two_pi * std::fmod(static_cast<double>(n) * (a * inv_D), 1.0);
        out[n] = acc * std::complex<double>(std::cos(base_ang), std::sin(base_ang));
    }

    if (has_tail) {
        double tw_vals[6], tx[6];
        double tail_h = b - tail_lo;
        for (int j = 0; j < M; ++j) {
            tx[j] = tail_lo + xi[j] * tail_h;
            tw_vals[j] = w[j] * tail_h * g(tx[j]);
        }
        for (int n = 0; n <= N; ++n) {
            std::complex<double> acc(0.0, 0.0);
            for (int j = 0; j < M; ++j) {
                double ang = two_pi * std::fmod(static_cast<double>(n) * tx[j] * inv_D, 1.0);
                acc += tw_vals[j] * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            out[n] += acc;
        }
    }
}

}  // namespace detail

/// Computes coeff[n] = integral of g(u) e^(2 pi i n u / D) for n = 0..N with
/// at least 4*oversample panels per cycle of the fastest factor, plus enough
/// to resolve g itself; err[] compares against a half-resolution pass.
inline FourierBatch fourier_coefficients(const std::function<double(double)>& g, double a,
                                         double b, double D, int N, int oversample = 1) {
    if (!(b > a)) throw Error("fourier_coefficients: requires b > a");
    if (!(D > 0.0)) throw Error("fourier_coefficients: requires D > 0");
    if (N < 0) throw Error("fourier_coefficients: requires N >= 0");
    if (oversample < 1) oversample = 1;

    const double len = b - a;
    std::int64_t Q = std::bit_ceil(static_cast<std::uint64_t>(std::max(4 * (N + 1), 8)));
    while (len * static_cast<double>(Q) / D < 64.0) Q <<= 1;
    Q *= std::bit_ceil(static_cast<std::uint64_t>(oversample));
    if (len * static_cast<double>(Q) / D > static_cast<double>(kMaxBatchPanels))
        throw CapacityError("fourier_coefficients: panel budget exceeded");

    FourierBatch batch;
    batch.coeff.assign(N + 1, {0.0, 0.0});
    batch.err.assign(N + 1, 0.0);
    std::vector<std::complex<double>> coarse(N + 1, {0.0, 0.0});
    detail::fourier_pass(g, a, b, D, N, Q, batch.coeff, batch.panels_used);
    detail::fourier_pass(g, a, b, D, N, Q / 2, coarse, batch.panels_used);
    for (int n = 0; n <= N; ++n) batch.err[n] = std::abs(batch.coeff[n] - coarse[n]);
    return batch;
}

}  // namespace finsum::kernels

namespace finsum {
using kernels::fourier_coefficients;
using kernels::FourierBatch;
using kernels::kMaxBatchPanels;
}  // namespace finsum
