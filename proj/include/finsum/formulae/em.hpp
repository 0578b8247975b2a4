#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "finsum/arith/divisor.hpp"
#include "finsum/arith/periodic.hpp"
#include "finsum/formulae/direct.hpp"
#include "finsum/formulae/guards.hpp"
#include "finsum/formulae/support.hpp"
#include "finsum/formulae/types.hpp"
#include "finsum/smoothfn/smooth_function.hpp"

namespace finsum::formulae {

namespace detail {

/// Caps the number of stored series coefficients across the divisor loop.
inline constexpr std::int64_t kMaxSeriesCoeffs = std::int64_t{1} << 24;

struct SeriesAccumulator {
    kernels::detail::KahanSum sum;
    std::complex<double> last_pair{0.0, 0.0};
    void add_pair(std::complex<double> pair) {
        sum.add(pair);
        last_pair = pair;
    }
};

}  // namespace detail

/// Depth-R endpoint expansion of the chi-weighted sum: main term
/// tau(chi,0)/k times the integral, endpoint kernel terms evaluated in
/// closed form through psi_r((x-l)/k), and the truncated remainder series
/// over 1 <= |n| <= N against the (R+1)th derivative.
inline IdentityResult euler_maclaurin_chi(const PeriodicSequence& chi, const SmoothFunction& f,
                                          double a, double b, const TruncationParams& params) {
    detail::require_interval(a, b, "euler_maclaurin_chi");
    params.validate(f.max_order());
    const int k = chi.period();
    const double kd = static_cast<double>(k);
    for (int l = 1; l <= k; ++l) {
        detail::require_kernel_arg((a - l) / kd, "euler_maclaurin_chi");
        detail::require_kernel_arg((b - l) / kd, "euler_maclaurin_chi");
    }

    IdentityResult out;
    out.lhs = direct_sum(Weight::kChi, &chi, f, a, b);

    const std::complex<double> main =
        detail::hooked_tau(chi, 0) / kd * detail::integral_of(f, a, b, params.quad_tol, out.diagnostics);

    const std::vector<double> db = f.derivatives_at(b, params.R);
    const std::vector<double> da = f.derivatives_at(a, params.R);
    std::complex<double> boundary(0.0, 0.0);
    double k_pow = 1.0;
    for (int r = 0; r <= params.R; ++r) {
        std::complex<double> endpoint(0.0, 0.0);
        for (int l = 1; l <= k; ++l)
            endpoint += chi.value(l) *
                        (detail::hooked_psi(r, (b - l) / kd) * db[static_cast<std::size_t>(r)] -
                         detail::hooked_psi(r, (a - l) / kd) * da[static_cast<std::size_t>(r)]);
        boundary += detail::parity_sign(r + 1) * k_pow * endpoint;
        k_pow *= kd;
    }

    const int depth = params.R + 1;
    const double sign = detail::parity_sign(depth);
    const double k_R = std::pow(kd, params.R);
    const kernels::FourierBatch batch = detail::batch_with_retry(
        [&f, depth](double u) { return f.derivative_value(u, depth); }, a, b, kd, params.N,
        params.quad_tol, out.diagnostics);
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n) {
        const std::complex<double> J = batch.coeff[static_cast<std::size_t>(n)];
        series.add_pair(sign * k_R * detail::inv_two_pi_i_n_pow(n, depth) *
                        (detail::hooked_tau(chi, -n) * J +
                         sign * detail::hooked_tau(chi, n) * std::conj(J)));
    }
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("boundary-terms", boundary);
    out.terms.emplace_back("remainder-series", series.sum.sum);
    out.rhs = main + boundary + series.sum.sum;
    return out;
}

/// Same expansion without the character machinery (k = 1, unit weight);
/// kept as an independent assembly path so the k = 1 reduction of the
/// evaluator above can be checked against it.
inline IdentityResult classical_euler_maclaurin(const SmoothFunction& f, double a, double b,
                                                const TruncationParams& params) {
    detail::require_interval(a, b, "classical_euler_maclaurin");
    params.validate(f.max_order());
    detail::require_kernel_arg(a, "classical_euler_maclaurin");
    detail::require_kernel_arg(b, "classical_euler_maclaurin");

    IdentityResult out;
    out.lhs = direct_sum(Weight::kUnit, nullptr, f, a, b);

    const std::complex<double> main = detail::integral_of(f, a, b, params.quad_tol, out.diagnostics);

    const std::vector<double> db = f.derivatives_at(b, params.R);
    const std::vector<double> da = f.derivatives_at(a, params.R);
    std::complex<double> boundary(0.0, 0.0);
    for (int r = 0; r <= params.R; ++r)
        boundary += detail::parity_sign(r + 1) *
                    (detail::hooked_psi(r, b) * db[static_cast<std::size_t>(r)] -
                     detail::hooked_psi(r, a) * da[static_cast<std::size_t>(r)]);

    const int depth = params.R + 1;
    const double sign = detail::parity_sign(depth);
    const kernels::FourierBatch batch = detail::batch_with_retry(
        [&f, depth](double u) { return f.derivative_value(u, depth); }, a, b, 1.0, params.N,
        params.quad_tol, out.diagnostics);
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n) {
        const std::complex<double> J = batch.coeff[static_cast<std::size_t>(n)];
        series.add_pair(sign * detail::inv_two_pi_i_n_pow(n, depth) * (J + sign * std::conj(J)));
    }
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("boundary-terms", boundary);
    out.terms.emplace_back("remainder-series", series.sum.sum);
    out.rhs = main + boundary + series.sum.sum;
    return out;
}

/// Divisor-weighted expansion: the lattice-point decomposition runs the
/// unit-weight expansion once per divisor m <= floor(b), dilated by m, so
/// the kernel arguments become x/m and the series frequencies n/m.
inline IdentityResult euler_maclaurin_divisor(const SmoothFunction& f, double a, double b,
                                              const TruncationParams& params) {
    detail::require_interval(a, b, "euler_maclaurin_divisor");
    detail::require_nonnegative_start(a);
    params.validate(f.max_order());
    const std::int64_t M = static_cast<std::int64_t>(std::floor(b));
    if (M > kMaxSieveLimit) throw CapacityError("euler_maclaurin_divisor: b exceeds sieve cap");
    for (std::int64_t m = 1; m <= M; ++m) {
        detail::require_kernel_arg(a / static_cast<double>(m), "euler_maclaurin_divisor");
        detail::require_kernel_arg(b / static_cast<double>(m), "euler_maclaurin_divisor");
    }
    if (M * static_cast<std::int64_t>(params.N + 1) > detail::kMaxSeriesCoeffs)
        throw CapacityError("euler_maclaurin_divisor: coefficient budget exceeded");

    IdentityResult out;
    out.lhs = direct_sum(Weight::kDivisor, nullptr, f, a, b);

    const std::complex<double> main =
        harmonic_number(M) * detail::integral_of(f, a, b, params.quad_tol, out.diagnostics);

    const std::vector<double> db = f.derivatives_at(b, params.R);
    const std::vector<double> da = f.derivatives_at(a, params.R);
    std::complex<double> boundary(0.0, 0.0);
    for (int r = 0; r <= params.R; ++r) {
        double endpoint = 0.0;
        for (std::int64_t m = 1; m <= M; ++m) {
            const double md = static_cast<double>(m);
            endpoint += std::pow(md, r) *
                        (detail::hooked_psi(r, b / md) * db[static_cast<std::size_t>(r)] -
                         detail::hooked_psi(r, a / md) * da[static_cast<std::size_t>(r)]);
        }
        boundary += detail::parity_sign(r + 1) * endpoint;
    }

    const int depth = params.R + 1;
    const double sign = detail::parity_sign(depth);
    std::vector<std::complex<double>> inner(static_cast<std::size_t>(params.N) + 1, {0.0, 0.0});
    for (std::int64_t m = 1; m <= M; ++m) {
        const double md = static_cast<double>(m);
        const double m_R = std::pow(md, params.R);
        const kernels::FourierBatch batch = detail::batch_with_retry(
            [&f, depth](double u) { return f.derivative_value(u, depth); }, a, b, md, params.N,
            params.quad_tol, out.diagnostics);
        for (int n = 1; n <= params.N; ++n)
            inner[static_cast<std::size_t>(n)] += m_R * batch.coeff[static_cast<std::size_t>(n)];
    }
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n) {
        const std::complex<double> J = inner[static_cast<std::size_t>(n)];
        series.add_pair(sign * detail::inv_two_pi_i_n_pow(n, depth) * (J + sign * std::conj(J)));
    }
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("boundary-terms", boundary);
    out.terms.emplace_back("remainder-series", series.sum.sum);
    out.rhs = main + boundary + series.sum.sum;
    return out;
}

namespace detail {

/// tau-like table for the divisor/chi coupling: row m holds
/// sum over r2 = 1..k of chi(m r2) e^(2 pi i t r2 / k) for t = 0..k-1.
inline std::vector<std::vector<std::complex<double>>> shifted_tau_table(
    const PeriodicSequence& chi, std::int64_t M) {
    const int k = chi.period();
    std::vector<std::vector<std::complex<double>>> table(static_cast<std::size_t>(M) + 1);
    for (std::int64_t m = 1; m <= M; ++m) {
        auto& row = table[static_cast<std::size_t>(m)];
        row.assign(static_cast<std::size_t>(k), {0.0, 0.0});
        for (int t = 0; t < k; ++t) {
            std::complex<double> s(0.0, 0.0);
            for (int r2 = 1; r2 <= k; ++r2) {
                const int phase = static_cast<int>((static_cast<std::int64_t>(t) * r2) % k);
                const double ang =
                    2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(k);
                s += chi.at(m * r2) * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            row[static_cast<std::size_t>(t)] = s;
        }
    }
    return table;
}

inline std::complex<double> shifted_tau(const std::vector<std::vector<std::complex<double>>>& table,
                                        std::int64_t m, std::int64_t t, int k) {
    std::int64_t idx = t % k;
    if (idx < 0) idx += k;
    return hook_tau_value(table[static_cast<std::size_t>(m)][static_cast<std::size_t>(idx)]);
}

}  // namespace detail

/// Joint weight d(n) chi(n): the divisor decomposition of the expansion
/// above, with each dilated copy carrying the character through the residue
/// of m r2 mod k; kernel arguments ((x/m) - r2)/k, frequencies n/(m k).
inline IdentityResult euler_maclaurin_divisor_chi(const PeriodicSequence& chi,
                                                  const SmoothFunction& f, double a, double b,
                                                  const TruncationParams& params) {
    detail::require_interval(a, b, "euler_maclaurin_divisor_chi");
    detail::require_nonnegative_start(a);
    params.validate(f.max_order());
    const int k = chi.period();
    const double kd = static_cast<double>(k);
    const std::int64_t M = static_cast<std::int64_t>(std::floor(b));
    if (M > kMaxSieveLimit)
        throw CapacityError("euler_maclaurin_divisor_chi: b exceeds sieve cap");
    for (std::int64_t m = 1; m <= M; ++m)
        for (int r2 = 1; r2 <= k; ++r2) {
            const double md = static_cast<double>(m);
            detail::require_kernel_arg((a / md - r2) / kd, "euler_maclaurin_divisor_chi");
            detail::require_kernel_arg((b / md - r2) / kd, "euler_maclaurin_divisor_chi");
        }
    if (M * static_cast<std::int64_t>(params.N + 1) > detail::kMaxSeriesCoeffs)
        throw CapacityError("euler_maclaurin_divisor_chi: coefficient budget exceeded");

    IdentityResult out;
    out.lhs = direct_sum(Weight::kDivisorChi, &chi, f, a, b);

    const auto tau_table = detail::shifted_tau_table(chi, M);
    std::complex<double> main_coeff(0.0, 0.0);
    for (std::int64_t m = 1; m <= M; ++m)
        main_coeff += detail::shifted_tau(tau_table, m, 0, k) / static_cast<double>(m);
    const std::complex<double> main =
        main_coeff / kd * detail::integral_of(f, a, b, params.quad_tol, out.diagnostics);

    const std::vector<double> db = f.derivatives_at(b, params.R);
    const std::vector<double> da = f.derivatives_at(a, params.R);
    std::complex<double> boundary(0.0, 0.0);
    for (int r = 0; r <= params.R; ++r) {
        std::complex<double> endpoint(0.0, 0.0);
        for (std::int64_t m = 1; m <= M; ++m) {
            const double md = static_cast<double>(m);
            const double scale = std::pow(md * kd, r);
            for (int r2 = 1; r2 <= k; ++r2)
                endpoint += scale * chi.at(m * r2) *
                            (detail::hooked_psi(r, (b / md - r2) / kd) *
                                 db[static_cast<std::size_t>(r)] -
                             detail::hooked_psi(r, (a / md - r2) / kd) *
                                 da[static_cast<std::size_t>(r)]);
        }
        boundary += detail::parity_sign(r + 1) * endpoint;
    }

    const int depth = params.R + 1;
    const double sign = detail::parity_sign(depth);
    const double k_R = std::pow(kd, params.R);
    std::vector<std::complex<double>> fwd(static_cast<std::size_t>(params.N) + 1, {0.0, 0.0});
    std::vector<std::complex<double>> rev(static_cast<std::size_t>(params.N) + 1, {0.0, 0.0});
    for (std::int64_t m = 1; m <= M; ++m) {
        const double md = static_cast<double>(m);
        const double m_R = std::pow(md, params.R);
        const kernels::FourierBatch batch = detail::batch_with_retry(
            [&f, depth](double u) { return f.derivative_value(u, depth); }, a, b, md * kd,
            params.N, params.quad_tol, out.diagnostics);
        for (int n = 1; n <= params.N; ++n) {
            const std::complex<double> J = batch.coeff[static_cast<std::size_t>(n)];
            fwd[static_cast<std::size_t>(n)] += m_R * detail::shifted_tau(tau_table, m, -n, k) * J;
            rev[static_cast<std::size_t>(n)] +=
                m_R * detail::shifted_tau(tau_table, m, n, k) * std::conj(J);
        }
    }
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n)
        series.add_pair(sign * k_R * detail::inv_two_pi_i_n_pow(n, depth) *
                        (fwd[static_cast<std::size_t>(n)] +
                         sign * rev[static_cast<std::size_t>(n)]));
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("boundary-terms", boundary);
    out.terms.emplace_back("remainder-series", series.sum.sum);
    out.rhs = main + boundary + series.sum.sum;
    return out;
}

}  // namespace finsum::formulae

namespace finsum {
using formulae::classical_euler_maclaurin;
using formulae::euler_maclaurin_chi;
using formulae::euler_maclaurin_divisor;
using formulae::euler_maclaurin_divisor_chi;
}  // namespace finsum
