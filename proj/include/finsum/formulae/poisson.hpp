#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "finsum/arith/divisor.hpp"
#include "finsum/arith/periodic.hpp"
#include "finsum/formulae/direct.hpp"
#include "finsum/formulae/em.hpp"
#include "finsum/formulae/guards.hpp"
#include "finsum/formulae/support.hpp"
#include "finsum/formulae/types.hpp"
#include "finsum/smoothfn/smooth_function.hpp"

namespace finsum::formulae {

namespace detail {

inline std::complex<double> poisson_main(std::complex<double> value) {
    return mutation_hooks().drop_poisson_n0 ? std::complex<double>(0.0, 0.0) : value;
}

}  // namespace detail

/// Dual-side expansion of the chi-weighted sum as a frequency series: the
/// full sum equals (1/k) sum over n of tau(chi,n) times the integral of
/// f(u) e^(-2 pi i n u / k), truncated symmetrically at |n| <= N with the
/// +-n pair combined.
inline IdentityResult poisson_chi(const PeriodicSequence& chi, const SmoothFunction& f, double a,
                                  double b, const TruncationParams& params) {
    detail::require_interval(a, b, "poisson_chi");
    params.validate(f.max_order());
    detail::require_good(f, a, b);
    const int k = chi.period();
    const double kd = static_cast<double>(k);
    for (int l = 1; l <= k; ++l) {
        detail::require_kernel_arg((a - l) / kd, "poisson_chi");
        detail::require_kernel_arg((b - l) / kd, "poisson_chi");
    }

    IdentityResult out;
    out.lhs = direct_sum(Weight::kChi, &chi, f, a, b);

    const kernels::FourierBatch batch = detail::batch_with_retry(
        [&f](double u) { return f.value(u); }, a, b, kd, params.N, params.quad_tol,
        out.diagnostics);
    const std::complex<double> main =
        detail::poisson_main(detail::hooked_tau(chi, 0) / kd * batch.coeff[0]);
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n) {
        const std::complex<double> I = batch.coeff[static_cast<std::size_t>(n)];
        series.add_pair(
            (detail::hooked_tau(chi, n) * std::conj(I) + detail::hooked_tau(chi, -n) * I) / kd);
    }
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("n-series", series.sum.sum);
    out.rhs = main + series.sum.sum;
    return out;
}

/// Unit-weight frequency expansion, assembled without the character
/// machinery as the reference for the k = 1 reduction.
inline IdentityResult classical_poisson(const SmoothFunction& f, double a, double b,
                                        const TruncationParams& params) {
    detail::require_interval(a, b, "classical_poisson");
    params.validate(f.max_order());
    detail::require_good(f, a, b);
    detail::require_kernel_arg(a, "classical_poisson");
    detail::require_kernel_arg(b, "classical_poisson");

    IdentityResult out;
    out.lhs = direct_sum(Weight::kUnit, nullptr, f, a, b);

    const kernels::FourierBatch batch = detail::batch_with_retry(
        [&f](double u) { return f.value(u); }, a, b, 1.0, params.N, params.quad_tol,
        out.diagnostics);
    const std::complex<double> main = detail::poisson_main(batch.coeff[0]);
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n) {
        const std::complex<double> I = batch.coeff[static_cast<std::size_t>(n)];
        series.add_pair(std::conj(I) + I);
    }
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("n-series", series.sum.sum);
    out.rhs = main + series.sum.sum;
    return out;
}

/// Divisor-weighted frequency expansion: one dilated ladder per divisor
/// m <= floor(b) at frequencies n/m, with the n = 0 slice summing to
/// H(floor(b)) times the plain integral.
inline IdentityResult poisson_divisor(const SmoothFunction& f, double a, double b,
                                      const TruncationParams& params) {
    detail::require_interval(a, b, "poisson_divisor");
    detail::require_nonnegative_start(a);
    params.validate(f.max_order());
    detail::require_good(f, a, b);
    const std::int64_t M = static_cast<std::int64_t>(std::floor(b));
    if (M > kMaxSieveLimit) throw CapacityError("poisson_divisor: b exceeds sieve cap");
    for (std::int64_t m = 1; m <= M; ++m) {
        detail::require_kernel_arg(a / static_cast<double>(m), "poisson_divisor");
        detail::require_kernel_arg(b / static_cast<double>(m), "poisson_divisor");
    }
    if (M * static_cast<std::int64_t>(params.N + 1) > detail::kMaxSeriesCoeffs)
        throw CapacityError("poisson_divisor: coefficient budget exceeded");

    IdentityResult out;
    out.lhs = direct_sum(Weight::kDivisor, nullptr, f, a, b);

    const std::complex<double> main = detail::poisson_main(
        harmonic_number(M) * detail::integral_of(f, a, b, params.quad_tol, out.diagnostics));

    std::vector<std::complex<double>> inner(static_cast<std::size_t>(params.N) + 1, {0.0, 0.0});
    for (std::int64_t m = 1; m <= M; ++m) {
        const double md = static_cast<double>(m);
        const kernels::FourierBatch batch = detail::batch_with_retry(
            [&f](double u) { return f.value(u); }, a, b, md, params.N, params.quad_tol,
            out.diagnostics);
        for (int n = 1; n <= params.N; ++n)
            inner[static_cast<std::size_t>(n)] += batch.coeff[static_cast<std::size_t>(n)] / md;
    }
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n) {
        const std::complex<double> I = inner[static_cast<std::size_t>(n)];
        series.add_pair(std::conj(I) + I);
    }
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("n-series", series.sum.sum);
    out.rhs = main + series.sum.sum;
    return out;
}

/// Joint weight d(n) chi(n): divisor ladders at frequencies n/(m k) coupled
/// through the shifted character transform, with the n = 0 slice split off
/// as the main term.
inline IdentityResult poisson_divisor_chi(const PeriodicSequence& chi, const SmoothFunction& f,
                                          double a, double b, const TruncationParams& params) {
    detail::require_interval(a, b, "poisson_divisor_chi");
    detail::require_nonnegative_start(a);
    params.validate(f.max_order());
    detail::require_good(f, a, b);
    const int k = chi.period();
    const double kd = static_cast<double>(k);
    const std::int64_t M = static_cast<std::int64_t>(std::floor(b));
    if (M > kMaxSieveLimit) throw CapacityError("poisson_divisor_chi: b exceeds sieve cap");
    for (std::int64_t m = 1; m <= M; ++m)
        for (int r2 = 1; r2 <= k; ++r2) {
            const double md = static_cast<double>(m);
            detail::require_kernel_arg((a / md - r2) / kd, "poisson_divisor_chi");
            detail::require_kernel_arg((b / md - r2) / kd, "poisson_divisor_chi");
        }
    if (M * static_cast<std::int64_t>(params.N + 1) > detail::kMaxSeriesCoeffs)
        throw CapacityError("poisson_divisor_chi: coefficient budget exceeded");

    IdentityResult out;
    out.lhs = direct_sum(Weight::kDivisorChi, &chi, f, a, b);

    const auto tau_table = detail::shifted_tau_table(chi, M);
    std::complex<double> main_coeff(0.0, 0.0);
    for (std::int64_t m = 1; m <= M; ++m)
        main_coeff += detail::shifted_tau(tau_table, m, 0, k) / static_cast<double>(m);
    const std::complex<double> main = detail::poisson_main(
        main_coeff / kd * detail::integral_of(f, a, b, params.quad_tol, out.diagnostics));

    std::vector<std::complex<double>> fwd(static_cast<std::size_t>(params.N) + 1, {0.0, 0.0});
    std::vector<std::complex<double>> rev(static_cast<std::size_t>(params.N) + 1, {0.0, 0.0});
    for (std::int64_t m = 1; m <= M; ++m) {
        const double md = static_cast<double>(m);
        const kernels::FourierBatch batch = detail::batch_with_retry(
            [&f](double u) { return f.value(u); }, a, b, md * kd, params.N, params.quad_tol,
            out.diagnostics);
        for (int n = 1; n <= params.N; ++n) {
            const std::complex<double> I = batch.coeff[static_cast<std::size_t>(n)];
            fwd[static_cast<std::size_t>(n)] += detail::shifted_tau(tau_table, m, -n, k) * I / md;
            rev[static_cast<std::size_t>(n)] +=
                detail::shifted_tau(tau_table, m, n, k) * std::conj(I) / md;
        }
    }
    detail::SeriesAccumulator series;
    for (int n = 1; n <= params.N; ++n)
        series.add_pair(
            (fwd[static_cast<std::size_t>(n)] + rev[static_cast<std::size_t>(n)]) / kd);
    out.diagnostics.tail_estimate = std::abs(series.last_pair);

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("n-series", series.sum.sum);
    out.rhs = main + series.sum.sum;
    return out;
}

}  // namespace finsum::formulae

namespace finsum {
using formulae::classical_poisson;
using formulae::poisson_chi;
using formulae::poisson_divisor;
using formulae::poisson_divisor_chi;
}  // namespace finsum
