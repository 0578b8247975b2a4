#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "finsum/arith/divisor.hpp"
#include "finsum/arith/periodic.hpp"
#include "finsum/error.hpp"
#include "finsum/formulae/guards.hpp"
#include "finsum/smoothfn/smooth_function.hpp"

namespace finsum::formulae {

enum class Weight { kUnit, kChi, kDivisor, kDivisorChi };

/// Direct enumeration of sum over integers n in (a, b] of w(n) f(n), in
/// ascending n. This is the reference side of every identity; the evaluators
/// call it themselves so lhs values are bit-identical across entry points.
inline std::complex<double> direct_sum(Weight weight, const PeriodicSequence* chi,
                                       const SmoothFunction& f, double a, double b) {
    detail::require_interval(a, b, "direct_sum");
    detail::require_no_endpoint_tie(a, b);
    const bool wants_chi = weight == Weight::kChi || weight == Weight::kDivisorChi;
    const bool wants_divisor = weight == Weight::kDivisor || weight == Weight::kDivisorChi;
    if (wants_chi && chi == nullptr) throw Error("direct_sum: weight needs a periodic sequence");
    if (wants_divisor) detail::require_nonnegative_start(a);

    const std::int64_t lo = static_cast<std::int64_t>(std::floor(a)) + 1;
    const std::int64_t hi = static_cast<std::int64_t>(std::floor(b));
    std::vector<std::int32_t> d;
    if (wants_divisor && hi >= 1) d = divisor_sieve(hi);

    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t n = lo; n <= hi; ++n) {
        const double fv = f.value(static_cast<double>(n));
        std::complex<double> w(1.0, 0.0);
        if (wants_divisor) w *= static_cast<double>(d[static_cast<std::size_t>(n)]);
        if (wants_chi) w *= chi->at(n);
        acc += w * fv;
    }
    return acc;
}

}  // namespace finsum::formulae

namespace finsum {
using formulae::direct_sum;
using formulae::Weight;
}  // namespace finsum
