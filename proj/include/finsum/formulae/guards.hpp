#pragma once

#include <cmath>
#include <string>

#include "finsum/error.hpp"
#include "finsum/smoothfn/smooth_function.hpp"

namespace finsum::formulae {

/// Absolute distance to the nearest integer below which boundary membership
/// (or a kernel argument) is treated as ambiguous and the job is rejected.
inline constexpr double kTieTol = 1e-12;

namespace detail {

inline bool near_integer(double x) { return std::abs(x - std::round(x)) <= kTieTol; }

inline void require_interval(double a, double b, const char* op) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw Error(std::string(op) + ": requires finite a < b");
}

/// Endpoints of the summation interval must not sit on an integer, else
/// membership of that integer in (a, b] is a coin toss.
inline void require_no_endpoint_tie(double a, double b) {
    if (near_integer(a) || near_integer(b))
        throw GuardError("interval-tie", "interval endpoint within 1e-12 of an integer");
}

/// Kernel arguments at the endpoints must be off the integer lattice, where
/// the periodized kernels jump.
inline void require_kernel_arg(double arg, const char* context) {
    if (near_integer(arg))
        throw GuardError("endpoint-integrality",
                         std::string(context) + ": kernel argument within 1e-12 of an integer");
}

inline void require_good(const SmoothFunction& f, double a, double b) {
    const GoodCheck check = f.is_good_on(a, b);
    if (!check.good) throw GuardError("non-good-function", check.reason);
}

inline void require_nonnegative_start(double a) {
    if (a < 0.0)
        throw GuardError("negative-interval", "divisor-weighted sums require a >= 0");
}

}  // namespace detail
}  // namespace finsum::formulae
