#pragma once

#include <cstdint>
#include <vector>

#include "finsum/error.hpp"

namespace finsum::arith {

inline constexpr std::int64_t kMaxSieveLimit = 100'000'000;

/// d(n) for n = 1..limit by incrementing along multiples; O(limit log limit).
/// Index 0 is unused and held at 0.
inline std::vector<std::int32_t> divisor_sieve(std::int64_t limit) {
    if (limit < 1) throw Error("divisor_sieve: limit must be >= 1");
    if (limit > kMaxSieveLimit) throw CapacityError("divisor_sieve: limit exceeds cap");
    std::vector<std::int32_t> d(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t m = 1; m <= limit; ++m)
        for (std::int64_t n = m; n <= limit; n += m)
            ++d[static_cast<std::size_t>(n)];
    return d;
}

/// H(j) = sum_{m<=j} 1/m, H(0) = 0.
inline double harmonic_number(std::int64_t j) {
    if (j < 0) throw Error("harmonic_number: negative argument");
    double h = 0.0;
    for (std::int64_t m = 1; m <= j; ++m) h += 1.0 / static_cast<double>(m);
    return h;
}

}  // namespace finsum::arith

namespace finsum {
using arith::divisor_sieve;
using arith::harmonic_number;
using arith::kMaxSieveLimit;
}  // namespace finsum
