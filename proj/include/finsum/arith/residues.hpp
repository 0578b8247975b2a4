#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "finsum/error.hpp"

namespace finsum::arith {

/// Integers n with a < n*m <= b and n = r (mod k), ascending. Uses the exact
/// half-open law: n ranges over floor(a/m)+1 .. floor(b/m). Callers are
/// responsible for rejecting a/m or b/m within tie tolerance of an integer
/// before relying on floor here.
inline std::vector<std::int64_t> residues_in_class(double a, double b, std::int64_t r,
                                                   std::int64_t k, std::int64_t m) {
    if (m < 1) throw Error("residues_in_class: m must be >= 1");
    if (k < 1) throw Error("residues_in_class: k must be >= 1");
    std::vector<std::int64_t> out;
    if (!(a < b)) return out;
    const std::int64_t lo = static_cast<std::int64_t>(std::floor(a / static_cast<double>(m))) + 1;
    const std::int64_t hi = static_cast<std::int64_t>(std::floor(b / static_cast<double>(m)));
    if (hi < lo) return out;
    std::int64_t rr = r % k;
    if (rr < 0) rr += k;
    // First n >= lo with n = rr (mod k).
    std::int64_t delta = (rr - lo) % k;
    if (delta < 0) delta += k;
    for (std::int64_t n = lo + delta; n <= hi; n += k) out.push_back(n);
    return out;
}

}  // namespace finsum::arith

namespace finsum {
using arith::residues_in_class;
}  // namespace finsum
