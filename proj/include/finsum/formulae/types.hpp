#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finsum/error.hpp"

namespace finsum::formulae {

/// Truncation knobs shared by the depth-R identities: R is the boundary
/// depth (derivatives up to f^(R) at the endpoints, f^(R+1) inside the
/// remainder), N cuts every symmetric series at 1 <= |n| <= N, quad_tol is
/// the absolute quadrature target per integral.
struct TruncationParams {
    int R = 0;
    int N = 100;
    double quad_tol = 1e-10;

    void validate(int max_order) const {
        if (R < 0) throw Error("TruncationParams: R must be >= 0");
        if (N < 1) throw Error("TruncationParams: N must be >= 1");
        if (!(quad_tol > 0.0)) throw Error("TruncationParams: quad_tol must be > 0");
        if (R > max_order - 1)
            throw Error("TruncationParams: R exceeds max_order - 1 of the function");
    }
};

struct Diagnostics {
    double tail_estimate = 0.0;
    double quad_error = 0.0;
    bool quadrature_converged = true;
    std::int64_t panels = 0;
};

/// Two-sided evaluation: lhs is always the direct enumeration, rhs the
/// assembled formula, with the named stage values kept in assembly order.
/// The residual is recomputed on demand, never stored.
struct IdentityResult {
    std::complex<double> lhs{0.0, 0.0};
    std::complex<double> rhs{0.0, 0.0};
    std::vector<std::pair<std::string, std::complex<double>>> terms;
    Diagnostics diagnostics;

    double residual() const { return std::abs(lhs - rhs); }

    std::complex<double> term(std::string_view name) const {
        for (const auto& [stage, value] : terms)
            if (stage == name) return value;
        throw Error("IdentityResult: no stage named " + std::string(name));
    }

    bool has_term(std::string_view name) const {
        for (const auto& [stage, value] : terms)
            if (stage == name) return true;
        return false;
    }
};

}  // namespace finsum::formulae

namespace finsum {
using formulae::Diagnostics;
using formulae::IdentityResult;
using formulae::TruncationParams;
}  // namespace finsum
