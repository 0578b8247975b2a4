#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finsum/error.hpp"

namespace finsum::kernels {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Largest supported polynomial degree. Everything is table-driven and the
/// tables stay exact, so the cap is a guard against runaway requests, not a
/// numeric limit.
inline constexpr int kMaxBernoulliDegree = 32;

/// Polynomial with exact rational coefficients, lowest degree first.
struct BernoulliPoly {
    int degree = 0;
    std::vector<Rational> coeffs;

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = acc * x + coeffs[i].convert_to<double>();
        return acc;
    }

    Rational eval_exact(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }
};

namespace detail {

// Pascal triangle rows 0..n, exact.
inline std::vector<std::vector<BigInt>> binomial_rows(int n) {
    std::vector<std::vector<BigInt>> rows(n + 1);
    for (int i = 0; i <= n; ++i) {
        rows[i].resize(i + 1);
        rows[i][0] = rows[i][i] = 1;
        for (int j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
    }
    return rows;
}

struct BernoulliTables {
    std::vector<std::vector<BigInt>> binom;   // rows 0..kMax+1
    std::vector<Rational> numbers;            // B_0..B_kMax (B_1 = -1/2)
    std::vector<BernoulliPoly> polys;         // B_0(x)..B_kMax(x)

    BernoulliTables() {
        const int n = kMaxBernoulliDegree;
        binom = binomial_rows(n + 1);
        numbers.resize(n + 1);
        numbers[0] = 1;
        for (int m = 1; m <= n; ++m) {
            Rational s = 0;
            for (int j = 0; j < m; ++j) s += Rational(binom[m + 1][j]) * numbers[j];
            numbers[m] = -s / Rational(m + 1);
        }
        polys.resize(n + 1);
        for (int r = 0; r <= n; ++r) {
            polys[r].degree = r;
            polys[r].coeffs.resize(r + 1);
            for (int j = 0; j <= r; ++j)
                polys[r].coeffs[j] = Rational(binom[r][j]) * numbers[r - j];
        }
    }
};

inline const BernoulliTables& bernoulli_tables() {
    static const BernoulliTables tables;
    return tables;
}

}  // namespace detail

/// Exact Bernoulli number B_r in the B_1 = -1/2 convention.
inline const Rational& bernoulli_number(int r) {
    if (r < 0 || r > kMaxBernoulliDegree)
        throw CapacityError("bernoulli_number: order " + std::to_string(r) +
                            " outside [0, " + std::to_string(kMaxBernoulliDegree) + "]");
    return detail::bernoulli_tables().numbers[r];
}

/// Exact Bernoulli polynomial B_r(x), coefficients lowest degree first.
inline const BernoulliPoly& bernoulli_poly(int r) {
    if (r < 0 || r > kMaxBernoulliDegree)
        throw CapacityError("bernoulli_poly: degree " + std::to_string(r) +
                            " outside [0, " + std::to_string(kMaxBernoulliDegree) + "]");
    return detail::bernoulli_tables().polys[r];
}

}  // namespace finsum::kernels

namespace finsum {
using kernels::BernoulliPoly;
using kernels::bernoulli_number;
using kernels::bernoulli_poly;
using kernels::BigInt;
using kernels::kMaxBernoulliDegree;
using kernels::Rational;
}  // namespace finsum
