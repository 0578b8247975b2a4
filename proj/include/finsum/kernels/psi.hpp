#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "finsum/error.hpp"
#include "finsum/kernels/bernoulli.hpp"

namespace finsum::kernels {

inline constexpr int kMaxPsiOrder = kMaxBernoulliDegree - 1;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

namespace detail {

// Coefficients of B_{r+1}(t)/(r+1)! as doubles, lowest degree first.
// Kept exact until the final conversion so the table carries no
// accumulated rounding.
inline const std::vector<std::vector<double>>& psi_coeff_tables() {
    static const std::vector<std::vector<double>> tables = [] {
        std::vector<std::vector<double>> out(kMaxPsiOrder + 1);
        Rational factorial = 1;
        for (int r = 0; r <= kMaxPsiOrder; ++r) {
            factorial *= (r + 1);
            const BernoulliPoly& poly = bernoulli_poly(r + 1);
            out[r].resize(poly.coeffs.size());
            for (std::size_t j = 0; j < poly.coeffs.size(); ++j)
                out[r][j] = Rational(poly.coeffs[j] / factorial).convert_to<double>();
        }
        return out;
    }();
    return tables;
}

inline void check_psi_order(int r, const char* who) {
    if (r < 0 || r > kMaxPsiOrder)
        throw CapacityError(std::string(who) + ": order " + std::to_string(r) +
                            " outside [0, " + std::to_string(kMaxPsiOrder) + "]");
}

}  // namespace detail

/// Periodic kernel psi_r(x) = B_{r+1}({x})/(r+1)!.  The fractional part
/// {x} lies in [0,1), so at integer x the value is B_{r+1}(0)/(r+1)!
/// (for r = 0 that is -1/2, the limit from the right shifted one period;
/// the Fourier series itself converges to 0 there).
inline double psi(int r, double x) {
    detail::check_psi_order(r, "psi");
    double frac = x - std::floor(x);
    if (frac >= 1.0) frac = 0.0;  // floor rounding at huge |x|
    const std::vector<double>& c = detail::psi_coeff_tables()[r];
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * frac + c[i];
    return acc;
}

/// psi(0, x) = x - [x] - 1/2, the sawtooth.
inline double sawtooth(double x) { return psi(0, x); }

/// Symmetric partial sum  -sum_{1<=|n|<=N} e^{2 pi i n x} / (2 pi i n)^{r+1}.
/// The +n and -n terms are conjugates, so the sum is exactly real; the
/// residual imaginary part is asserted below 1e-12 before it is dropped.
inline double psi_fourier_partial(int r, double x, int N) {
    detail::check_psi_order(r, "psi_fourier_partial");
    if (N < 1) throw Error("psi_fourier_partial: N must be >= 1");
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> rot = i_pow[(r + 1) & 3];
    std::complex<double> sum(0.0, 0.0);
    for (int n = 1; n <= N; ++n) {
        double ang = kTwoPi * std::fmod(static_cast<double>(n) * x, 1.0);
        std::complex<double> numer(std::cos(ang), std::sin(ang));
        double mag = std::pow(kTwoPi * n, r + 1);
        std::complex<double> term = numer / (mag * rot);
        sum += term + std::conj(term);
    }
    std::complex<double> value = -sum;
    if (std::abs(value.imag()) > 1e-12)
        throw Error("psi_fourier_partial: imaginary part exceeded 1e-12");
    return value.real();
}

}  // namespace finsum::kernels

namespace finsum {
using kernels::kMaxPsiOrder;
using kernels::kTwoPi;
using kernels::psi;
using kernels::psi_fourier_partial;
using kernels::sawtooth;
}  // namespace finsum
