#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "finsum/error.hpp"

namespace finsum::arith {

inline constexpr int kMaxPeriod = 4096;

/// A complex sequence with period k, indexed by residue 1..k as in the
/// transform sum below; chi(n) for any integer n goes through the periodic
/// lookup. The transform table tau(chi, n) = sum_{l=1..k} chi(l) e^{2 pi i
/// n l / k} is k-periodic in n and precomputed exactly once.
class PeriodicSequence {
public:
    PeriodicSequence(int k, std::vector<std::complex<double>> values)
        : k_(k), values_(std::move(values)) {
        if (k < 1) throw Error("PeriodicSequence: period must be >= 1");
        if (k > kMaxPeriod) throw CapacityError("PeriodicSequence: period exceeds cap");
        if (static_cast<int>(values_.size()) != k)
            throw Error("PeriodicSequence: need exactly k values");
        for (const auto& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error("PeriodicSequence: values must be finite");
        build_tau();
    }

    int period() const { return k_; }

    /// chi(n) for any integer n via residues 1..k.
    std::complex<double> at(std::int64_t n) const {
        std::int64_t r = (n - 1) % k_;
        if (r < 0) r += k_;
        return values_[static_cast<std::size_t>(r)];
    }

    /// Value by residue index 1..k.
    std::complex<double> value(int residue) const {
        return values_[static_cast<std::size_t>(residue - 1)];
    }

    std::complex<double> tau(std::int64_t n) const {
        std::int64_t r = n % k_;
        if (r < 0) r += k_;
        return tau_[static_cast<std::size_t>(r)];
    }

    double abs_sum() const {
        double s = 0.0;
        for (const auto& v : values_) s += std::abs(v);
        return s;
    }

private:
    void build_tau() {
        tau_.resize(static_cast<std::size_t>(k_));
        for (int n = 0; n < k_; ++n) {
            std::complex<double> s = 0.0;
            for (int l = 1; l <= k_; ++l) {
                // Exact reduced angle: (n*l) mod k keeps the phase argument
                // small so e.g. tau periodicity holds bit-for-bit.
                const int m = static_cast<int>((static_cast<std::int64_t>(n) * l) % k_);
                const double ang = 2.0 * std::numbers::pi * static_cast<double>(m) / k_;
                s += values_[static_cast<std::size_t>(l - 1)] *
                     std::complex<double>(std::cos(ang), std::sin(ang));
            }
            tau_[static_cast<std::size_t>(n)] = s;
        }
    }

    int k_;
    std::vector<std::complex<double>> values_;
    std::vector<std::complex<double>> tau_;
};

}  // namespace finsum::arith

namespace finsum {
using arith::PeriodicSequence;
}  // namespace finsum
