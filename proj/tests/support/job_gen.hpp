#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "finsum/finsum.hpp"
#include "support/test_rng.hpp"

namespace testsupport {

enum class Family {
  kEmChi,
  kEmDivisor,
  kEmDivisorChi,
  kPoissonChi,
  kPoissonDivisor,
  kPoissonDivisorChi,
};

inline const char* family_name(Family fam) {
  switch (fam) {
    case Family::kEmChi: return "em_chi";
    case Family::kEmDivisor: return "em_divisor";
    case Family::kEmDivisorChi: return "em_divisor_chi";
    case Family::kPoissonChi: return "poisson_chi";
    case Family::kPoissonDivisor: return "poisson_divisor";
    case Family::kPoissonDivisorChi: return "poisson_divisor_chi";
  }
  return "?";
}

inline bool family_uses_chi(Family fam) {
  return fam == Family::kEmChi || fam == Family::kEmDivisorChi ||
         fam == Family::kPoissonChi || fam == Family::kPoissonDivisorChi;
}

inline bool family_is_poisson(Family fam) {
  return fam == Family::kPoissonChi || fam == Family::kPoissonDivisor ||
         fam == Family::kPoissonDivisorChi;
}

// Randomly generated but fully reproducible job: the (family, index) pair
// pins the seed, so batteries are identical across runs and processes.
struct BatteryJob {
  Family family;
  std::string source;
  finsum::SmoothFunction f;
  std::optional<finsum::PeriodicSequence> chi;
  double a = 0.0;
  double b = 0.0;
  finsum::TruncationParams params;
  bool complex_chi = false;
};

inline std::string format_coeff(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Gentle summands: slow frequencies and mild growth keep every derivative
// the truncation depth touches O(1) on the batteries' intervals.
inline std::string base_source(Rng& rng, int pick) {
  switch (pick % 5) {
    case 0: {
      const double c = rng.uniform(4.0, 9.0);
      const double d = rng.uniform(6.0, 12.0);
      const double e = rng.uniform(1.0, 3.0);
      return "exp(-x/" + format_coeff(c) + ")*(x/" + format_coeff(d) + " + " +
             format_coeff(e) + ")";
    }
    case 1: {
      const double c = rng.uniform(4.0, 9.0);
      const double e = rng.uniform(2.0, 4.0);
      return "sin(x/" + format_coeff(c) + ") + " + format_coeff(e);
    }
    case 2: {
      const double c = rng.uniform(4.0, 9.0);
      const double d = rng.uniform(5.0, 10.0);
      const double e = rng.uniform(2.0, 4.0);
      return "cos(x/" + format_coeff(c) + ")*exp(-x/" + format_coeff(d) + ") + " +
             format_coeff(e);
    }
    case 3: {
      const double k = rng.uniform(40.0, 90.0);
      const double d = rng.uniform(1.0, 3.0);
      return "x*x/" + format_coeff(k) + " + " + format_coeff(d);
    }
    default: {
      const double c = rng.uniform(4.0, 9.0);
      const double d = rng.uniform(1.0, 2.0);
      return "exp(-x/" + format_coeff(c) + ") + " + format_coeff(d);
    }
  }
}

// Every third job of a chi-weighted family carries a complex sequence whose
// mean has a pinned nonzero imaginary part; the rest stay real. Values are
// small half-integer steps so no single residue dominates the sums.
inline finsum::PeriodicSequence make_chi(Rng& rng, int k, bool force_complex,
                                         bool* complex_out) {
  std::vector<std::complex<double>> values(static_cast<std::size_t>(k));
  if (force_complex) {
    values[0] = {1.0, 0.5};
    for (int i = 1; i < k; ++i)
      values[static_cast<std::size_t>(i)] = {0.5 * static_cast<double>(rng.integer(-2, 2)), 0.0};
    *complex_out = true;
    return finsum::PeriodicSequence(k, std::move(values));
  }
  double largest = 0.0;
  for (int i = 0; i < k; ++i) {
    const double v = 0.5 * static_cast<double>(rng.integer(-3, 3));
    values[static_cast<std::size_t>(i)] = {v, 0.0};
    largest = std::max(largest, std::abs(v));
  }
  if (largest == 0.0) values[0] = {1.0, 0.0};
  *complex_out = false;
  return finsum::PeriodicSequence(k, std::move(values));
}

// Half-integer grid endpoints: a = j + 1/2 and integer length leave every
// kernel argument the identities touch strictly fractional, for any period,
// dilation, or divisor index, so no generated job can trip a tie guard.
inline BatteryJob make_battery_job(Family fam, int index) {
  Rng rng(0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(fam) + 1) +
          2654435761ull * static_cast<std::uint64_t>(index) + 17);
  const double a = 0.5 + static_cast<double>(rng.integer(0, 3));
  const std::int64_t len =
      2 + std::min(rng.integer(0, 10), rng.integer(0, 10));
  const double b = a + static_cast<double>(len);

  std::optional<finsum::PeriodicSequence> chi;
  bool complex_chi = false;
  if (family_uses_chi(fam)) {
    const int k = static_cast<int>(rng.integer(1, 6));
    chi = make_chi(rng, k, index % 3 == 0, &complex_chi);
  }

  std::string source = base_source(rng, index % 5);
  finsum::TruncationParams params;
  if (family_is_poisson(fam)) {
    const double freq = std::numbers::pi / static_cast<double>(len);
    source = "(" + source + ")*sin(" + format_coeff(freq) + "*(x - " +
             format_coeff(a) + "))^2";
    params = {.R = 0, .N = 4000, .quad_tol = 1e-10};
  } else {
    int depth = 3;
    if (fam == Family::kEmChi) depth = 3 + index % 2;
    if (fam == Family::kEmDivisorChi) depth = 4;
    params = {.R = depth, .N = 500, .quad_tol = 1e-10};
  }

  finsum::SmoothFunction f = finsum::SmoothFunction::from_source(source, 0.0, b + 0.5);
  return BatteryJob{fam, std::move(source), std::move(f), std::move(chi),
                    a,   b,                 params,        complex_chi};
}

inline finsum::IdentityResult run_battery_job(const BatteryJob& job) {
  switch (job.family) {
    case Family::kEmChi:
      return finsum::euler_maclaurin_chi(*job.chi, job.f, job.a, job.b, job.params);
    case Family::kEmDivisor:
      return finsum::euler_maclaurin_divisor(job.f, job.a, job.b, job.params);
    case Family::kEmDivisorChi:
      return finsum::euler_maclaurin_divisor_chi(*job.chi, job.f, job.a, job.b, job.params);
    case Family::kPoissonChi:
      return finsum::poisson_chi(*job.chi, job.f, job.a, job.b, job.params);
    case Family::kPoissonDivisor:
      return finsum::poisson_divisor(job.f, job.a, job.b, job.params);
    case Family::kPoissonDivisorChi:
      return finsum::poisson_divisor_chi(*job.chi, job.f, job.a, job.b, job.params);
  }
  throw finsum::Error("run_battery_job: unknown family");
}

}  // namespace testsupport
