#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "finsum/formulae/em.hpp"
#include "finsum/formulae/hooks.hpp"
#include "finsum/kernels/psi.hpp"
#include "finsum/parallel.hpp"
#include "support/test_rng.hpp"

using finsum::IdentityResult;
using finsum::PeriodicSequence;
using finsum::SmoothFunction;
using finsum::TruncationParams;
using std::complex;

namespace {

struct HookReset {
    ~HookReset() { finsum::mutation_hooks() = finsum::MutationHooks{}; }
};

struct ThreadReset {
    ~ThreadReset() { finsum::parallel::set_max_threads(0); }
};

SmoothFunction fn(const std::string& src, double lo, double hi, int max_order = 16) {
    return SmoothFunction::from_source(src, lo, hi, max_order);
}

PeriodicSequence unit_chi() { return PeriodicSequence(1, {{1.0, 0.0}}); }

}  // namespace

TEST(EulerMaclaurinChi, PolynomialIsExactThroughDepth) {
    const SmoothFunction f = fn("x^2", 0.0, 11.0);
    const IdentityResult out =
        finsum::euler_maclaurin_chi(unit_chi(), f, 0.5, 10.5, {.R = 2, .N = 7, .quad_tol = 1e-10});
    EXPECT_EQ(out.lhs.real(), 385.0);
    EXPECT_EQ(out.term("remainder-series"), complex<double>(0.0, 0.0));
    EXPECT_LE(out.residual(), 1e-7);
}

TEST(EulerMaclaurinChi, AlternatingConstantIsExact) {
    PeriodicSequence chi(2, {{1.0, 0.0}, {-1.0, 0.0}});
    const SmoothFunction f = fn("1", 0.0, 9.0);
    const IdentityResult out =
        finsum::euler_maclaurin_chi(chi, f, 0.5, 8.5, {.R = 0, .N = 50, .quad_tol = 1e-10});
    EXPECT_EQ(out.lhs, complex<double>(0.0, 0.0));
    EXPECT_EQ(out.term("main-term"), complex<double>(0.0, 0.0));
    EXPECT_EQ(out.term("remainder-series"), complex<double>(0.0, 0.0));
    EXPECT_LE(out.residual(), 1e-12);
}

TEST(EulerMaclaurinChi, ExponentialModFour) {
    PeriodicSequence chi(4, {{1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}});
    const SmoothFunction f = fn("exp(-x/5)", 0.0, 41.0);
    const IdentityResult out =
        finsum::euler_maclaurin_chi(chi, f, 0.3, 40.3, {.R = 3, .N = 200, .quad_tol = 1e-12});
    EXPECT_LE(out.residual(), 1e-8 * (1.0 + std::abs(out.lhs)));
    EXPECT_GT(std::abs(out.lhs), 0.1);
}

TEST(EulerMaclaurinChi, CollapsesToClassicalAtPeriodOne) {
    testsupport::Rng rng(921);
    const char* sources[] = {"x^2 + 1", "exp(-x/3)", "sin(x/2) + 2", "x^3/50 + x"};
    for (int trial = 0; trial < 8; ++trial) {
        const SmoothFunction f = fn(sources[trial % 4], -1.0, 30.0);
        const double a = 0.5 + 0.25 * static_cast<double>(rng.integer(0, 8));
        const double b = a + 2.25 + static_cast<double>(rng.integer(0, 20));
        const TruncationParams params{.R = static_cast<int>(rng.integer(0, 3)),
                                      .N = 40,
                                      .quad_tol = 1e-11};
        IdentityResult viaChi, classical;
        try {
            viaChi = finsum::euler_maclaurin_chi(unit_chi(), f, a, b, params);
            classical = finsum::classical_euler_maclaurin(f, a, b, params);
        } catch (const finsum::GuardError&) {
            continue;
        }
        EXPECT_EQ(viaChi.lhs, classical.lhs);
        EXPECT_LE(std::abs(viaChi.rhs - classical.rhs), 1e-12 * (1.0 + std::abs(classical.rhs)))
            << sources[trial % 4] << " a=" << a << " b=" << b << " R=" << params.R;
    }
}

TEST(ClassicalEulerMaclaurin, MatchesDirectOnSmoothJob) {
    const SmoothFunction f = fn("exp(-x/6)*(x+2)", 0.0, 16.0);
    const IdentityResult out =
        finsum::classical_euler_maclaurin(f, 0.4, 14.7, {.R = 3, .N = 400, .quad_tol = 1e-12});
    EXPECT_LE(out.residual(), 1e-9 * (1.0 + std::abs(out.lhs)));
}

TEST(EulerMaclaurinDivisor, ConstantWeightBreakdown) {
    const SmoothFunction f = fn("1", 0.0, 11.0);
    const IdentityResult out =
        finsum::euler_maclaurin_divisor(f, 0.5, 10.5, {.R = 0, .N = 50, .quad_tol = 1e-11});
    EXPECT_EQ(out.lhs.real(), 27.0);
    EXPECT_NEAR(out.term("main-term").real(), 10.0 * 7381.0 / 2520.0, 1e-8);
    EXPECT_EQ(out.term("remainder-series"), complex<double>(0.0, 0.0));
    EXPECT_LE(out.residual(), 1e-9);
}

TEST(EulerMaclaurinDivisor, LinearWeight) {
    const SmoothFunction f = fn("x", 0.0, 7.0);
    const IdentityResult out =
        finsum::euler_maclaurin_divisor(f, 0.5, 6.5, {.R = 1, .N = 50, .quad_tol = 1e-11});
    EXPECT_EQ(out.lhs.real(), 57.0);
    EXPECT_EQ(out.term("remainder-series"), complex<double>(0.0, 0.0));
    EXPECT_LE(out.residual(), 1e-9);
}

TEST(EulerMaclaurinDivisor, SingleTermInterval) {
    const SmoothFunction f = fn("1", 5.0, 7.0);
    const IdentityResult out =
        finsum::euler_maclaurin_divisor(f, 5.5, 6.5, {.R = 0, .N = 30, .quad_tol = 1e-11});
    EXPECT_EQ(out.lhs.real(), 4.0);
    EXPECT_LE(out.residual(), 1e-9);
}

TEST(EulerMaclaurinDivisor, RemainderSeriesConverges) {
    const SmoothFunction f = fn("exp(-x/4)", 0.0, 13.0);
    const TruncationParams coarse{.R = 2, .N = 75, .quad_tol = 1e-12};
    const TruncationParams fine{.R = 2, .N = 600, .quad_tol = 1e-12};
    const double res_coarse = finsum::euler_maclaurin_divisor(f, 0.4, 12.3, coarse).residual();
    const double res_fine = finsum::euler_maclaurin_divisor(f, 0.4, 12.3, fine).residual();
    EXPECT_LE(res_fine, std::max(res_coarse * 0.02, 1e-11));
}

TEST(EulerMaclaurinDivisorChi, CollapsesToDivisorAtPeriodOne) {
    const SmoothFunction f = fn("exp(-x/5)*(x/4+1)", 0.0, 10.0);
    const TruncationParams params{.R = 2, .N = 120, .quad_tol = 1e-12};
    const IdentityResult withChi =
        finsum::euler_maclaurin_divisor_chi(unit_chi(), f, 0.4, 9.3, params);
    const IdentityResult plain = finsum::euler_maclaurin_divisor(f, 0.4, 9.3, params);
    EXPECT_EQ(withChi.lhs, plain.lhs);
    EXPECT_LE(std::abs(withChi.rhs - plain.rhs), 1e-12 * (1.0 + std::abs(plain.rhs)));
}

TEST(EulerMaclaurinDivisorChi, AlternatingConstant) {
    PeriodicSequence chi(2, {{1.0, 0.0}, {-1.0, 0.0}});
    const SmoothFunction f = fn("1", 0.0, 7.0);
    const IdentityResult out =
        finsum::euler_maclaurin_divisor_chi(chi, f, 0.5, 6.5, {.R = 0, .N = 50, .quad_tol = 1e-11});
    EXPECT_EQ(out.lhs, complex<double>(-4.0, 0.0));
    EXPECT_EQ(out.term("remainder-series"), complex<double>(0.0, 0.0));
    EXPECT_LE(out.residual(), 1e-9);
}

TEST(EulerMaclaurinDivisorChi, ComplexCharacter) {
    const complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    PeriodicSequence chi(3, {omega, omega * omega, {1.0, 0.0}});
    const SmoothFunction one = fn("1", 0.0, 10.0);
    IdentityResult out =
        finsum::euler_maclaurin_divisor_chi(chi, one, 0.5, 9.5, {.R = 0, .N = 60, .quad_tol = 1e-11});
    EXPECT_GT(std::abs(out.lhs.imag()), 0.1);
    EXPECT_LE(out.residual(), 1e-9);

    const SmoothFunction decay = fn("exp(-x/6)", 0.0, 10.0);
    out = finsum::euler_maclaurin_divisor_chi(chi, decay, 0.5, 9.5,
                                              {.R = 2, .N = 400, .quad_tol = 1e-12});
    EXPECT_LE(out.residual(), 1e-5 * (1.0 + std::abs(out.lhs)));
}

TEST(EulerMaclaurinChi, PolynomialExactnessProperty) {
    testsupport::Rng rng(922);
    for (int trial = 0; trial < 10; ++trial) {
        const int degree = static_cast<int>(rng.integer(0, 4));
        std::string src;
        for (int p = 0; p <= degree; ++p) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g*x^%d", rng.uniform(-2.0, 2.0), p);
            if (p > 0) src += " + ";
            src += buf;
        }
        const SmoothFunction f = fn(src, -1.0, 14.0);
        const int R = degree + static_cast<int>(rng.integer(0, 2));
        const double a = 0.5 + 0.5 * static_cast<double>(rng.integer(0, 4));
        const double b = a + 1.5 + static_cast<double>(rng.integer(0, 10));
        IdentityResult out;
        try {
            out = finsum::euler_maclaurin_chi(unit_chi(), f, a, b,
                                              {.R = R, .N = 10, .quad_tol = 1e-11});
        } catch (const finsum::GuardError&) {
            continue;
        }
        EXPECT_EQ(out.term("remainder-series"), complex<double>(0.0, 0.0)) << src;
        EXPECT_LE(out.residual(), 1e-6 * (1.0 + std::abs(out.lhs))) << src << " R=" << R;
    }
}

TEST(EulerMaclaurinChi, BoundarySeriesMatchesClosedForm) {
    testsupport::Rng rng(923);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int trial = 0; trial < 30; ++trial) {
        const int k = static_cast<int>(rng.integer(1, 6));
        std::vector<complex<double>> values;
        for (int l = 0; l < k; ++l)
            values.emplace_back(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
        PeriodicSequence chi(k, values);
        const int r = static_cast<int>(rng.integer(1, 3));
        const double x = rng.integer(-4, 12) + rng.uniform(0.05, 0.95);
        const int N = 1 << rng.integer(4, 8);

        complex<double> closed(0.0, 0.0);
        for (int l = 1; l <= k; ++l)
            closed -= chi.value(l) * finsum::psi(r, (x - l) / static_cast<double>(k));

        complex<double> series(0.0, 0.0);
        for (int n = 1; n <= N; ++n) {
            const complex<double> plus = std::pow(complex<double>(0.0, two_pi * n), r + 1);
            const complex<double> minus = std::pow(complex<double>(0.0, -two_pi * n), r + 1);
            const double ang = two_pi * n * x / static_cast<double>(k);
            series += chi.tau(-n) * std::polar(1.0, ang) / plus;
            series += chi.tau(n) * std::polar(1.0, -ang) / minus;
        }

        const double bound = 2.0 * chi.abs_sum() / std::pow(two_pi, r + 1) /
                                 (r * std::pow(static_cast<double>(N), r)) +
                             1e-12;
        EXPECT_LE(std::abs(series - closed), bound)
            << "k=" << k << " r=" << r << " x=" << x << " N=" << N;
    }
}

TEST(EulerMaclaurinChi, IntervalAdditivity) {
    const complex<double> i(0.0, 1.0);
    PeriodicSequence chi(3, {{1.0, 0.0}, 0.5 * i, {-0.5, 0.25}});
    const SmoothFunction f = fn("exp(-x/5)*(x+1)", 0.0, 14.0);
    const TruncationParams params{.R = 2, .N = 150, .quad_tol = 1e-12};
    const IdentityResult whole = finsum::euler_maclaurin_chi(chi, f, 0.4, 12.9, params);
    const IdentityResult left = finsum::euler_maclaurin_chi(chi, f, 0.4, 5.7, params);
    const IdentityResult right = finsum::euler_maclaurin_chi(chi, f, 5.7, 12.9, params);
    EXPECT_LE(std::abs(whole.lhs - left.lhs - right.lhs), 1e-12);
    EXPECT_LE(std::abs(whole.rhs - left.rhs - right.rhs),
              1e-7 * (1.0 + std::abs(whole.rhs)));
}

TEST(EulerMaclaurin, ThreadCountInvariance) {
    ThreadReset reset;
    const SmoothFunction f = fn("exp(-x/7)*(x/2+1)", 0.0, 12.0);
    PeriodicSequence chi(2, {{0.5, 0.5}, {1.0, -0.25}});
    const TruncationParams params{.R = 2, .N = 200, .quad_tol = 1e-12};

    finsum::parallel::set_max_threads(1);
    const IdentityResult serial = finsum::euler_maclaurin_divisor_chi(chi, f, 0.4, 11.3, params);
    finsum::parallel::set_max_threads(7);
    const IdentityResult threaded = finsum::euler_maclaurin_divisor_chi(chi, f, 0.4, 11.3, params);

    EXPECT_EQ(serial.lhs, threaded.lhs);
    EXPECT_EQ(serial.rhs, threaded.rhs);
    ASSERT_EQ(serial.terms.size(), threaded.terms.size());
    for (std::size_t t = 0; t < serial.terms.size(); ++t) {
        EXPECT_EQ(serial.terms[t].first, threaded.terms[t].first);
        EXPECT_EQ(serial.terms[t].second, threaded.terms[t].second);
    }
    EXPECT_EQ(serial.diagnostics.tail_estimate, threaded.diagnostics.tail_estimate);
}

TEST(EulerMaclaurin, GuardsAndCapacity) {
    const SmoothFunction f = fn("x", -5.0, 3e8);
    PeriodicSequence chi(2, {{1.0, 0.0}, {-1.0, 0.0}});
    EXPECT_THROW(
        finsum::euler_maclaurin_chi(chi, f, 3.0, 10.5, {.R = 0, .N = 10, .quad_tol = 1e-10}),
        finsum::GuardError);
    EXPECT_THROW(
        finsum::euler_maclaurin_divisor(f, 3.0, 10.5, {.R = 0, .N = 10, .quad_tol = 1e-10}),
        finsum::GuardError);
    EXPECT_THROW(
        finsum::euler_maclaurin_divisor(f, -1.5, 10.5, {.R = 0, .N = 10, .quad_tol = 1e-10}),
        finsum::GuardError);
    EXPECT_THROW(
        finsum::euler_maclaurin_divisor(f, 0.5, 2e8, {.R = 0, .N = 10, .quad_tol = 1e-10}),
        finsum::CapacityError);

    const SmoothFunction capped = fn("x", 0.0, 11.0, 3);
    EXPECT_THROW(finsum::euler_maclaurin_chi(chi, capped, 0.5, 10.5,
                                             {.R = 3, .N = 10, .quad_tol = 1e-10}),
                 finsum::Error);
}

TEST(EulerMaclaurin, ConjugateTauMutationDetected) {
    HookReset reset;
    const complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    PeriodicSequence chi(3, {{1.0, 0.0}, omega, {0.0, 0.0}});
    const SmoothFunction f = fn("exp(-x/5)", 0.0, 10.0);
    const TruncationParams params{.R = 1, .N = 150, .quad_tol = 1e-12};
    const double clean = finsum::euler_maclaurin_chi(chi, f, 0.4, 9.3, params).residual();
    finsum::mutation_hooks().conjugate_tau = true;
    const double broken = finsum::euler_maclaurin_chi(chi, f, 0.4, 9.3, params).residual();
    EXPECT_LE(clean, 1e-6);
    EXPECT_GE(broken, 1e-3);
}
