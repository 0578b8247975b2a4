#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "finsum/cli/job.hpp"
#include "finsum/cli/report.hpp"
#include "finsum/finsum.hpp"

namespace finsum {
namespace cli {

struct RunOutcome {
    int code = 0;
    std::string out;
    std::string err;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto delta = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double, std::milli>(delta).count();
}

}  // namespace detail

/// The summand over the widest range the chosen identity touches. Abel jobs
/// also evaluate f down at the reference point left of the interval.
inline SmoothFunction job_function(const SumJob& job) {
    double lo = job.a;
    if (job.identity == "abel") lo = std::min(lo, job.lambda0.value_or(job.a - 1.0));
    return SmoothFunction::from_source(job.f_source, lo, job.b);
}

inline IdentityResult evaluate(const SumJob& job) {
    if (job.identity == "euler2d") {
        const BivariateFunction f =
            BivariateFunction::from_source(job.f_source, job.a, job.b, job.y_lo, job.y_hi);
        return euler_sum_2d(f, job.a, job.b, job.y_lo, job.y_hi, job.truncation.quad_tol);
    }
    const SmoothFunction f = job_function(job);
    const double quad_tol = job.truncation.quad_tol;
    if (job.identity == "abel")
        return abel_sum(job.nodes, job.coeffs, f, job.a, job.b, quad_tol, job.lambda0);
    if (job.identity == "euler") return euler_sum(f, job.a, job.b, quad_tol);
    if (job.identity == "residue_class")
        return residue_class_sum(f, job.a, job.b, job.r, job.k, quad_tol);
    if (job.identity == "dilated") return dilated_sum(f, job.a, job.b, job.m, quad_tol);
    if (job.identity == "dilated_residue")
        return dilated_residue_sum(f, job.a, job.b, job.r, job.k, job.m, quad_tol);
    if (job.identity == "em_divisor")
        return euler_maclaurin_divisor(f, job.a, job.b, job.truncation);
    if (job.identity == "poisson_divisor")
        return poisson_divisor(f, job.a, job.b, job.truncation);
    const PeriodicSequence chi(static_cast<int>(job.k), job.chi);
    if (job.identity == "em_chi")
        return euler_maclaurin_chi(chi, f, job.a, job.b, job.truncation);
    if (job.identity == "em_divisor_chi")
        return euler_maclaurin_divisor_chi(chi, f, job.a, job.b, job.truncation);
    if (job.identity == "poisson_chi") return poisson_chi(chi, f, job.a, job.b, job.truncation);
    if (job.identity == "poisson_divisor_chi")
        return poisson_divisor_chi(chi, f, job.a, job.b, job.truncation);
    throw Error("unhandled identity: " + job.identity);
}

inline RunOutcome run_verify(const std::string& job_path,
                             std::optional<double> tolerance_override = std::nullopt) {
    RunOutcome outcome;
    try {
        const SumJob job = load_job(job_path);
        const double tolerance = tolerance_override.value_or(job.tolerance.value_or(1e-6));
        const auto start = std::chrono::steady_clock::now();
        const IdentityResult out = evaluate(job);
        const double wall = detail::elapsed_ms(start);
        const bool pass = out.residual() <= tolerance * (1.0 + std::abs(out.lhs)) &&
                          out.diagnostics.quadrature_converged;
        outcome.code = pass ? 0 : 1;
        outcome.out = report_json(job, out, tolerance, pass).dump(2) + "\n";
        outcome.err = "verify: wall_ms=" + format_double(wall) + "\n";
    } catch (const SchemaError& e) {
        outcome.code = 2;
        outcome.out = error_json("schema", e.path(), e.what()).dump(2) + "\n";
    } catch (const ParseError& e) {
        outcome.code = 2;
        outcome.out = error_json("parse", "/", e.what()).dump(2) + "\n";
    } catch (const GuardError& e) {
        outcome.code = 3;
        outcome.out = error_json("guard", e.guard(), e.what()).dump(2) + "\n";
    } catch (const Error& e) {
        outcome.code = 3;
        outcome.out = error_json("evaluation", "/", e.what()).dump(2) + "\n";
    }
    return outcome;
}

inline RunOutcome run_sweep(const std::string& job_path, std::vector<int> cutoffs = {}) {
    RunOutcome outcome;
    try {
        SumJob job = load_job(job_path);
        if (cutoffs.empty()) cutoffs = job.sweep;
        if (cutoffs.empty())
            throw SchemaError("/sweep", "no cutoffs given (pass --N or add a sweep field)");
        for (std::size_t i = 0; i < cutoffs.size(); ++i) {
            if (cutoffs[i] < 1) throw SchemaError("/sweep", "cutoff must be >= 1");
            if (i > 0 && cutoffs[i] <= cutoffs[i - 1])
                throw SchemaError("/sweep", "cutoffs must be strictly ascending");
        }
        if (!cli::detail::identity_shape(job.identity)->series)
            throw SchemaError("/identity",
                              "sweep needs a truncated-series identity, got '" + job.identity + "'");
        std::ostringstream csv;
        csv << "N,residual,tail_estimate,wall_ms\n";
        for (const int n : cutoffs) {
            job.truncation.N = n;
            const auto start = std::chrono::steady_clock::now();
            const IdentityResult out = evaluate(job);
            csv << n << ',' << format_double(out.residual()) << ','
                << format_double(out.diagnostics.tail_estimate) << ','
                << format_double(detail::elapsed_ms(start)) << '\n';
        }
        outcome.out = csv.str();
    } catch (const SchemaError& e) {
        outcome.code = 2;
        outcome.out = error_json("schema", e.path(), e.what()).dump(2) + "\n";
    } catch (const ParseError& e) {
        outcome.code = 2;
        outcome.out = error_json("parse", "/", e.what()).dump(2) + "\n";
    } catch (const GuardError& e) {
        outcome.code = 3;
        outcome.out = error_json("guard", e.guard(), e.what()).dump(2) + "\n";
    } catch (const Error& e) {
        outcome.code = 3;
        outcome.out = error_json("evaluation", "/", e.what()).dump(2) + "\n";
    }
    return outcome;
}

/// Desk-scale invariant sweep: one line per group, exit 0 iff all pass.
/// Groups are chosen so that each supported fault injection (sign-flipped
/// kernel, conjugated character transform, dropped zero mode) breaks at
/// least one of them.
inline RunOutcome run_selftest() {
    std::ostringstream report;
    bool all_pass = true;
    const auto check = [](bool ok, const std::string& what) {
        if (!ok) throw Error(what);
    };
    const auto group = [&](const char* name, const std::function<void()>& body) {
        try {
            body();
            report << "PASS " << name << "\n";
        } catch (const std::exception& e) {
            all_pass = false;
            report << "FAIL " << name << ": " << e.what() << "\n";
        }
    };
    const auto relative_ok = [](const IdentityResult& out, double scale) {
        return out.residual() <= scale * (1.0 + std::abs(out.lhs));
    };

    group("kernels", [&] {
        for (int r = 1; r <= 6; ++r) {
            for (const double x : {0.17, 0.43, 2.71, -1.29}) {
                check(std::abs(psi(r, x) - psi(r, x + 1.0)) < 1e-14, "kernel not 1-periodic");
                const double h = 1e-6;
                const double slope = (psi(r, x + h) - psi(r, x - h)) / (2.0 * h);
                check(std::abs(slope - psi(r - 1, x)) < 1e-6, "kernel derivative ladder broken");
            }
        }
        check(std::abs(psi(0, 0.25) + 0.25) < 1e-15, "sawtooth spot value");
        check(std::abs(psi_fourier_partial(2, 0.3, 4000) - psi(2, 0.3)) < 1e-9,
              "kernel series does not approach closed form");
    });

    group("arithmetic", [&] {
        const PeriodicSequence window(4, {{1, 0}, {0, 0}, {-1, 0}, {0, 0}});
        check(std::abs(window.tau(1) - std::complex<double>(0.0, 2.0)) < 1e-12,
              "character transform spot value");
        const auto d = divisor_sieve(12);
        check(d[12] == 6, "d(12) != 6");
        int sum10 = 0;
        for (int n = 1; n <= 10; ++n) sum10 += d[n];
        check(sum10 == 27, "sum of d(n), n <= 10, != 27");
        check(std::abs(harmonic_number(10) - 7381.0 / 2520.0) < 1e-14, "harmonic number H(10)");
    });

    group("exact-cases", [&] {
        const PeriodicSequence unit(1, {{1.0, 0.0}});
        const SmoothFunction one = SmoothFunction::from_source("1", 0.0, 11.0);
        const SmoothFunction ident = SmoothFunction::from_source("x", 0.0, 11.0);
        const SmoothFunction square = SmoothFunction::from_source("x^2", 0.0, 11.0);

        const IdentityResult whole =
            poisson_chi(unit, one, 0.25, 5.25, {.R = 0, .N = 10, .quad_tol = 1e-12});
        check(whole.residual() < 1e-12, "full-period constant case not exact");

        const IdentityResult poly =
            euler_maclaurin_chi(unit, square, 0.5, 10.5, {.R = 2, .N = 8, .quad_tol = 1e-12});
        check(poly.residual() < 1e-10, "degree-2 polynomial at depth 2 not exact");

        const auto prod = BivariateFunction::from_source("x*y", -0.5, 2.5, -0.5, 2.5);
        const IdentityResult cells = euler_sum_2d(prod, 0.0, 2.0, 0.0, 2.0, 1e-10);
        check(cells.residual() < 1e-10, "bilinear double sum not exact");

        check(direct_sum(Weight::kDivisor, nullptr, one, 0.5, 10.5) == std::complex<double>(27, 0),
              "sum of d(n), n <= 10");
        check(direct_sum(Weight::kDivisor, nullptr, ident, 0.5, 6.5) == std::complex<double>(57, 0),
              "sum of n d(n), n <= 6");
    });

    group("collapse-em", [&] {
        const PeriodicSequence unit(1, {{1.0, 0.0}});
        const SmoothFunction f = SmoothFunction::from_source("exp(-x/4)*(x+1)", 0.0, 13.0);
        const TruncationParams params{.R = 2, .N = 60, .quad_tol = 1e-12};
        const IdentityResult via_chi = euler_maclaurin_chi(unit, f, 0.4, 9.3, params);
        const IdentityResult classical = classical_euler_maclaurin(f, 0.4, 9.3, params);
        check(via_chi.lhs == classical.lhs, "period-1 lhs mismatch");
        check(std::abs(via_chi.rhs - classical.rhs) <= 1e-12 * (1.0 + std::abs(classical.rhs)),
              "period-1 rhs mismatch");
    });

    group("collapse-poisson", [&] {
        const PeriodicSequence unit(1, {{1.0, 0.0}});
        const SmoothFunction f = SmoothFunction::from_source("exp(-x/5)*(x+2)", 0.0, 13.0);
        const TruncationParams params{.R = 0, .N = 200, .quad_tol = 1e-11};
        const IdentityResult via_chi = poisson_chi(unit, f, 0.3, 11.8, params);
        const IdentityResult classical = classical_poisson(f, 0.3, 11.8, params);
        check(via_chi.lhs == classical.lhs, "period-1 lhs mismatch");
        check(std::abs(via_chi.rhs - classical.rhs) <= 1e-12 * (1.0 + std::abs(classical.rhs)),
              "period-1 rhs mismatch");
    });

    group("collapse-residue", [&] {
        const SmoothFunction f = SmoothFunction::from_source("exp(-x/6)*(x+1)", 0.0, 13.0);
        const IdentityResult restricted = dilated_residue_sum(f, 0.4, 11.3, 0, 1, 1, 1e-11);
        const IdentityResult plain = euler_sum(f, 0.4, 11.3, 1e-11);
        check(restricted.lhs == plain.lhs, "trivial-class lhs mismatch");
        check(std::abs(restricted.rhs - plain.rhs) <= 1e-12 * (1.0 + std::abs(plain.rhs)),
              "trivial-class rhs mismatch");
    });

    group("oracle-equivalence", [&] {
        const std::complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        const PeriodicSequence chi3(3, {{1.0, 0.0}, omega, {0.0, 0.0}});
        const SmoothFunction decay = SmoothFunction::from_source("exp(-x/5)", 0.0, 10.0);
        const SmoothFunction one = SmoothFunction::from_source("1", 0.0, 10.0);
        const SmoothFunction ident = SmoothFunction::from_source("x", 0.0, 7.0);

        const IdentityResult em =
            euler_maclaurin_chi(chi3, decay, 0.4, 9.3, {.R = 1, .N = 150, .quad_tol = 1e-12});
        check(relative_ok(em, 1e-6), "complex-character sum vs expansion");

        const IdentityResult po =
            poisson_chi(chi3, one, 0.25, 9.25, {.R = 0, .N = 40, .quad_tol = 1e-11});
        check(po.residual() <= 1e-10, "complex-character sum vs frequency series");

        const IdentityResult dv =
            euler_maclaurin_divisor(ident, 0.5, 6.5, {.R = 1, .N = 40, .quad_tol = 1e-11});
        check(dv.residual() <= 1e-9, "divisor-weighted linear sum");

        const PeriodicSequence alt(2, {{1.0, 0.0}, {-1.0, 0.0}});
        const SmoothFunction one7 = SmoothFunction::from_source("1", 0.0, 7.0);
        const IdentityResult dc =
            poisson_divisor_chi(alt, one7, 0.5, 6.5, {.R = 0, .N = 2000, .quad_tol = 1e-11});
        check(dc.residual() <= 0.02, "signed divisor-weighted sum vs frequency series");
    });

    RunOutcome outcome;
    outcome.code = all_pass ? 0 : 1;
    outcome.out = report.str();
    return outcome;
}

}  // namespace cli
}  // namespace finsum
