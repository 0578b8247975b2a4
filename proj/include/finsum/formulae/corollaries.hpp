#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "finsum/arith/residues.hpp"
#include "finsum/formulae/direct.hpp"
#include "finsum/formulae/guards.hpp"
#include "finsum/formulae/support.hpp"
#include "finsum/formulae/types.hpp"
#include "finsum/smoothfn/smooth_function.hpp"

namespace finsum::formulae {

/// Partial summation against an arbitrary strictly increasing node sequence:
/// lhs = sum of c(n) f(lambda(n)) over nodes in (a, b]; rhs = f(b)S(b) -
/// f(a)S(a) - integral of S(t) f'(t) dt with S(t) the running coefficient
/// sum from the reference point lambda0 (default a - 1; any value below a
/// gives the same rhs).
inline IdentityResult abel_sum(const std::vector<double>& nodes,
                               const std::vector<std::complex<double>>& coeffs,
                               const SmoothFunction& f, double a, double b, double quad_tol,
                               std::optional<double> lambda0 = std::nullopt) {
    detail::require_interval(a, b, "abel_sum");
    if (!(quad_tol > 0.0)) throw Error("abel_sum: quad_tol must be > 0");
    if (nodes.size() != coeffs.size()) throw Error("abel_sum: nodes/coeffs size mismatch");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1])) throw Error("abel_sum: nodes must be strictly increasing");
    const double ref = lambda0.value_or(a - 1.0);
    if (!(ref < a)) throw Error("abel_sum: reference point must lie below a");
    for (double t : nodes) {
        if (std::abs(t - a) <= kTieTol || std::abs(t - b) <= kTieTol)
            throw GuardError("node-tie", "node within 1e-12 of an interval endpoint");
        if (std::abs(t - ref) <= kTieTol)
            throw GuardError("node-tie", "node within 1e-12 of the reference point");
    }

    IdentityResult out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] > a && nodes[i] <= b) out.lhs += coeffs[i] * f.value(nodes[i]);

    std::complex<double> s_run(0.0, 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] > ref && nodes[i] <= a) s_run += coeffs[i];
    const std::complex<double> s_a = s_run;

    std::vector<double> points;
    std::vector<std::complex<double>> jumps;
    points.push_back(a);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] > a && nodes[i] < b) {
            points.push_back(nodes[i]);
            jumps.push_back(coeffs[i]);
        }
    points.push_back(b);

    std::complex<double> stieltjes(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (s_run != std::complex<double>(0.0, 0.0)) {
            const double share = quad_tol * (points[i + 1] - points[i]) / (b - a);
            const QuadratureResult q = integrate(
                [&f](double u) { return std::complex<double>(f.derivative_value(u, 1), 0.0); },
                points[i], points[i + 1], std::max(share, 1e-300));
            detail::absorb(out.diagnostics, q);
            stieltjes -= s_run * q.value;
        }
        if (i < jumps.size()) s_run += jumps[i];
    }
    const std::complex<double> s_b = s_run;

    const std::complex<double> boundary = f.value(b) * s_b - f.value(a) * s_a;
    out.terms.emplace_back("boundary-terms", boundary);
    out.terms.emplace_back("stieltjes-integral", stieltjes);
    out.rhs = boundary + stieltjes;
    return out;
}

namespace detail {

/// Common core of the closed-form first-order identities: the sum of f(m n)
/// over n = r (mod k) with a < m n <= b equals (1/(k m)) * integral of f
/// plus the psi-weighted Stieltjes integral plus endpoint psi terms, all
/// with kernel argument ((x/m) - r)/k.
inline IdentityResult sawtooth_identity(const SmoothFunction& f, double a, double b,
                                        std::int64_t r, std::int64_t k, std::int64_t m,
                                        double quad_tol, const char* op) {
    require_interval(a, b, op);
    if (!(quad_tol > 0.0)) throw Error(std::string(op) + ": quad_tol must be > 0");
    if (k < 1 || r < 0 || r >= k) throw Error(std::string(op) + ": requires 0 <= r < k");
    if (m < 1) throw Error(std::string(op) + ": requires m >= 1");
    const auto kernel_arg = [m, r, k](double x) {
        return (x / static_cast<double>(m) - static_cast<double>(r)) / static_cast<double>(k);
    };
    require_kernel_arg(kernel_arg(a), op);
    require_kernel_arg(kernel_arg(b), op);

    IdentityResult out;
    for (std::int64_t n : residues_in_class(a, b, r, k, m))
        out.lhs += f.value(static_cast<double>(m) * static_cast<double>(n));

    const std::complex<double> main =
        integral_of(f, a, b, quad_tol, out.diagnostics) /
        (static_cast<double>(k) * static_cast<double>(m));
    const std::complex<double> stieltjes =
        weighted_psi_integral(f, a, b, m, r, k, quad_tol, out.diagnostics);
    const std::complex<double> boundary =
        f.value(a) * hooked_psi(0, kernel_arg(a)) - f.value(b) * hooked_psi(0, kernel_arg(b));

    out.terms.emplace_back("main-term", main);
    out.terms.emplace_back("stieltjes-integral", stieltjes);
    out.terms.emplace_back("boundary-terms", boundary);
    out.rhs = main + stieltjes + boundary;
    return out;
}

}  // namespace detail

/// Sum of f(n) over integers in (a, b] against the closed-form sawtooth
/// correction; endpoints must be non-integer.
inline IdentityResult euler_sum(const SmoothFunction& f, double a, double b, double quad_tol) {
    return detail::sawtooth_identity(f, a, b, 0, 1, 1, quad_tol, "euler_sum");
}

/// Same restricted to n = r (mod k).
inline IdentityResult residue_class_sum(const SmoothFunction& f, double a, double b,
                                        std::int64_t r, std::int64_t k, double quad_tol) {
    return detail::sawtooth_identity(f, a, b, r, k, 1, quad_tol, "residue_class_sum");
}

/// Sum of f(m n) over a < m n <= b.
inline IdentityResult dilated_sum(const SmoothFunction& f, double a, double b, std::int64_t m,
                                  double quad_tol) {
    return detail::sawtooth_identity(f, a, b, 0, 1, m, quad_tol, "dilated_sum");
}

/// Sum of f(m n) over a < m n <= b with n = r (mod k).
inline IdentityResult dilated_residue_sum(const SmoothFunction& f, double a, double b,
                                          std::int64_t r, std::int64_t k, std::int64_t m,
                                          double quad_tol) {
    return detail::sawtooth_identity(f, a, b, r, k, m, quad_tol, "dilated_residue_sum");
}

inline constexpr std::int64_t kMaxLatticeCells = 10'000;

/// Double sum of f(m, n) over the integer lattice in (a,b] x (c,d] against
/// the four-integral fractional-part expansion. Corners must be integers;
/// quadrature is tensor Gauss per unit cell (the fractional-part factors are
/// smooth inside each cell), with a lower-order pass supplying the error
/// estimate.
inline IdentityResult euler_sum_2d(const BivariateFunction& f, double a, double b, double c,
                                   double d, double quad_tol) {
    detail::require_interval(a, b, "euler_sum_2d");
    detail::require_interval(c, d, "euler_sum_2d");
    if (!(quad_tol > 0.0)) throw Error("euler_sum_2d: quad_tol must be > 0");
    for (double corner : {a, b, c, d})
        if (!detail::near_integer(corner))
            throw GuardError("non-integer-corner", "euler_sum_2d requires integer corners");
    const std::int64_t ia = std::llround(a), ib = std::llround(b);
    const std::int64_t ic = std::llround(c), id = std::llround(d);
    const std::int64_t cells = (ib - ia) * (id - ic);
    if (cells > kMaxLatticeCells) throw CapacityError("euler_sum_2d: cell budget exceeded");

    IdentityResult out;
    for (std::int64_t n = ic + 1; n <= id; ++n)
        for (std::int64_t m = ia + 1; m <= ib; ++m)
            out.lhs += f.value(static_cast<double>(m), static_cast<double>(n));

    const auto& fine = kernels::detail::gauss_rule(15);
    const auto& coarse = kernels::detail::gauss_rule(6);
    std::complex<double> plain(0.0, 0.0), corr_x(0.0, 0.0), corr_y(0.0, 0.0), corr_xy(0.0, 0.0);
    double delta_total = 0.0;

    const auto cell_pass = [&f](const std::vector<double>& node, const std::vector<double>& weight,
                                std::int64_t i, std::int64_t j, double acc[4]) {
        const int order = static_cast<int>(node.size());
        acc[0] = acc[1] = acc[2] = acc[3] = 0.0;
        for (int p = 0; p < order; ++p) {
            const double fx = 0.5 * (1.0 + node[p]);
            for (int q = 0; q < order; ++q) {
                const double fy = 0.5 * (1.0 + node[q]);
                const double w = 0.25 * weight[p] * weight[q];
                const auto v = f.partials(static_cast<double>(i) + fx, static_cast<double>(j) + fy);
                acc[0] += w * v.f;
                acc[1] += w * v.fx * fx;
                acc[2] += w * v.fy * fy;
                acc[3] += w * v.fxy * fx * fy;
            }
        }
    };

    for (std::int64_t j = ic; j < id; ++j)
        for (std::int64_t i = ia; i < ib; ++i) {
            double hi[4], lo[4];
            cell_pass(fine.node, fine.weight, i, j, hi);
            cell_pass(coarse.node, coarse.weight, i, j, lo);
            plain += hi[0];
            corr_x += hi[1];
            corr_y += hi[2];
            corr_xy += hi[3];
            delta_total += std::abs(hi[0] - lo[0]) + std::abs(hi[1] - lo[1]) +
                           std::abs(hi[2] - lo[2]) + std::abs(hi[3] - lo[3]);
        }

    out.diagnostics.quad_error = delta_total;
    out.diagnostics.quadrature_converged = delta_total <= quad_tol;
    out.diagnostics.panels = cells;
    out.terms.emplace_back("main-term", plain);
    out.terms.emplace_back("frac-x-integral", corr_x);
    out.terms.emplace_back("frac-y-integral", corr_y);
    out.terms.emplace_back("frac-xy-integral", corr_xy);
    out.rhs = plain + corr_x + corr_y + corr_xy;
    return out;
}

}  // namespace finsum::formulae

namespace finsum {
using formulae::abel_sum;
using formulae::dilated_residue_sum;
using formulae::dilated_sum;
using formulae::euler_sum;
using formulae::euler_sum_2d;
using formulae::kMaxLatticeCells;
using formulae::residue_class_sum;
}  // namespace finsum
