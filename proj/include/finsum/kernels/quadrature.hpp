#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "finsum/error.hpp"

namespace finsum::kernels {

inline constexpr int kMaxQuadPanels = 1 << 20;

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    int panels_used = 0;
    bool converged = true;
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
struct GaussRule {
    std::vector<double> node, weight;

    explicit GaussRule(int n) {
        node.resize(n);
        weight.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            node[i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussRule& gauss_rule(int n) {
    static const GaussRule g6(6), g15(15);
    if (n == 6) return g6;
    if (n == 15) return g15;
    throw Error("gauss_rule: unsupported order");
}

struct KahanSum {
    std::complex<double> sum{0.0, 0.0}, carry{0.0, 0.0};
    void add(std::complex<double> v) {
        std::complex<double> y = v - carry;
        std::complex<double> t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

using Integrand = std::function<std::complex<double>(double)>;

inline std::complex<double> gauss15(const Integrand& g, double a, double b) {
    const GaussRule& rule = gauss_rule(15);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < 15; ++i) acc += rule.weight[i] * g(mid + half * rule.node[i]);
    return acc * half;
}

struct Segment {
    double a, b;
    std::complex<double> coarse;
};

/// Shared adaptive bisection core: every segment is compared against its two
/// halves; acceptance adds the refined value. Segments are seeded by the
/// caller (one for plain integrals, oscillation-resolving for Fourier
/// factors).
inline QuadratureResult adapt(const Integrand& g, std::vector<Segment> work, double span,
                              double tol) {
    QuadratureResult out;
    KahanSum value;
    double err_total = 0.0;
    int panels = static_cast<int>(work.size());
    // LIFO processing; deterministic accumulation order.
    while (!work.empty()) {
        Segment s = work.back();
        work.pop_back();
        double mid = 0.5 * (s.a + s.b);
        std::complex<double> left = gauss15(g, s.a, mid);
        std::complex<double> right = gauss15(g, mid, s.b);
        std::complex<double> refined = left + right;
        double err = std::abs(s.coarse - refined);
        double width = s.b - s.a;
        double local_tol = tol * (width / span);
        bool budget_left = panels + 1 <= kMaxQuadPanels;
        bool splittable = mid > s.a && mid < s.b;
        if (err <= local_tol || !budget_left || !splittable) {
            value.add(refined);
            err_total += err;
            if (err > local_tol) out.converged = false;
        } else {
            ++panels;
            work.push_back({mid, s.b, right});
            work.push_back({s.a, mid, left});
        }
    }
    out.value = value.sum;
    out.error_estimate = err_total;
    out.panels_used = panels;
    return out;
}

}  // namespace detail

/// Adaptive composite Gauss-Legendre integral of g over [a,b] with target
/// absolute accuracy tol. Subdivision stops at 2^20 panels; hitting the cap
/// clears `converged` but still returns the best value.
inline QuadratureResult integrate(const detail::Integrand& g, double a, double b, double tol) {
    if (!(b > a)) throw Error("integrate: requires b > a");
    if (!(tol > 0.0)) throw Error("integrate: requires tol > 0");
    return detail::adapt(g, {{a, b, detail::gauss15(g, a, b)}}, b - a, tol);
}

/// Same contract as integrate, but the integrand is split in advance at the
/// given interior breakpoints (kernel discontinuities and similar).
inline QuadratureResult integrate_piecewise(const detail::Integrand& g, double a, double b,
                                            const std::vector<double>& breaks, double tol) {
    if (!(b > a)) throw Error("integrate_piecewise: requires b > a");
    if (!(tol > 0.0)) throw Error("integrate_piecewise: requires tol > 0");
    std::vector<double> pts;
    pts.push_back(a);
    for (double t : breaks)
        if (t > a && t < b) pts.push_back(t);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    QuadratureResult total;
    detail::KahanSum value;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        double share = tol * (pts[i + 1] - pts[i]) / (b - a);
        QuadratureResult piece = integrate(g, pts[i], pts[i + 1], std::max(share, 1e-300));
        value.add(piece.value);
        total.error_estimate += piece.error_estimate;
        total.panels_used += piece.panels_used;
        total.converged = total.converged && piece.converged;
    }
    total.value = value.sum;
    return total;
}

/// Integral of f(u) * e^(2 pi i freq u) over [a,b]. Seeds at least
/// 4 * ceil(|freq| (b-a)) panels so every oscillation is resolved before
/// the adaptive pass takes over.
inline QuadratureResult oscillatory_integrate(const std::function<double(double)>& f, double a,
                                              double b, double freq, double tol) {
    if (!(b > a)) throw Error("oscillatory_integrate: requires b > a");
    if (!(tol > 0.0)) throw Error("oscillatory_integrate: requires tol > 0");
    const double two_pi = 6.283185307179586476925286766559;
    detail::Integrand g = [&f, freq, two_pi](double u) {
        double ang = two_pi * freq * u;
        return std::complex<double>(f(u) * std::cos(ang), f(u) * std::sin(ang));
    };
    long min_panels = 4 * static_cast<long>(std::ceil(std::abs(freq) * (b - a)));
    long seeds = std::max<long>(1, min_panels);
    if (seeds > kMaxQuadPanels)
        throw CapacityError("oscillatory_integrate: oscillation count needs more than 2^20 panels");
    std::vector<detail::Segment> work;
    work.reserve(seeds);
    double h = (b - a) / static_cast<double>(seeds);
    // Pushed in reverse so the LIFO core walks left to right.
    for (long i = seeds; i-- > 0;) {
        double lo = a + h * static_cast<double>(i);
        double hi = (i + 1 == seeds) ? b : a + h * static_cast<double>(i + 1);
        work.push_back({lo, hi, detail::gauss15(g, lo, hi)});
    }
    return detail::adapt(g, std::move(work), b - a, tol);
}

}  // namespace finsum::kernels

namespace finsum {
using kernels::integrate;
using kernels::integrate_piecewise;
using kernels::kMaxQuadPanels;
using kernels::oscillatory_integrate;
using kernels::QuadratureResult;
}  // namespace finsum
