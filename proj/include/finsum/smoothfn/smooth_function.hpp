#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "finsum/error.hpp"
#include "finsum/smoothfn/ast.hpp"
#include "finsum/smoothfn/parse.hpp"
#include "finsum/smoothfn/print.hpp"
#include "finsum/smoothfn/tape.hpp"

namespace finsum::smoothfn {

inline constexpr int kMaxDerivativeOrder = 16;

namespace detail {

inline const double* factorials() {
    static const auto table = [] {
        std::array<double, kMaxJetCoeffs> f{};
        f[0] = 1.0;
        for (int i = 1; i < kMaxJetCoeffs; ++i) f[i] = f[i - 1] * static_cast<double>(i);
        return f;
    }();
    return table.data();
}

}  // namespace detail

struct GoodCheck {
    bool good = false;
    std::string reason;
};

/// A univariate function given by an expression, with a declared domain and a
/// declared highest derivative order. Evaluation is pure; one instance may be
/// used from many threads.
class SmoothFunction {
public:
    SmoothFunction(Expression expr, double lo, double hi, int max_order = kMaxDerivativeOrder)
        : expr_(std::move(expr)), tape_(compile(expr_)), lo_(lo), hi_(hi), max_order_(max_order) {
        if (!(lo < hi)) throw Error("SmoothFunction: domain requires lo < hi");
        if (max_order < 0 || max_order > kMaxDerivativeOrder)
            throw Error("SmoothFunction: max_order out of range");
        if (tape_.uses_y) throw Error("SmoothFunction: univariate expression cannot use y");
    }

    static SmoothFunction from_source(std::string_view source, double lo, double hi,
                                      int max_order = kMaxDerivativeOrder) {
        return SmoothFunction(parse(source), lo, hi, max_order);
    }

    const Expression& expression() const { return expr_; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }
    int max_order() const { return max_order_; }
    std::string source() const { return print(expr_); }

    double value(double x) const {
        check_point(x);
        const double v = eval_tape<double>(tape_, x, 0.0, 1.0);
        if (!std::isfinite(v)) throw DomainError("function value is not finite at x=" + std::to_string(x));
        return v;
    }

    /// All derivatives f^(0..order)(x) from a single Taylor-mode pass.
    std::vector<double> derivatives_at(double x, int order) const {
        check_point(x);
        if (order < 0 || order > max_order_)
            throw Error("derivatives_at: order exceeds max_order");
        const int len = order + 1;
        const Jet jx = Jet::variable(x, len);
        const Jet dummy = Jet::constant(0.0, len);
        const Jet out = eval_tape<Jet>(tape_, jx, dummy, Jet::constant(1.0, len));
        std::vector<double> d(static_cast<std::size_t>(len));
        const double* fact = detail::factorials();
        for (int j = 0; j < len; ++j) {
            d[static_cast<std::size_t>(j)] = out.c[j] * fact[j];
            if (!std::isfinite(d[static_cast<std::size_t>(j)]))
                throw DomainError("derivative order " + std::to_string(j) +
                                  " is not finite at x=" + std::to_string(x));
        }
        return d;
    }

    /// Single derivative without the vector allocation; quadrature loops over
    /// f^(order) call this per node.
    double derivative_value(double x, int order) const {
        check_point(x);
        if (order < 0 || order > max_order_)
            throw Error("derivative_value: order exceeds max_order");
        const int len = order + 1;
        const Jet out =
            eval_tape<Jet>(tape_, Jet::variable(x, len), Jet::constant(0.0, len), Jet::constant(1.0, len));
        const double v = out.c[order] * detail::factorials()[order];
        if (!std::isfinite(v))
            throw DomainError("derivative order " + std::to_string(order) +
                              " is not finite at x=" + std::to_string(x));
        return v;
    }

    /// Sufficient condition used throughout: f is C^1 with a finite
    /// derivative on the interval (checked by sampling, endpoints included).
    GoodCheck is_good_on(double lo, double hi, int samples = 129) const {
        if (max_order_ < 1)
            return {false, "max_order is 0, so no derivative is available"};
        for (int i = 0; i < samples; ++i) {
            const double t = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
            try {
                (void)derivatives_at_unchecked(t, 1);
            } catch (const DomainError& e) {
                return {false, std::string("f' fails at x=") + std::to_string(t) + ": " + e.what()};
            }
        }
        return {true, "f is C^1 with finite f' at all sampled points of [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]"};
    }

private:
    void check_point(double x) const {
        const double slack = 1e-9 * std::max(1.0, std::max(std::abs(lo_), std::abs(hi_)));
        if (x < lo_ - slack || x > hi_ + slack)
            throw DomainError("x=" + std::to_string(x) + " outside domain [" +
                              std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }

    std::vector<double> derivatives_at_unchecked(double x, int order) const {
        const int len = order + 1;
        const Jet jx = Jet::variable(x, len);
        const Jet out = eval_tape<Jet>(tape_, jx, Jet::constant(0.0, len), Jet::constant(1.0, len));
        std::vector<double> d(static_cast<std::size_t>(len));
        const double* fact = detail::factorials();
        for (int j = 0; j < len; ++j) {
            d[static_cast<std::size_t>(j)] = out.c[j] * fact[j];
            if (!std::isfinite(d[static_cast<std::size_t>(j)]))
                throw DomainError("derivative order " + std::to_string(j) + " is not finite");
        }
        return d;
    }

    Expression expr_;
    Tape tape_;
    double lo_, hi_;
    int max_order_;
};

/// A function of (x, y) on a rectangle, exposing the mixed partials
/// (f, f_x, f_y, f_xy) that the two-variable lattice identity integrates.
class BivariateFunction {
public:
    BivariateFunction(Expression expr, double xlo, double xhi, double ylo, double yhi)
        : expr_(std::move(expr)), tape_(compile(expr_)), xlo_(xlo), xhi_(xhi), ylo_(ylo), yhi_(yhi) {
        if (!(xlo < xhi) || !(ylo < yhi)) throw Error("BivariateFunction: empty rectangle");
    }

    static BivariateFunction from_source(std::string_view source, double xlo, double xhi,
                                         double ylo, double yhi) {
        return BivariateFunction(parse_bivariate(source), xlo, xhi, ylo, yhi);
    }

    const Expression& expression() const { return expr_; }
    std::string source() const { return print(expr_); }
    double xlo() const { return xlo_; }
    double xhi() const { return xhi_; }
    double ylo() const { return ylo_; }
    double yhi() const { return yhi_; }

    Jet11 partials(double x, double y) const {
        check_point(x, y);
        const Jet11 out = eval_tape<Jet11>(tape_, Jet11::variable_x(x), Jet11::variable_y(y),
                                           Jet11::constant(1.0));
        if (!std::isfinite(out.f) || !std::isfinite(out.fx) || !std::isfinite(out.fy) ||
            !std::isfinite(out.fxy))
            throw DomainError("partial derivatives not finite at (" + std::to_string(x) + ", " +
                              std::to_string(y) + ")");
        return out;
    }

    double value(double x, double y) const { return partials(x, y).f; }

private:
    void check_point(double x, double y) const {
        const double sx = 1e-9 * std::max(1.0, std::max(std::abs(xlo_), std::abs(xhi_)));
        const double sy = 1e-9 * std::max(1.0, std::max(std::abs(ylo_), std::abs(yhi_)));
        if (x < xlo_ - sx || x > xhi_ + sx || y < ylo_ - sy || y > yhi_ + sy)
            throw DomainError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                              ") outside rectangle");
    }

    Expression expr_;
    Tape tape_;
    double xlo_, xhi_, ylo_, yhi_;
};

}  // namespace finsum::smoothfn

namespace finsum {
using smoothfn::BivariateFunction;
using smoothfn::GoodCheck;
using smoothfn::SmoothFunction;
}  // namespace finsum
