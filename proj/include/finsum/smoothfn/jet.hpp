#pragma once

#include <array>
#include <cmath>

#include "finsum/error.hpp"

namespace finsum::smoothfn {

inline constexpr int kMaxJetCoeffs = 18;

/// Truncated Taylor series u(t) = sum_j c[j] t^j with len coefficients.
/// Arithmetic propagates coefficients exactly through +,-,*,/ and through
/// the elementary functions via the standard convolution recurrences, so one
/// evaluation yields every derivative order at once (derivative j equals
/// c[j] * j!).
struct Jet {
    int len = 1;
    // Deliberately left uninitialized: every operation writes indices < len
    // and the tail is never read, which keeps the evaluator stack cheap.
    std::array<double, kMaxJetCoeffs> c;

    static Jet constant(double v, int len) {
        Jet j;
        j.len = len;
        for (int i = 0; i < len; ++i) j.c[i] = 0.0;
        j.c[0] = v;
        return j;
    }

    static Jet variable(double v, int len) {
        Jet j = constant(v, len);
        if (len > 1) j.c[1] = 1.0;
        return j;
    }
};

namespace jetops {

inline Jet add(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int i = 0; i < a.len; ++i) r.c[i] += b.c[i];
    return r;
}

inline Jet sub(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int i = 0; i < a.len; ++i) r.c[i] -= b.c[i];
    return r;
}

inline Jet neg(const Jet& a) {
    Jet r = a;
    for (int i = 0; i < a.len; ++i) r.c[i] = -r.c[i];
    return r;
}

inline Jet mul(const Jet& a, const Jet& b) {
    Jet r;
    r.len = a.len;
    for (int k = 0; k < a.len; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
        r.c[k] = s;
    }
    return r;
}

inline Jet div(const Jet& a, const Jet& b) {
    if (b.c[0] == 0.0) throw DomainError("division by zero");
    Jet r;
    r.len = a.len;
    for (int k = 0; k < a.len; ++k) {
        double s = a.c[k];
        for (int j = 0; j < k; ++j) s -= r.c[j] * b.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}

inline Jet exp(const Jet& a) {
    Jet r;
    r.len = a.len;
    r.c[0] = std::exp(a.c[0]);
    for (int k = 1; k < a.len; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
        r.c[k] = s / k;
    }
    return r;
}

inline Jet log(const Jet& a) {
    if (!(a.c[0] > 0.0)) throw DomainError("log of non-positive value");
    Jet r;
    r.len = a.len;
    r.c[0] = std::log(a.c[0]);
    for (int k = 1; k < a.len; ++k) {
        double s = k * a.c[k];
        for (int j = 1; j < k; ++j) s -= j * r.c[j] * a.c[k - j];
        r.c[k] = s / (k * a.c[0]);
    }
    return r;
}

inline void sin_cos(const Jet& a, Jet& s, Jet& c) {
    s.len = a.len;
    c.len = a.len;
    s.c[0] = std::sin(a.c[0]);
    c.c[0] = std::cos(a.c[0]);
    for (int k = 1; k < a.len; ++k) {
        double as = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            as += j * a.c[j] * c.c[k - j];
            ac += j * a.c[j] * s.c[k - j];
        }
        s.c[k] = as / k;
        c.c[k] = -ac / k;
    }
}

inline Jet sin(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c);
    return s;
}

inline Jet cos(const Jet& a) {
    Jet s, c;
    sin_cos(a, s, c);
    return c;
}

inline Jet sqrt(const Jet& a) {
    if (a.len > 1 && !(a.c[0] > 0.0))
        throw DomainError("sqrt derivative requires a positive argument");
    if (a.c[0] < 0.0) throw DomainError("sqrt of negative value");
    Jet r;
    r.len = a.len;
    r.c[0] = std::sqrt(a.c[0]);
    for (int k = 1; k < a.len; ++k) {
        double s = a.c[k];
        for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
        r.c[k] = s / (2.0 * r.c[0]);
    }
    return r;
}

/// Integer power by binary exponentiation over the truncated product, which
/// keeps polynomial inputs exact (order-j coefficients of a degree-d
/// polynomial power are exactly zero for j > d).
inline Jet pow_int(const Jet& a, int e) {
    if (e < 0) return div(Jet::constant(1.0, a.len), pow_int(a, -e));
    Jet acc = Jet::constant(1.0, a.len);
    Jet base = a;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
    }
    return acc;
}

}  // namespace jetops

/// Bivariate jet carrying (f, f_x, f_y, f_xy): the exact set of mixed
/// partials the two-variable lattice-sum formula integrates.
struct Jet11 {
    double f = 0.0, fx = 0.0, fy = 0.0, fxy = 0.0;

    static Jet11 constant(double v) { return {v, 0.0, 0.0, 0.0}; }
    static Jet11 variable_x(double v) { return {v, 1.0, 0.0, 0.0}; }
    static Jet11 variable_y(double v) { return {v, 0.0, 1.0, 0.0}; }
};

namespace jetops {

inline Jet11 add(const Jet11& a, const Jet11& b) {
    return {a.f + b.f, a.fx + b.fx, a.fy + b.fy, a.fxy + b.fxy};
}

inline Jet11 sub(const Jet11& a, const Jet11& b) {
    return {a.f - b.f, a.fx - b.fx, a.fy - b.fy, a.fxy - b.fxy};
}

inline Jet11 neg(const Jet11& a) { return {-a.f, -a.fx, -a.fy, -a.fxy}; }

inline Jet11 mul(const Jet11& a, const Jet11& b) {
    return {a.f * b.f, a.f * b.fx + a.fx * b.f, a.f * b.fy + a.fy * b.f,
            a.f * b.fxy + a.fx * b.fy + a.fy * b.fx + a.fxy * b.f};
}

inline Jet11 div(const Jet11& a, const Jet11& b) {
    if (b.f == 0.0) throw DomainError("division by zero");
    Jet11 q;
    q.f = a.f / b.f;
    q.fx = (a.fx - q.f * b.fx) / b.f;
    q.fy = (a.fy - q.f * b.fy) / b.f;
    q.fxy = (a.fxy - q.fx * b.fy - q.fy * b.fx - q.f * b.fxy) / b.f;
    return q;
}

/// Chain rule for a scalar function with known first two derivatives.
inline Jet11 chain(const Jet11& u, double g0, double g1, double g2) {
    return {g0, g1 * u.fx, g1 * u.fy, g1 * u.fxy + g2 * u.fx * u.fy};
}

inline Jet11 exp(const Jet11& u) {
    const double e = std::exp(u.f);
    return chain(u, e, e, e);
}

inline Jet11 log(const Jet11& u) {
    if (!(u.f > 0.0)) throw DomainError("log of non-positive value");
    return chain(u, std::log(u.f), 1.0 / u.f, -1.0 / (u.f * u.f));
}

inline Jet11 sin(const Jet11& u) {
    const double s = std::sin(u.f), c = std::cos(u.f);
    return chain(u, s, c, -s);
}

inline Jet11 cos(const Jet11& u) {
    const double s = std::sin(u.f), c = std::cos(u.f);
    return chain(u, c, -s, -c);
}

inline Jet11 sqrt(const Jet11& u) {
    if (!(u.f > 0.0)) throw DomainError("sqrt derivative requires a positive argument");
    const double r = std::sqrt(u.f);
    return chain(u, r, 0.5 / r, -0.25 / (r * u.f));
}

inline Jet11 pow_int(const Jet11& a, int e) {
    if (e < 0) return div(Jet11::constant(1.0), pow_int(a, -e));
    Jet11 acc = Jet11::constant(1.0);
    Jet11 base = a;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
    }
    return acc;
}

}  // namespace jetops

}  // namespace finsum::smoothfn
