#pragma once

#include <cmath>
#include <ostream>

namespace flowem {

/// Value and first three time-derivatives of a quantity at a point.
///
/// Arithmetic propagates derivatives exactly (Leibniz rule for products,
/// Faa di Bruno through order three for compositions), so jets of expressions
/// are exact up to roundoff — there is no truncation step.
struct Jet3 {
    double v = 0.0;   // value
    double d1 = 0.0;  // first derivative
    double d2 = 0.0;  // second derivative
    double d3 = 0.0;  // third derivative

    static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }

    /// Jet of the time variable itself: (t, 1, 0, 0).
    static constexpr Jet3 time(double t) { return {t, 1.0, 0.0, 0.0}; }

    friend constexpr bool operator==(const Jet3&, const Jet3&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Jet3& j) {
        return os << "(" << j.v << ", " << j.d1 << ", " << j.d2 << ", " << j.d3 << ")";
    }
};

constexpr Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

// (fg)''' = f'''g + 3f''g' + 3f'g'' + fg'''
constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

constexpr Jet3 operator*(double s, const Jet3& a) { return {s * a.v, s * a.d1, s * a.d2, s * a.d3}; }
constexpr Jet3 operator*(const Jet3& a, double s) { return s * a; }
constexpr Jet3 operator+(const Jet3& a, double s) { return {a.v + s, a.d1, a.d2, a.d3}; }
constexpr Jet3 operator+(double s, const Jet3& a) { return a + s; }
constexpr Jet3 operator-(const Jet3& a, double s) { return {a.v - s, a.d1, a.d2, a.d3}; }
constexpr Jet3 operator-(double s, const Jet3& a) { return {s - a.v, -a.d1, -a.d2, -a.d3}; }

/// Composition h = phi(f) with phi given by its value and first three
/// derivatives at f.v.  Faa di Bruno through order three:
///   h'   = phi1 f'
///   h''  = phi2 f'^2 + phi1 f''
///   h''' = phi3 f'^3 + 3 phi2 f' f'' + phi1 f'''
constexpr Jet3 compose(double phi0, double phi1, double phi2, double phi3, const Jet3& f) {
    return {phi0,
            phi1 * f.d1,
            phi2 * f.d1 * f.d1 + phi1 * f.d2,
            phi3 * f.d1 * f.d1 * f.d1 + 3.0 * phi2 * f.d1 * f.d2 + phi1 * f.d3};
}

/// 1/f. Caller must ensure f.v != 0.
constexpr Jet3 reciprocal(const Jet3& f) {
    const double i1 = 1.0 / f.v;
    const double i2 = i1 * i1;
    return compose(i1, -i2, 2.0 * i2 * i1, -6.0 * i2 * i2, f);
}

/// a/b via jet reciprocal. Caller must check b.v != 0.
constexpr Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
constexpr Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }
constexpr Jet3 operator/(double s, const Jet3& b) { return s * reciprocal(b); }

inline Jet3 sin(const Jet3& f) {
    const double s = std::sin(f.v), c = std::cos(f.v);
    return compose(s, c, -s, -c, f);
}

inline Jet3 cos(const Jet3& f) {
    const double s = std::sin(f.v), c = std::cos(f.v);
    return compose(c, -s, -c, s, f);
}

inline Jet3 exp(const Jet3& f) {
    const double e = std::exp(f.v);
    return compose(e, e, e, e, f);
}

/// Caller must ensure f.v > 0.
inline Jet3 sqrt(const Jet3& f) {
    const double r = std::sqrt(f.v);
    const double phi1 = 0.5 / r;
    const double phi2 = -0.5 * phi1 / f.v;
    const double phi3 = -1.5 * phi2 / f.v;
    return compose(r, phi1, phi2, phi3, f);
}

/// Caller must ensure f.v > 0.
inline Jet3 log(const Jet3& f) {
    const double i1 = 1.0 / f.v;
    return compose(std::log(f.v), i1, -i1 * i1, 2.0 * i1 * i1 * i1, f);
}

/// f^n for integer n by repeated squaring; total for every f when n >= 0.
constexpr Jet3 powi(const Jet3& f, long n) {
    if (n < 0) return reciprocal(powi(f, -n));  // caller must check f.v != 0
    Jet3 result = Jet3::constant(1.0);
    Jet3 base = f;
    for (long k = n; k > 0; k >>= 1) {
        if (k & 1) result = result * base;
        base = base * base;
    }
    return result;
}

/// f^p with constant real exponent. Integer p uses the exact product path;
/// otherwise caller must ensure f.v > 0.
inline Jet3 pow(const Jet3& f, double p) {
    if (p == std::floor(p) && std::abs(p) <= 64.0) return powi(f, static_cast<long>(p));
    const double phi0 = std::pow(f.v, p);
    const double phi1 = p * std::pow(f.v, p - 1.0);
    const double phi2 = p * (p - 1.0) * std::pow(f.v, p - 2.0);
    const double phi3 = p * (p - 1.0) * (p - 2.0) * std::pow(f.v, p - 3.0);
    return compose(phi0, phi1, phi2, phi3, f);
}

inline bool isfinite(const Jet3& f) {
    return std::isfinite(f.v) && std::isfinite(f.d1) && std::isfinite(f.d2) && std::isfinite(f.d3);
}

/// Triple of jets for the components of a time-dependent vector.
struct Jet3Vec {
    Jet3 x, y, z;
};

}  // namespace flowem
