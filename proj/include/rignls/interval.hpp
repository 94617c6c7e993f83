#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rignls {

struct IntervalError : std::domain_error {
    using std::domain_error::domain_error;
};

// Directed rounding without touching the FPU mode: evaluate in round-to-nearest,
// recover the exact error with an error-free transformation and step one ulp
// only when the rounded result lies on the wrong side.
namespace rnd {

constexpr double kInf = std::numeric_limits<double>::infinity();
// below this magnitude fma/TwoSum residuals may be inexact, so step unconditionally
constexpr double kTiny = 0x1p-960;

inline double prev(double x) { return std::nextafter(x, -kInf); }
inline double next(double x) { return std::nextafter(x, kInf); }

inline double add_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) {
        if (std::isfinite(a) && std::isfinite(b)) return s > 0 ? DBL_MAX : s;
        return s;
    }
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e < 0 ? prev(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) {
        if (std::isfinite(a) && std::isfinite(b)) return s < 0 ? -DBL_MAX : s;
        return s;
    }
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e > 0 ? next(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    if (a == 0 || b == 0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return (p > 0 && std::isfinite(a) && std::isfinite(b)) ? DBL_MAX : p;
    if (std::fabs(p) < kTiny) return prev(p);
    double e = std::fma(a, b, -p);
    return e < 0 ? prev(p) : p;
}

inline double mul_up(double a, double b) {
    if (a == 0 || b == 0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return (p < 0 && std::isfinite(a) && std::isfinite(b)) ? -DBL_MAX : p;
    if (std::fabs(p) < kTiny) return next(p);
    double e = std::fma(a, b, -p);
    return e > 0 ? next(p) : p;
}

inline double div_down(double a, double b) {
    if (a == 0) return 0.0;
    double q = a / b;
    if (!std::isfinite(q)) return (q > 0 && std::isfinite(a)) ? DBL_MAX : q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return prev(q);
    double r = std::fma(-q, b, a);
    if (r == 0) return q;
    return ((r < 0) != (b < 0)) ? prev(q) : q;
}

inline double div_up(double a, double b) {
    if (a == 0) return 0.0;
    double q = a / b;
    if (!std::isfinite(q)) return (q < 0 && std::isfinite(a)) ? -DBL_MAX : q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next(q);
    double r = std::fma(-q, b, a);
    if (r == 0) return q;
    return ((r < 0) == (b < 0)) ? next(q) : q;
}

inline double sqrt_down(double x) {
    double s = std::sqrt(x);
    if (s == 0 || !std::isfinite(s)) return s;
    double r = std::fma(-s, s, x);
    return r < 0 ? prev(s) : s;
}

inline double sqrt_up(double x) {
    double s = std::sqrt(x);
    if (s == 0 || !std::isfinite(s)) return s;
    double r = std::fma(-s, s, x);
    return r > 0 ? next(s) : s;
}

inline double pad_down(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = prev(x);
    return x;
}
inline double pad_up(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = next(x);
    return x;
}

}  // namespace rnd

class Interval {
public:
    constexpr Interval() = default;
    constexpr Interval(double x) : lo_(x), hi_(x) {}  // NOLINT: point promotion is intended
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw IntervalError("invalid interval endpoints");
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return lo_ == hi_ ? lo_ : 0.5 * lo_ + 0.5 * hi_; }
    double width() const { return rnd::sub_up(hi_, lo_); }
    // radius about mid(), rounded up so that [mid-rad, mid+rad] covers the interval
    double rad() const {
        double m = mid();
        return std::max(rnd::sub_up(hi_, m), rnd::sub_up(m, lo_));
    }
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const {
        if (lo_ <= 0 && hi_ >= 0) return 0.0;
        return std::min(std::fabs(lo_), std::fabs(hi_));
    }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
    bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
    bool is_point() const { return lo_ == hi_; }

    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }
    // symmetric ball [c - r, c + r] with outward rounding
    static Interval ball(double c, double r) {
        return Interval(rnd::sub_down(c, r), rnd::add_up(c, r));
    }

    Interval& operator+=(const Interval& b) {
        lo_ = rnd::add_down(lo_, b.lo_);
        hi_ = rnd::add_up(hi_, b.hi_);
        return *this;
    }
    Interval& operator-=(const Interval& b) {
        double l = rnd::sub_down(lo_, b.hi_);
        hi_ = rnd::sub_up(hi_, b.lo_);
        lo_ = l;
        return *this;
    }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline Interval operator+(Interval a, const Interval& b) { return a += b; }
inline Interval operator-(Interval a, const Interval& b) { return a -= b; }
inline Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

inline Interval operator*(const Interval& a, const Interval& b) {
    double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (al >= 0 && bl >= 0) return Interval(rnd::mul_down(al, bl), rnd::mul_up(ah, bh));
    if (al == ah) {
        if (al >= 0) return Interval(rnd::mul_down(al, bl), rnd::mul_up(al, bh));
        return Interval(rnd::mul_down(al, bh), rnd::mul_up(al, bl));
    }
    if (bl == bh) {
        if (bl >= 0) return Interval(rnd::mul_down(al, bl), rnd::mul_up(ah, bl));
        return Interval(rnd::mul_down(ah, bl), rnd::mul_up(al, bl));
    }
    double lo = std::min(std::min(rnd::mul_down(al, bl), rnd::mul_down(al, bh)),
                         std::min(rnd::mul_down(ah, bl), rnd::mul_down(ah, bh)));
    double hi = std::max(std::max(rnd::mul_up(al, bl), rnd::mul_up(al, bh)),
                         std::max(rnd::mul_up(ah, bl), rnd::mul_up(ah, bh)));
    return Interval(lo, hi);
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw IntervalError("division by an interval containing zero");
    double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    double lo = std::min(std::min(rnd::div_down(al, bl), rnd::div_down(al, bh)),
                         std::min(rnd::div_down(ah, bl), rnd::div_down(ah, bh)));
    double hi = std::max(std::max(rnd::div_up(al, bl), rnd::div_up(al, bh)),
                         std::max(rnd::div_up(ah, bl), rnd::div_up(ah, bh)));
    return Interval(lo, hi);
}

inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

inline Interval abs(const Interval& a) { return Interval(a.mig(), a.mag()); }
inline Interval sqr(const Interval& a) {
    double lo = a.mig(), hi = a.mag();
    return Interval(rnd::mul_down(lo, lo), rnd::mul_up(hi, hi));
}
inline Interval max(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}
inline Interval min(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}
inline Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    if (lo > hi) throw IntervalError("empty intersection");
    return Interval(lo, hi);
}

// a + b, throwing if the sum is not exactly representable; exponent shifts such as s - 1 go through here
inline double exact_add(double a, double b) {
    double lo = rnd::add_down(a, b), hi = rnd::add_up(a, b);
    if (lo != hi) throw IntervalError("exponent arithmetic is not exact");
    return lo;
}

Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
// x^s for x > 0 and a real exponent given exactly as a binary64 number
Interval pow(const Interval& x, double s);
Interval pow(const Interval& x, int n);
Interval pi();
Interval pi_squared();

// k^s for integer k >= 1, exact when s is a small integer
Interval ipow(long k, double s);

std::string to_string(const Interval& x);

}  // namespace rignls
