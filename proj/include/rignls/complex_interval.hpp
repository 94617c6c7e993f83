#pragma once

#include <complex>

#include "rignls/interval.hpp"

namespace rignls {

// Complex values as axis-aligned rectangles. Magnitude is max(|Re|, |Im|).
struct CInterval {
    Interval re{0.0};
    Interval im{0.0};

    CInterval() = default;
    CInterval(Interval r) : re(r), im(0.0) {}  // NOLINT
    CInterval(double r) : re(r), im(0.0) {}    // NOLINT
    CInterval(Interval r, Interval i) : re(r), im(i) {}
    CInterval(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

    std::complex<double> mid() const { return {re.mid(), im.mid()}; }
    bool is_real() const { return im.lo() == 0 && im.hi() == 0; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool contains(std::complex<double> z) const { return re.contains(z.real()) && im.contains(z.imag()); }

    CInterval& operator+=(const CInterval& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    CInterval& operator-=(const CInterval& b) {
        re -= b.re;
        im -= b.im;
        return *this;
    }
};

inline CInterval operator+(CInterval a, const CInterval& b) { return a += b; }
inline CInterval operator-(CInterval a, const CInterval& b) { return a -= b; }
inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }

inline CInterval operator*(const CInterval& a, const CInterval& b) {
    if (a.is_real() && b.is_real()) return {a.re * b.re, Interval(0.0)};
    if (b.is_real()) return {a.re * b.re, a.im * b.re};
    if (a.is_real()) return {a.re * b.re, a.re * b.im};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval operator*(const Interval& a, const CInterval& b) { return {a * b.re, a * b.im}; }
inline CInterval operator*(const CInterval& a, const Interval& b) { return {a.re * b, a.im * b}; }

CInterval operator/(const CInterval& a, const CInterval& b);

inline CInterval& operator*=(CInterval& a, const CInterval& b) { return a = a * b; }

inline CInterval conj(const CInterval& a) { return {a.re, -a.im}; }

// exact range of max(|Re z|, |Im z|) over the rectangle
inline Interval mag(const CInterval& z) {
    return Interval(std::max(z.re.mig(), z.im.mig()), std::max(z.re.mag(), z.im.mag()));
}
// upper bound of |Re z| + |Im z|
inline double abs1(const CInterval& z) { return rnd::add_up(z.re.mag(), z.im.mag()); }
// upper bound of the Euclidean modulus
inline double modulus_up(const CInterval& z) {
    double a = z.re.mag(), b = z.im.mag();
    return rnd::sqrt_up(rnd::add_up(rnd::mul_up(a, a), rnd::mul_up(b, b)));
}
inline Interval norm2(const CInterval& z) { return sqr(z.re) + sqr(z.im); }

}  // namespace rignls
