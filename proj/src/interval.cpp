#include "rignls/interval.hpp"

#include <cstdio>

#include "rignls/complex_interval.hpp"

namespace rignls {

namespace {
// libm exp/log/pow are faithful to well under 1 ulp on glibc; 4 ulp covers other platforms
constexpr int kLibmPad = 4;
}  // namespace

Interval sqrt(const Interval& x) {
    if (x.hi() < 0) throw IntervalError("sqrt of a negative interval");
    double lo = x.lo() <= 0 ? 0.0 : rnd::sqrt_down(x.lo());
    return Interval(lo, rnd::sqrt_up(x.hi()));
}

Interval exp(const Interval& x) {
    double lo = std::max(0.0, rnd::pad_down(std::exp(x.lo()), kLibmPad));
    double hi = rnd::pad_up(std::exp(x.hi()), kLibmPad);
    return Interval(lo, hi);
}

Interval log(const Interval& x) {
    if (x.lo() <= 0) throw IntervalError("log of a non-positive interval");
    if (x.lo() == 1 && x.hi() == 1) return Interval(0.0);
    return Interval(rnd::pad_down(std::log(x.lo()), kLibmPad), rnd::pad_up(std::log(x.hi()), kLibmPad));
}

Interval pow(const Interval& x, int n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return Interval(1.0) / pow(x, -n);
    Interval base = x, acc(1.0);
    bool first = true;
    for (unsigned e = static_cast<unsigned>(n); e; e >>= 1) {
        if (e & 1u) {
            acc = first ? base : acc * base;
            first = false;
        }
        if (e > 1) base = sqr(base);
    }
    return acc;
}

Interval pow(const Interval& x, double s) {
    if (s == std::floor(s) && std::fabs(s) <= 64) return pow(x, static_cast<int>(s));
    if (x.lo() <= 0) throw IntervalError("non-integer power of a non-positive interval");
    double a = std::pow(x.lo(), s), b = std::pow(x.hi(), s);
    if (s < 0) std::swap(a, b);
    return Interval(std::max(0.0, rnd::pad_down(a, kLibmPad)), rnd::pad_up(b, kLibmPad));
}

Interval ipow(long k, double s) { return pow(Interval(static_cast<double>(k)), s); }

Interval pi() { return Interval(0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1); }
Interval pi_squared() { return Interval(0x1.3bd3cc9be45dep+3, 0x1.3bd3cc9be45dfp+3); }

std::string to_string(const Interval& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
    return buf;
}

CInterval operator/(const CInterval& a, const CInterval& b) {
    if (b.is_real()) return {a.re / b.re, a.im / b.re};
    Interval d = norm2(b);
    if (d.contains_zero()) throw IntervalError("complex division by a rectangle containing zero");
    CInterval n = a * conj(b);
    return {n.re / d, n.im / d};
}

}  // namespace rignls
