#pragma once

#include <quadmath.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "rignls/interval.hpp"

// Random interval operations checked against binary128 evaluations at sample points.
namespace fuzz {

using q128 = __float128;

struct Result {
    long ops = 0;
    long checks = 0;
    long violations = 0;
    std::string first;
};

inline std::string qstr(q128 x) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.36Qg", x);
    return buf;
}

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    double number(int emin, int emax) {
        std::uniform_real_distribution<double> mant(1.0, 2.0);
        std::uniform_int_distribution<int> ex(emin, emax);
        std::bernoulli_distribution neg(0.5);
        double v = std::ldexp(mant(rng_), ex(rng_));
        return neg(rng_) ? -v : v;
    }

    rignls::Interval interval(int emin, int emax, bool positive = false) {
        double a = number(emin, emax);
        if (positive) a = std::fabs(a);
        std::uniform_int_distribution<int> kind(0, 3);
        int k = kind(rng_);
        if (k == 0) return rignls::Interval(a);
        std::uniform_int_distribution<int> rel(1, 52);
        double w = std::fabs(a) * std::ldexp(uniform(), -rel(rng_));
        if (k == 3) w = std::fabs(a) * uniform();
        double lo = a, hi = a + w;
        if (positive && lo <= 0) lo = std::fabs(a) * 0.5;
        return rignls::Interval(lo, hi);
    }

    double inside(const rignls::Interval& x) {
        std::uniform_int_distribution<int> pick(0, 3);
        int k = pick(rng_);
        if (k == 0) return x.lo();
        if (k == 1) return x.hi();
        double t = x.lo() + (x.hi() - x.lo()) * uniform();
        return std::min(std::max(t, x.lo()), x.hi());
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    int op(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

private:
    std::mt19937_64 rng_;
};

inline void check(Result& res, const char* name, const rignls::Interval& out, q128 ref, double x, double y) {
    ++res.checks;
    if (static_cast<q128>(out.lo()) <= ref && ref <= static_cast<q128>(out.hi())) return;
    ++res.violations;
    if (res.first.empty()) {
        std::ostringstream ss;
        ss.precision(17);
        ss << name << "(" << x << ", " << y << ") = " << qstr(ref) << " not in [" << out.lo() << ", " << out.hi() << "]";
        res.first = ss.str();
    }
}

inline Result run(long nops, unsigned seed) {
    using rignls::Interval;
    Gen g(seed);
    Result res;
    for (long i = 0; i < nops; ++i) {
        ++res.ops;
        int op = g.op(9);
        if (op <= 3) {
            Interval a = g.interval(-40, 40), b = g.interval(-40, 40);
            if (op == 3 && b.contains_zero()) b = Interval(0.5, 2.0);
            Interval out = op == 0 ? a + b : op == 1 ? a - b : op == 2 ? a * b : a / b;
            const char* name = op == 0 ? "add" : op == 1 ? "sub" : op == 2 ? "mul" : "div";
            for (int t = 0; t < 3; ++t) {
                double x = g.inside(a), y = g.inside(b);
                q128 qx = x, qy = y;
                q128 ref = op == 0 ? qx + qy : op == 1 ? qx - qy : op == 2 ? qx * qy : qx / qy;
                check(res, name, out, ref, x, y);
            }
        } else if (op == 4) {
            Interval a = g.interval(-300, 300, true);
            Interval out = rignls::sqrt(a);
            for (int t = 0; t < 3; ++t) {
                double x = g.inside(a);
                check(res, "sqrt", out, sqrtq(static_cast<q128>(x)), x, 0);
            }
        } else if (op == 5) {
            Interval a = g.interval(-6, 5);
            Interval out = rignls::exp(a);
            for (int t = 0; t < 3; ++t) {
                double x = g.inside(a);
                check(res, "exp", out, expq(static_cast<q128>(x)), x, 0);
            }
        } else if (op == 6) {
            Interval a = g.interval(-200, 200, true);
            Interval out = rignls::log(a);
            for (int t = 0; t < 3; ++t) {
                double x = g.inside(a);
                check(res, "log", out, logq(static_cast<q128>(x)), x, 0);
            }
        } else if (op == 7) {
            Interval a = g.interval(-8, 8);
            int n = g.op(13) - 6;
            if (n < 0 && a.contains_zero()) a = Interval(1.0, 3.0);
            Interval out = rignls::pow(a, n);
            for (int t = 0; t < 3; ++t) {
                double x = g.inside(a);
                q128 ref = 1;
                q128 base = n < 0 ? 1 / static_cast<q128>(x) : static_cast<q128>(x);
                for (int e = 0; e < std::abs(n); ++e) ref *= base;
                check(res, "powi", out, ref, x, n);
            }
        } else {
            Interval a = g.interval(-10, 10, true);
            double s = 2 + 3 * g.uniform();
            Interval out = rignls::pow(a, s);
            for (int t = 0; t < 3; ++t) {
                double x = g.inside(a);
                check(res, "pow", out, powq(static_cast<q128>(x), static_cast<q128>(s)), x, s);
            }
        }
    }
    return res;
}

}  // namespace fuzz
