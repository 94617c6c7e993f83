#include "doctest.h"

#include <cmath>
#include <numbers>

#include "../fuzz.hpp"
#include "rignls/complex_interval.hpp"

using namespace rignls;

TEST_CASE("exact operands give exact results") {
    Interval a(1, 2), b(3, 4);
    CHECK((a + b).lo() == 4);
    CHECK((a + b).hi() == 6);
    Interval p = a * Interval(-3, 4);
    CHECK(p.lo() == -6);
    CHECK(p.hi() == 8);
    Interval q = a / Interval(4, 8);
    CHECK(q.lo() == 0.125);
    CHECK(q.hi() == 0.5);
    Interval r = sqrt(Interval(4, 9));
    CHECK(r.lo() == 2);
    CHECK(r.hi() == 3);
    CHECK(sqr(Interval(-2, 1)).lo() == 0);
    CHECK(sqr(Interval(-2, 1)).hi() == 4);
}

TEST_CASE("inexact sums are widened by one ulp at most") {
    Interval s = Interval(0.1) + Interval(0.2);
    CHECK(s.lo() < s.hi());
    CHECK(std::nextafter(s.lo(), 1.0) == s.hi());
    fuzz::q128 exact = static_cast<fuzz::q128>(0.1) + static_cast<fuzz::q128>(0.2);
    CHECK(static_cast<fuzz::q128>(s.lo()) <= exact);
    CHECK(exact <= static_cast<fuzz::q128>(s.hi()));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(Interval(1, 2) / Interval(-1, 1), IntervalError);
    CHECK_THROWS_AS(intersect(Interval(0, 1), Interval(2, 3)), IntervalError);
    CHECK_THROWS(Interval(2, 1));
}

TEST_CASE("constants enclose their values") {
    Interval p = pi();
    CHECK(p.contains(std::numbers::pi));
    CHECK(p.hi() <= std::nextafter(std::nextafter(p.lo(), 4.0), 4.0));
    fuzz::q128 pq = strtoflt128("3.14159265358979323846264338327950288", nullptr);
    CHECK(static_cast<fuzz::q128>(pi_squared().lo()) <= pq * pq);
    CHECK(pq * pq <= static_cast<fuzz::q128>(pi_squared().hi()));
}

TEST_CASE("integer powers of small integers are exact") {
    Interval a = ipow(3, 2.0);
    CHECK(a.lo() == 9);
    CHECK(a.hi() == 9);
    Interval b = pow(Interval(2.0), -3);
    CHECK(b.lo() == 0.125);
    CHECK(b.hi() == 0.125);
    Interval c = ipow(7, 3.5);
    CHECK(c.contains(std::pow(7.0, 3.5)));
}

TEST_CASE("complex magnitude is the exact range of max(|Re|, |Im|)") {
    CInterval z(Interval(-1, 2), Interval(0, 1));
    Interval m = mag(z);
    CHECK(m.lo() == 0);
    CHECK(m.hi() == 2);
    CInterval w(Interval(3, 4), Interval(-1, 1));
    CHECK(mag(w).lo() == 3);
    CHECK(mag(w).hi() == 4);
}

TEST_CASE("complex products and quotients enclose sample points") {
    CInterval a(Interval(1, 1.5), Interval(-2, -1)), b(Interval(0.5, 1), Interval(2, 3));
    CInterval p = a * b, q = a / b;
    for (double x : {1.0, 1.25, 1.5})
        for (double y : {-2.0, -1.5, -1.0})
            for (double u : {0.5, 1.0})
                for (double v : {2.0, 3.0}) {
                    std::complex<double> za(x, y), zb(u, v);
                    CHECK(p.contains(za * zb));
                    CHECK(q.contains(za / zb));
                }
}

TEST_CASE("binary128 fuzz") {
    fuzz::Result r = fuzz::run(20000, 7);
    INFO(r.first);
    CHECK(r.violations == 0);
    CHECK(r.checks >= 3 * r.ops);
}
