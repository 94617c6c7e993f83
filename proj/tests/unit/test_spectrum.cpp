#include "doctest.h"

#include <cmath>
#include <numbers>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "../dominance.hpp"
#include "rignls/bound_state.hpp"

using namespace rignls;

namespace {

std::shared_ptr<const BoundStateEnclosure> state(int sigma, double mu, int nodes, long m, double s) {
    static std::map<std::tuple<int, double, int>, std::shared_ptr<const BoundStateEnclosure>> cache;
    auto key = std::make_tuple(sigma, mu, nodes);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto e = std::make_shared<const BoundStateEnclosure>(
        BoundStateEnclosure::from_certificate(prove_bound_state(make_bound_state_problem(sigma, mu, nodes, m, s))));
    cache[key] = e;
    return e;
}

// the same center with an inflated radius, to exercise the envelope formulas away from rounding level
std::shared_ptr<const BoundStateEnclosure> inflated(const BoundStateEnclosure& e, double r) {
    json j = e.source();
    j["radius"] = format_double(r);
    j["radius_max"] = format_double(r);
    return std::make_shared<const BoundStateEnclosure>(BoundStateEnclosure::from_certificate(certificate_from_json(j)));
}

double D(int sigma, double mu, long k) { return std::numbers::pi * std::numbers::pi * k * k + sigma * mu; }

}  // namespace

TEST_CASE("F enclosures are symmetric and vanish across parity classes") {
    auto phi = state(1, 43.273, 1, 30, 3.5);
    TailEstimates T(phi);
    for (long n = 1; n <= 30; ++n)
        for (long l = 1; l <= 30; ++l) {
            Interval a = T.F(n, l), b = T.F(l, n);
            CHECK(a.lo() == b.lo());
            CHECK(a.hi() == b.hi());
            if ((n + l) % 2) {
                CHECK(a.lo() == 0);
                CHECK(a.hi() == 0);
            }
            CHECK(a.contains(T.Fbar_point(n, l)));
        }
}

TEST_CASE("envelopes dominate sampled convolutions inside the coefficient ball") {
    auto base = state(1, 43.273, 0, 24, 4);
    for (double r : {1e-6, 1e-3}) {
        auto phi = inflated(*base, r);
        TailEstimates T(phi);
        const long L = 6 * phi->m();
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int sample = 0; sample < 20; ++sample) {
            std::vector<long double> b(2 * L + 1, 0.0L);
            for (long N = 1; N <= L; ++N) {
                long double v = phi->center(N) + phi->rho(N) * u(rng);
                b[L + N] = v;
                b[L - N] = -v;
            }
            auto S = [&](long q) {
                long double acc = 0;
                for (long p = std::max(-L, q - L); p <= std::min(L, q + L); ++p) acc += b[L + p] * b[L + q - p];
                return acc;
            };
            for (long q = 0; q <= 3 * phi->m(); ++q) {
                long double dev = std::fabs(S(q) - static_cast<long double>(T.Sbar(q).mid()));
                CHECK(dev <= static_cast<long double>(T.E(q).hi()) + static_cast<long double>(T.Sbar(q).rad()));
            }
            for (long n = 1; n <= 12; ++n)
                for (long l = n % 2 ? 1 : 2; l <= 12; l += 2) {
                    long double F = 2 * (S(n + l) - S(n - l));
                    Interval enc = T.F(n, l);
                    CHECK(static_cast<long double>(enc.lo()) <= F + 1e-15L);
                    CHECK(F <= static_cast<long double>(enc.hi()) + 1e-15L);
                }
        }
        // monotone majorants
        for (long q = T.q0(); q <= T.q0() + 60; ++q) {
            CHECK(T.Eplus(q).hi() >= T.E(q).lo());
            CHECK(T.Etilde_plus(q).hi() <= T.Etilde_plus(T.q0()).hi());
            CHECK(T.Etilde_max().hi() >= (ipow(q, phi->s()) * T.E(q)).lo());
        }
    }
}

TEST_CASE("problem validation") {
    auto phi = state(1, 12.898, 0, 18, 4);
    CHECK_THROWS_AS(make_eigen_problem(phi, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_eigen_problem(phi, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(make_eigen_problem(phi, 3.0, Variant::N, 50), std::invalid_argument);
    CHECK_THROWS_AS(variant_from_string("X"), std::invalid_argument);
    EigenProblem pb = make_eigen_problem(phi, 3.0);
    CHECK(pb.m == 54);
    CHECK(pb.M == 54 + 72 + 1);
    CHECK(pb.kappa() == -1);
}

TEST_CASE("zero state: eigenvalues are the shifted Dirichlet spectrum") {
    for (int sigma : {1, -1}) {
        double mu = sigma > 0 ? 12.898 : 89.237;
        auto phi = std::make_shared<const BoundStateEnclosure>(BoundStateEnclosure::zero(sigma, Interval(mu), 6, 4.0));
        EigenProblem pb = make_eigen_problem(phi, 3.0);
        for (long k = 1; k <= 5; ++k)
            for (int sign : {1, -1}) {
                EigenSelector sel;
                sel.target = {sign * D(sigma, mu, k), 0};
                EigenPairCenter x;
                EnclosureCertificate c = prove_eigenpair(pb, sel, &x);
                EigenEnclosure e = EigenEnclosure::from_certificate(c);
                Interval Dk = pi_squared() * Interval(static_cast<double>(k * k)) + Interval(static_cast<double>(sigma)) * pb.mu();
                if (sign < 0) Dk = -Dk;
                INFO("sigma = " << sigma << ", k = " << k << ", sign = " << sign);
                CHECK(e.real);
                CHECK(e.beta().re.width() < 1e-10);
                CHECK(e.beta().re.hi() >= Dk.lo());
                CHECK(e.beta().re.lo() <= Dk.hi());
                // the negative branch has no c component, so a d coordinate is pinned
                CHECK(x.pin_d == (sign < 0));
                CHECK(x.jstar == k);
            }
    }
}

TEST_CASE("ground state eigenpair certificate") {
    auto phi = state(1, 43.273, 0, 24, 4);
    EigenProblem pb = make_eigen_problem(phi, 3.0);
    auto ev = finite_section_eigenvalues(pb);
    CHECK(ev.size() == static_cast<std::size_t>(2 * pb.m));
    EigenSelector sel;
    sel.target = {13.4, 0};
    EigenPairCenter x;
    EnclosureCertificate c = prove_eigenpair(pb, sel, &x);
    EigenEnclosure e = EigenEnclosure::from_certificate(parse_certificate(c.serialize()));
    CHECK(e.real);
    CHECK(e.beta().contains(x.beta));
    CHECK(e.beta().re.contains(13.413043804601385));
    CHECK(e.c(x.jstar).re.lo() == e.c(x.jstar).re.hi());
    CHECK(e.d(3).re.width() > 0);
    CHECK(e.c(pb.m + 5).re.contains(0.0));
    // unit 2-norm center
    double n2 = 0;
    for (long n = 0; n < pb.m; ++n) n2 += std::norm(x.c[n]) + std::norm(x.d[n]);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));

    json j = c.to_json();
    j["params"]["real"] = false;
    CHECK_THROWS(EigenEnclosure::from_certificate(certificate_from_json(j)));
    j = c.to_json();
    j["params"]["bound_state"]["problem"] = "eigenpair";
    CHECK_THROWS(EigenEnclosure::from_certificate(certificate_from_json(j)));
}

TEST_CASE("complex eigenpair certificate") {
    auto phi = state(1, 43.273, 1, 30, 3.5);
    EigenProblem pb = make_eigen_problem(phi, 3.0);
    EigenSelector sel;
    sel.target = {40.3, 15.5};
    EigenPairCenter x;
    EigenEnclosure e = EigenEnclosure::from_certificate(prove_eigenpair(pb, sel, &x));
    CHECK_FALSE(e.real);
    CHECK(e.beta().re.contains(x.beta.real()));
    CHECK(std::fabs(e.beta().im.mid() - 15.5196) < 1e-3);
}

TEST_CASE("estimate dominance at reference eigenpairs") {
    struct Case {
        int sigma;
        double mu;
        int nodes;
        long m;
        double s_phi;
        std::complex<double> target;
        double s;
    };
    for (Case c : {Case{1, 43.273, 0, 24, 4, {13.4, 0}, 3}, Case{1, 43.273, 1, 30, 3.5, {40.3, 15.5}, 3},
                   Case{-1, 254.916, 1, 34, 3.1, {5.1, 0}, 3}}) {
        auto phi = state(c.sigma, c.mu, c.nodes, c.m, c.s_phi);
        EigenProblem pb = make_eigen_problem(phi, c.s);
        EigenSelector sel;
        sel.target = c.target;
        EigenPairCenter x = newton_eig(initial_eigenpair(pb, sel), pb);
        dominance::Tally t = dominance::lambda_tail(pb, x);
        t.merge(dominance::residual_tail(pb, x));
        t.merge(dominance::h1_sums(pb, pb.m + 20, 1500));
        INFO(t.first);
        CHECK(t.checks > 100);
        CHECK(t.violations == 0);
    }
}

TEST_CASE("plot data") {
    auto phi = state(1, 12.898, 0, 18, 4);
    EigenProblem pb = make_eigen_problem(phi, 3.0);
    EigenSelector sel;
    sel.by_target = false;
    sel.index = 1;
    EigenEnclosure e = EigenEnclosure::from_certificate(prove_eigenpair(pb, sel));
    std::ostringstream out;
    write_eigenfunction_plot(e, 11, out);
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 11);
}
