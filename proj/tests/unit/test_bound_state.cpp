#include "doctest.h"

#include <cmath>

#include "rignls/bound_state.hpp"
#include "rignls/elliptic.hpp"

using namespace rignls;

namespace {

std::vector<double> elliptic_guess(const BoundStateProblem& pb) {
    SineSeries g = reduced_coefficients(elliptic_params(pb.nodes, pb.sigma, pb.mu.mid()), static_cast<int>(pb.m), pb.s);
    std::vector<double> v;
    for (const auto& z : g.coeffs) v.push_back(z.re.mid());
    return v;
}

std::vector<Interval> as_intervals(const std::vector<double>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_bound_state_problem(2, 12.898, 0, 18, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_bound_state_problem(1, 12.898, -1, 18, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_bound_state_problem(1, 12.898, 0, 18, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_bound_state_problem(1, 12.898, 0, 2, 4), std::invalid_argument);
    // defocusing: Lambda_{m+1} = pi^2 (2m+1)^2 - mu must be positive
    CHECK_THROWS_AS(make_bound_state_problem(-1, 500.0, 0, 3, 4), std::invalid_argument);
    CHECK_NOTHROW(make_bound_state_problem(-1, 254.916, 0, 36, 3.1));
}

TEST_CASE("Jacobian agrees with central differences") {
    for (int nodes : {0, 1}) {
        BoundStateProblem pb = make_bound_state_problem(1, 43.273, nodes, 12, 4);
        std::vector<double> b = elliptic_guess(pb);
        IntervalMatrix J = jacobian(as_intervals(b), pb);
        const double h = 1e-6;
        for (long j = 0; j < pb.m; ++j) {
            std::vector<double> bp = b, bm = b;
            bp[j] += h;
            bm[j] -= h;
            auto fp = eval_map(as_intervals(bp), pb, pb.m), fm = eval_map(as_intervals(bm), pb, pb.m);
            for (long i = 0; i < pb.m; ++i) {
                double fd = (fp[i].mid() - fm[i].mid()) / (2 * h);
                double an = J(i, j).re.mid();
                CHECK(std::fabs(fd - an) <= 1e-5 * (1 + std::fabs(an)));
            }
        }
    }
}

TEST_CASE("elliptic coefficients nearly solve the Galerkin system") {
    BoundStateProblem pb = make_bound_state_problem(-1, 89.237, 0, 20, 4);
    std::vector<double> b = elliptic_guess(pb);
    auto f = eval_map(as_intervals(b), pb, pb.m);
    double worst = 0;
    for (const auto& v : f) worst = std::max(worst, v.mag());
    CHECK(worst < 1e-6);
}

TEST_CASE("Newton converges from a perturbed guess") {
    BoundStateProblem pb = make_bound_state_problem(1, 12.898, 0, 18, 4);
    std::vector<double> b = elliptic_guess(pb);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] *= 1 + 1e-3 * std::cos(static_cast<double>(i));
    NewtonReport rep;
    SineSeries sol = newton_solve(point_series(b, pb.symmetry(), pb.s), pb, &rep);
    CHECK(rep.residual < 1e-12);
    CHECK(rep.iterations >= 1);
    CHECK(sol[1].re.mid() == doctest::Approx(elliptic_guess(pb)[0]).epsilon(1e-8));
}

TEST_CASE("certified enclosure: radius, symmetry and decoding") {
    BoundStateProblem pb = make_bound_state_problem(1, 43.273, 1, 30, 3.5);
    EnclosureCertificate c = prove_bound_state(pb);
    CHECK(c.problem() == "bound-state");
    CHECK(c.radius() > 0);
    CHECK(c.radius() < 1e-8);
    BoundStateEnclosure e = BoundStateEnclosure::from_certificate(parse_certificate(c.serialize()));
    CHECK(e.sigma() == 1);
    CHECK(e.nodes() == 1);
    CHECK(e.symmetry() == Symmetry::EvenAboutHalf);
    CHECK(e.r() == c.radius());
    for (long N = 1; N <= 20; ++N) {
        CHECK(e.center(-N) == -e.center(N));
        CHECK(e.coeff(-N).lo() == -e.coeff(N).hi());
        // odd full indices are outside the class of a one-node state and vanish exactly
        if (N % 2) {
            CHECK(e.center(N) == 0);
            CHECK(e.rho(N) == 0);
        }
    }
    CHECK(e.rho(4) == doctest::Approx(c.radius() / std::pow(2.0, 3.5)).epsilon(1e-12));
    CHECK(e.center(2 * pb.m + 2) == 0);
    json j = c.to_json();
    j["problem"] = "eigenpair";
    CHECK_THROWS_AS(BoundStateEnclosure::from_certificate(certificate_from_json(j)), CertificateFormatError);
    j = c.to_json();
    j["center"].erase(0);
    CHECK_THROWS_AS(BoundStateEnclosure::from_certificate(certificate_from_json(j)), CertificateFormatError);
}

TEST_CASE("deterministic certificates") {
    BoundStateProblem pb = make_bound_state_problem(-1, 89.237, 2, 16, 4);
    CHECK(prove_bound_state(pb).serialize() == prove_bound_state(pb).serialize());
}
