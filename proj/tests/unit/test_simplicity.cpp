#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rignls/reference_runs.hpp"

using namespace rignls;

namespace {

EigenProblem zero_problem(int sigma, Interval mu) {
    auto phi = std::make_shared<const BoundStateEnclosure>(BoundStateEnclosure::zero(sigma, mu, 6, 4.0));
    return make_eigen_problem(phi, 3.0);
}

SimplicityProblem unit_vector_problem(const EigenProblem& pb, const Interval& beta, long k, double r_prime) {
    SimplicityProblem sp{pb, CInterval(beta), std::vector<CInterval>(pb.m, CInterval(0.0)),
                         std::vector<CInterval>(pb.m, CInterval(0.0)), r_prime};
    sp.cp[k - 1] = CInterval(1.0);
    return sp;
}

}  // namespace

TEST_CASE("isolated Dirichlet eigenvalue is simple") {
    EigenProblem pb = zero_problem(1, Interval(12.898));
    Interval D1 = pi_squared() + pb.mu();
    EnclosureCertificate c = prove_simple(unit_vector_problem(pb, Interval(D1.lo() - 1e-12, D1.hi() + 1e-12), 1, 1e-14));
    CHECK(c.problem() == "simplicity");
    CHECK(c.radius() > 0);
}

TEST_CASE("colliding branches are reported as inconclusive") {
    // sigma mu = -2.5 pi^2 makes D_1 = -D_2, so beta = D_1 carries a two-dimensional eigenspace
    Interval mu = Interval(2.5) * pi_squared();
    EigenProblem pb = zero_problem(-1, mu);
    Interval D1 = pi_squared() - mu;
    Interval mD2 = -(Interval(4.0) * pi_squared() - mu);
    Interval beta = Interval::hull(D1, mD2);
    beta = Interval(beta.lo() - 1e-12, beta.hi() + 1e-12);
    CHECK(beta.contains(D1.mid()));
    CHECK(beta.contains(mD2.mid()));
    CHECK_THROWS_AS(prove_simple(unit_vector_problem(pb, beta, 1, 1e-14)), VerificationFailure);
}

TEST_CASE("length mismatch is rejected") {
    EigenProblem pb = zero_problem(1, Interval(12.898));
    SimplicityProblem sp = unit_vector_problem(pb, Interval(20.0), 1, 1e-14);
    sp.cp.pop_back();
    CHECK_THROWS_AS(prove_simple(sp), std::invalid_argument);
}

TEST_CASE("Gamma tail pad closed form") {
    CHECK(gamma_tail_pad(1e-6, 3.0).contains(4e-6));
    CHECK(gamma_tail_pad(1e-6, 2.8).contains(4.5e-6));
    CHECK(gamma_tail_pad(2.0, 4.0).contains(6.0));
    CHECK(gamma_tail_pad(1e-6, 3.0).width() < 1e-20);
}

TEST_CASE("Gamma of a pure Dirichlet mode") {
    EigenProblem pb = zero_problem(1, Interval(12.898));
    for (long k = 1; k <= 4; ++k) {
        EigenSelector sel;
        sel.target = {std::numbers::pi * std::numbers::pi * k * k + 12.898, 0};
        EigenEnclosure e = EigenEnclosure::from_certificate(prove_eigenpair(pb, sel));
        GammaEnclosure g = gamma_enclosure(e);
        // c = e_k: sum (-1)^n n c_n = (-1)^k k
        double expect = (k % 2 ? -1.0 : 1.0) * static_cast<double>(k);
        CHECK(g.value.re.contains(expect));
        CHECK(g.value.im.lo() == 0);
        CHECK(g.value.im.hi() == 0);
        CHECK(g.excludes_zero);
        CHECK(g.pad.contains((Interval(2.0) * Interval(e.r) * Interval(2.0)).mid()));
    }
}

TEST_CASE("property report over certificates") {
    BoundStateRun bs = run_bound_state(1, 12.898, 0, 18, 4);
    REQUIRE(bs.ok);
    EigenSelector sel;
    sel.by_target = false;
    sel.index = 1;
    EigenRun er = run_eigenpair(*bs.cert, 3.0, Variant::N, sel);
    REQUIRE(er.ok);
    PropertyReport rep = verify_properties_AB({{"ground", *er.cert}});
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].simple);
    CHECK(rep.rows[0].gamma.excludes_zero);
    CHECK(rep.all_ok());
    std::ostringstream csv;
    write_report_csv(rep, csv);
    CHECK(csv.str().find("ground,") != std::string::npos);
    json j = report_json(rep);
    CHECK(j["rows"][0]["simple"] == "proved");

    PropertyReport missing = verify_properties_AB(std::vector<std::string>{"/nonexistent/cert.json"});
    CHECK(missing.missing.size() == 1);
    CHECK_FALSE(missing.all_ok());
}
