#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rignls/spectrum.hpp"

namespace rignls {

// Bordered linear system with unknowns (lambda0, c, d):
//   g_0 = sum (c'_n c_n + d'_n d_n),  g_n = lambda0 (c'_n, d'_n) + f_n(beta, c, d).
// beta and the primed coefficients are enclosures; x = 0 is the solution whose local
// uniqueness implies that beta is simple.
struct SimplicityProblem {
    EigenProblem eig;
    CInterval beta;
    std::vector<CInterval> cp, dp;  // primed coefficients for n = 1..m
    double r_prime = 0;             // |c'_n|, |d'_n| <= r_prime / n^s for n > m

    static SimplicityProblem from_eigenpair(const EigenEnclosure& e);
};

// Throws VerificationFailure when the contraction cannot be verified (inconclusive, not a disproof).
EnclosureCertificate prove_simple(const SimplicityProblem& sp);
EnclosureCertificate prove_simple(const EnclosureCertificate& eigcert);

struct GammaEnclosure {
    CInterval value;
    Interval pad{0.0};
    bool excludes_zero = false;
};

// sum_{n>=1} (-1)^n n (c_n - d_n), unnormalized; the proportionality constant is irrelevant for zero exclusion
GammaEnclosure gamma_enclosure(const EigenEnclosure& e);
GammaEnclosure gamma_enclosure(const EnclosureCertificate& eigcert);
// tail pad 2 r (1 + 1/(s-2)) applied to each of the real and imaginary parts
Interval gamma_tail_pad(double r, double s);

struct PropertyRow {
    std::string name;
    CInterval beta;
    bool simple = false;
    std::string simple_note;
    GammaEnclosure gamma;
};

struct PropertyReport {
    std::vector<PropertyRow> rows;
    std::vector<std::string> missing;
    bool all_ok() const;
};

// certificates are looked up by path; unreadable ones are listed in `missing`
PropertyReport verify_properties_AB(const std::vector<std::string>& eigcert_paths);
PropertyReport verify_properties_AB(const std::vector<std::pair<std::string, EnclosureCertificate>>& certs);

void write_report_csv(const PropertyReport& r, std::ostream& out);
json report_json(const PropertyReport& r);

}  // namespace rignls
