#pragma once

#include <ostream>
#include <vector>

#include "rignls/imatrix.hpp"
#include "rignls/radii.hpp"
#include "rignls/seqspace.hpp"

namespace rignls {

struct BoundStateProblem {
    int sigma = 1;
    Interval mu{0.0};
    int nodes = 0;
    double s = 4;
    long m = 18;  // reduced truncation m_phi
    long M = 54;  // 3 m_phi

    Symmetry symmetry() const { return nodes % 2 == 0 ? Symmetry::OddAboutHalf : Symmetry::EvenAboutHalf; }
    bool odd_class() const { return nodes % 2 == 0; }
    // the reduced convolution is evaluated at n + shift
    int shift() const { return odd_class() ? 1 : 0; }
    long full_index(long n) const { return odd_class() ? 2 * n - 1 : 2 * n; }
    // pi^2 N^2 + sigma mu for the full index N of reduced position n
    Interval Lambda(long n) const;
    void validate() const;
};

BoundStateProblem make_bound_state_problem(int sigma, double mu, int nodes, long m, double s);

// f_n for n = 1..nmax at an interval sequence given by reduced coefficients 1..m
std::vector<Interval> eval_map(const std::vector<Interval>& b, const BoundStateProblem& pb, long nmax);
std::vector<Interval> eval_map(const SineSeries& b, const BoundStateProblem& pb);
// m x m interval Jacobian of f^(m)
IntervalMatrix jacobian(const std::vector<Interval>& b, const BoundStateProblem& pb);
IntervalMatrix jacobian(const SineSeries& b, const BoundStateProblem& pb);

struct NewtonReport {
    int iterations = 0;
    double residual = 0;
};
SineSeries newton_solve(const SineSeries& initial, const BoundStateProblem& pb, NewtonReport* report = nullptr);

struct BoundStateBounds {
    BoundData data;
    InjectivityAttestation injectivity;
    double bnorm = 0;  // upper bound of ||b||_s
};
BoundStateBounds build_bounds(const std::vector<double>& bbar, const BoundStateProblem& pb, const EstimateTable& table);

EnclosureCertificate prove_bound_state(const BoundStateProblem& pb, NewtonReport* report = nullptr);
EnclosureCertificate prove_bound_state(const BoundStateProblem& pb, const std::vector<double>& initial_reduced,
                                       NewtonReport* report = nullptr);

// Bound state decoded from a certificate, in full (unreduced) indexing with b_{-n} = -b_n.
class BoundStateEnclosure {
public:
    static BoundStateEnclosure from_certificate(const EnclosureCertificate& c);
    static BoundStateEnclosure zero(int sigma, Interval mu, long m, double s);

    int sigma() const { return sigma_; }
    const Interval& mu() const { return mu_; }
    int nodes() const { return nodes_; }
    Symmetry symmetry() const { return sym_; }
    double s() const { return s_; }
    long m() const { return m_; }  // reduced truncation m_phi
    double r() const { return r_; }
    // center b_N for any integer N; zero beyond the stored 2 m_phi entries
    double center(long N) const;
    // coefficient enclosure center(N) +- rho(N); rho(N) = r / k^s_phi in the parity class, 0 outside
    Interval coeff(long N) const;
    double rho(long N) const;
    long support() const { return 2 * m_; }
    double bmax() const;
    const std::vector<double>& full_center() const { return full_; }
    json certificate_params() const { return params_; }
    // the certificate this enclosure was decoded from, or {"zero_state": params}
    const json& source() const { return source_; }

private:
    int sigma_ = 1;
    Interval mu_{0.0};
    int nodes_ = 0;
    Symmetry sym_ = Symmetry::OddAboutHalf;
    double s_ = 4;
    long m_ = 0;
    double r_ = 0;
    std::vector<double> full_;
    json params_;
    json source_;
};

// x, lower, upper of phi on a uniform grid, from the certified coefficients
void write_bound_state_plot(const BoundStateEnclosure& e, int points, std::ostream& out);

}  // namespace rignls
