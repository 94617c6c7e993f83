#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "rignls/bound_state.hpp"
#include "rignls/imatrix.hpp"
#include "rignls/radii.hpp"
#include "rignls/seqspace.hpp"

namespace rignls {

using cplx = std::complex<double>;

// N: coupling -phi^2 on the off-diagonal (default); M: +phi^2.
enum class Variant { N, M };
const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Enclosures of the phi^2 convolution S(q) = sum_{p+k=q} b_p b_k and of the matrix
// F_{n,l} = 2 (S(n+l) - S(n-l)), plus the decay envelopes E(q) built from the bound-state radius.
class TailEstimates {
public:
    explicit TailEstimates(std::shared_ptr<const BoundStateEnclosure> phi);

    const BoundStateEnclosure& phi() const { return *phi_; }
    // S at the certified center, evaluated in interval arithmetic
    Interval Sbar(long q) const;
    // S over the whole coefficient ball, finite part only
    Interval Sball(long q) const;
    // |S(q) - Sbar(q)| <= E(q)
    Interval E(long q) const;
    // first index from which Eplus and Etilde_plus are valid and decreasing
    long q0() const { return q0_; }
    Interval Eplus(long q) const;
    Interval Etilde_plus(long q) const;
    // sup over q >= 1 of q^s_phi E(q)
    Interval Etilde_max() const { return etilde_max_; }
    Interval Fbar(long n, long l) const { return Interval(2.0) * (Sbar(n + l) - Sbar(n - l)); }
    // rigorous enclosure of F_{n,l}: intersection of the ball sum with the envelope bound
    Interval F(long n, long l) const;
    Interval F_tail_pad() const { return pad3_; }
    double Fbar_point(long n, long l) const;

private:
    Interval compute_Sbar(long q) const;
    Interval compute_Sball(long q) const;
    Interval compute_E(long q) const;
    Interval E_formula(long q, const Interval& a2) const;

    std::shared_ptr<const BoundStateEnclosure> phi_;
    EstimateTable table_;
    long q0_;
    Interval alpha_sup_;
    Interval pad3_;
    Interval etilde_max_;
    std::vector<Interval> sbar_, sball_, e_;
    std::vector<double> sbar_point_;
};

struct EigenProblem {
    std::shared_ptr<const BoundStateEnclosure> phi;
    std::shared_ptr<const TailEstimates> tails;
    Variant variant = Variant::N;
    double s = 3;
    long m = 0;
    long M = 0;

    int sigma() const { return phi->sigma(); }
    const Interval& mu() const { return phi->mu(); }
    int kappa() const { return variant == Variant::N ? -1 : 1; }
    long m_phi() const { return phi->m(); }
    void validate() const;
};

// m = 3 m_phi, M defaults to m + 4 m_phi + 1
EigenProblem make_eigen_problem(std::shared_ptr<const BoundStateEnclosure> phi, double s, Variant v = Variant::N,
                                long M = 0, long m = 0);

struct EigenPairCenter {
    cplx beta;
    std::vector<cplx> c, d;  // index n-1 holds mode n
    long jstar = 0;          // c_{jstar} is pinned to its current value
    bool pin_d = false;      // pin d_{jstar} instead, for eigenvectors whose c part vanishes
};

struct EigenSelector {
    bool by_target = true;
    cplx target{0, 0};
    long index = 1;  // 1-based among Re(beta) > 0 sorted by (Re, Im)
};

std::vector<cplx> finite_section_eigenvalues(const EigenProblem& pb);
// dense eigensolve of the finite section; unit 2-norm, largest component real positive
EigenPairCenter initial_eigenpair(const EigenProblem& pb, const EigenSelector& sel);

// residual rows (c_n, d_n) for n = 1..nmax in interval arithmetic, F taken as enclosures
IVector eval_eigmap(const EigenPairCenter& x, const EigenProblem& pb, long nmax);
EigenPairCenter newton_eig(const EigenPairCenter& initial, const EigenProblem& pb, double* residual = nullptr);

struct LambdaTail {
    Interval C_F;
    Interval C_script_m;  // bound for k^2 ||Lambda_k^-1|| valid for k > m
    Interval C_Lambda;    // bound for ||Lambda_k^-1|| valid for k >= M
    bool complex_center = false;
    InjectivityAttestation injectivity;
};
// beta_mod: upper bound of |beta|; complex_center: Lambda_k has non-real entries
LambdaTail lambda_tail_bound(const EigenProblem& pb, double beta_mod, bool complex_center);
// C_script(mm) for any mm >= m, as used for the bound at k >= mm + 1
Interval lambda_script(const EigenProblem& pb, const Interval& C_F, double beta_mod, long mm);

// 3 sum_{j != k} |F_{k,j}| j^-s over the columns not covered by the finite block (k <= m),
// or all columns j != k (k > m)
Interval H1(const EigenProblem& pb, long k);
// H(M) pair bounding k^s_phi |f_k(xbar)| for k >= M
std::pair<Interval, Interval> H_M(const EigenProblem& pb, const EigenPairCenter& x);
Interval Z1_M(const EigenProblem& pb);

// 2x2 interval block of the Jacobian at mode k for the given (interval) beta
struct Block2 {
    CInterval a, b, c, d;
};
Block2 Lambda_block(const EigenProblem& pb, long k, const CInterval& beta);
Block2 inverse(const Block2& L);

struct EigenBounds {
    BoundData data;
    LambdaTail tail;
};
EigenBounds build_eig_bounds(const EigenPairCenter& x, const EigenProblem& pb);

EnclosureCertificate prove_eigenpair(const EigenProblem& pb, const EigenSelector& sel, EigenPairCenter* center_out = nullptr);
EnclosureCertificate prove_eigenpair_from(const EigenProblem& pb, const EigenPairCenter& initial,
                                          EigenPairCenter* center_out = nullptr);

// Eigenpair decoded from a certificate, together with its bound state.
struct EigenEnclosure {
    std::shared_ptr<const BoundStateEnclosure> phi;
    Variant variant = Variant::N;
    double s = 0;
    long m = 0, M = 0;
    double r = 0;
    bool real = false;
    EigenPairCenter center;

    static EigenEnclosure from_certificate(const EnclosureCertificate& c);
    EigenProblem problem() const;
    CInterval beta() const;
    // coordinate enclosures, mode n >= 1
    CInterval c(long n) const;
    CInterval d(long n) const;
};

// x, Re/Im of w = sum c_n sqrt2 sin(pi n x) and z = sum d_n sqrt2 sin(pi n x)
void write_eigenfunction_plot(const EigenEnclosure& e, int points, std::ostream& out);

}  // namespace rignls
