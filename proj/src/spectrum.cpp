#include "rignls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace rignls {

const char* to_string(Variant v) { return v == Variant::N ? "N" : "M"; }

Variant variant_from_string(const std::string& s) {
    if (s == "N") return Variant::N;
    if (s == "M") return Variant::M;
    throw std::invalid_argument("variant must be N or M");
}

// ---------------------------------------------------------------- tail estimates

TailEstimates::TailEstimates(std::shared_ptr<const BoundStateEnclosure> phi)
    : phi_(std::move(phi)), table_(phi_->s(), 3 * phi_->m()) {
    const long mp = phi_->m();
    const double s = phi_->s();
    const double r = phi_->r();
    q0_ = 2 * mp + 1;
    alpha_sup_ = table_.alpha2_sup_from(q0_);
    Interval R(r);
    pad3_ = Interval(8.0) * R * (Interval(phi_->bmax()) + R) * pow(Interval(2.0), s) /
            (Interval(exact_add(s, -1)) * ipow(mp, exact_add(s, -1)));

    // large enough for the default M and the retry schedule; lookups beyond are computed on demand
    const long qmax = 2 * (3 * mp + 4 * mp + 1 + 6 * mp) + 8 * mp + 16;
    sbar_.resize(qmax + 1);
    sball_.resize(qmax + 1);
    e_.resize(qmax + 1);
    sbar_point_.resize(qmax + 1);
    for (long q = 0; q <= qmax; ++q) {
        sbar_[q] = compute_Sbar(q);
        sball_[q] = compute_Sball(q);
        e_[q] = compute_E(q);
        long double acc = 0;
        const long L = phi_->support();
        for (long p = std::max(-L, q - L); p <= std::min(L, q + L); ++p)
            acc += static_cast<long double>(phi_->center(p)) * phi_->center(q - p);
        sbar_point_[q] = static_cast<double>(acc);
    }

    etilde_max_ = Etilde_plus(q0_);
    const PowerTable& pw = table_.powers();
    for (long q = 1; q < q0_; ++q) etilde_max_ = max(etilde_max_, pw.wpow(q) * E(q));
}

Interval TailEstimates::compute_Sbar(long q) const {
    const long L = phi_->support();
    Interval acc(0.0);
    for (long p = std::max(-L, q - L); p <= std::min(L, q + L); ++p) acc += Interval(phi_->center(p)) * Interval(phi_->center(q - p));
    return acc;
}

Interval TailEstimates::compute_Sball(long q) const {
    const long L = phi_->support();
    Interval acc(0.0);
    for (long k = -L; k <= L; ++k) acc += phi_->coeff(k) * phi_->coeff(q - k);
    return acc;
}

Interval TailEstimates::E_formula(long q, const Interval& a2) const {
    const double s = phi_->s();
    const PowerTable& pw = table_.powers();
    const double r = phi_->r();
    if (r == 0) return Interval(0.0);
    Interval R(r);
    Interval two_s = pow(Interval(2.0), s);
    Interval quad = sqr(two_s) * sqr(R) * a2 * pw.winv(q);
    const long L = phi_->support();
    Interval lin(0.0);
    for (long j = -L; j <= L; ++j) {
        double b = phi_->center(j);
        if (b != 0) lin += Interval(std::fabs(b)) * pw.winv(q - j);
    }
    return quad + Interval(2.0) * R * two_s * lin;
}

Interval TailEstimates::compute_E(long q) const { return E_formula(q, table_.alpha2(q)); }

Interval TailEstimates::Sbar(long q) const {
    long a = q < 0 ? -q : q;
    return a < static_cast<long>(sbar_.size()) ? sbar_[a] : compute_Sbar(a);
}

Interval TailEstimates::Sball(long q) const {
    long a = q < 0 ? -q : q;
    return a < static_cast<long>(sball_.size()) ? sball_[a] : compute_Sball(a);
}

Interval TailEstimates::E(long q) const {
    long a = q < 0 ? -q : q;
    return a < static_cast<long>(e_.size()) ? e_[a] : compute_E(a);
}

Interval TailEstimates::Eplus(long q) const {
    if (q < q0_) throw std::invalid_argument("Eplus: index below the monotone range");
    return E_formula(q, alpha_sup_);
}

Interval TailEstimates::Etilde_plus(long q) const { return table_.powers().wpow(q) * Eplus(q); }

Interval TailEstimates::F(long n, long l) const {
    // S vanishes at odd arguments: both factors must share the parity class of the state
    if ((n + l) % 2 != 0) return Interval(0.0);
    Interval pad3(-pad3_.hi(), pad3_.hi());
    Interval a = Interval(2.0) * (Sball(n + l) - Sball(n - l)) + pad3;
    Interval e = Interval(2.0) * (E(n + l) + E(n - l));
    Interval b = Fbar(n, l) + Interval(-e.hi(), e.hi());
    return intersect(a, b);
}

double TailEstimates::Fbar_point(long n, long l) const {
    auto sp = [&](long q) {
        long a = q < 0 ? -q : q;
        if (a < static_cast<long>(sbar_point_.size())) return sbar_point_[a];
        return compute_Sbar(a).mid();
    };
    return 2.0 * (sp(n + l) - sp(n - l));
}

// ---------------------------------------------------------------- problem

void EigenProblem::validate() const {
    if (!phi || !tails) throw std::invalid_argument("eigen problem needs a bound state");
    if (!(s > 2)) throw std::invalid_argument("decay rate s must exceed 2");
    if (!(s < phi->s())) throw std::invalid_argument("decay rate s must be below s_phi");
    if (m != 3 * m_phi()) throw std::invalid_argument("m must equal 3 m_phi");
    if (M <= m + 4 * m_phi()) throw std::invalid_argument("M must exceed m + 4 m_phi");
}

EigenProblem make_eigen_problem(std::shared_ptr<const BoundStateEnclosure> phi, double s, Variant v, long M, long m) {
    EigenProblem pb;
    pb.tails = std::make_shared<TailEstimates>(phi);
    pb.phi = std::move(phi);
    pb.variant = v;
    pb.s = s;
    pb.m = m > 0 ? m : 3 * pb.phi->m();
    pb.M = M > 0 ? M : pb.m + 4 * pb.phi->m() + 1;
    pb.validate();
    return pb;
}

namespace {

using cld = std::complex<long double>;

Interval diag_D(const EigenProblem& pb, long n) {
    double nn = static_cast<double>(n);
    return pi_squared() * Interval(nn * nn) + Interval(static_cast<double>(pb.sigma())) * pb.mu();
}

long double diag_D_point(const EigenProblem& pb, long n) {
    long double pi = std::numbers::pi_v<long double>;
    return pi * pi * n * n + pb.sigma() * static_cast<long double>(pb.mu().mid());
}

// column of the unknown vector: c_n at 2(n-1), d_n at 2(n-1)+1, beta in the slot of c_{j*}
long col_c(long n) { return 2 * (n - 1); }
long col_d(long n) { return 2 * (n - 1) + 1; }
long col_pin(const EigenPairCenter& x) { return x.pin_d ? col_d(x.jstar) : col_c(x.jstar); }

std::vector<cld> residual_point(const EigenPairCenter& x, const EigenProblem& pb,
                                const std::vector<std::vector<double>>& F) {
    const long m = pb.m;
    const long double sg = pb.sigma(), kp = pb.kappa();
    std::vector<cld> f(2 * m);
    cld beta(x.beta.real(), x.beta.imag());
    for (long n = 1; n <= m; ++n) {
        cld sc = 0, sd = 0;
        for (long l = 1; l <= m; ++l) {
            long double Fv = F[n - 1][l - 1];
            if (Fv == 0) continue;
            cld c(x.c[l - 1].real(), x.c[l - 1].imag()), d(x.d[l - 1].real(), x.d[l - 1].imag());
            sc += Fv * (2.0L * c + kp * d);
            sd += Fv * (kp * c + 2.0L * d);
        }
        long double D = diag_D_point(pb, n);
        cld cn(x.c[n - 1].real(), x.c[n - 1].imag()), dn(x.d[n - 1].real(), x.d[n - 1].imag());
        f[col_c(n)] = (D - beta) * cn - sg * sc;
        f[col_d(n)] = (D + beta) * dn - sg * sd;
    }
    return f;
}

Eigen::MatrixXcd jacobian_point(const EigenPairCenter& x, const EigenProblem& pb, const std::vector<std::vector<double>>& F) {
    const long m = pb.m;
    const double sg = pb.sigma(), kp = pb.kappa();
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    for (long n = 1; n <= m; ++n) {
        for (long l = 1; l <= m; ++l) {
            double Fv = F[n - 1][l - 1];
            J(col_c(n), col_c(l)) = -2 * sg * Fv;
            J(col_c(n), col_d(l)) = -sg * kp * Fv;
            J(col_d(n), col_c(l)) = -sg * kp * Fv;
            J(col_d(n), col_d(l)) = -2 * sg * Fv;
        }
        double D = static_cast<double>(diag_D_point(pb, n));
        J(col_c(n), col_c(n)) += D - x.beta;
        J(col_d(n), col_d(n)) += D + x.beta;
    }
    // the pinned coordinate's column carries d/dbeta
    for (long n = 1; n <= m; ++n) {
        J(col_c(n), col_pin(x)) = -x.c[n - 1];
        J(col_d(n), col_pin(x)) = x.d[n - 1];
    }
    return J;
}

IntervalMatrix jacobian_interval(const EigenPairCenter& x, const EigenProblem& pb) {
    const long m = pb.m;
    const TailEstimates& T = *pb.tails;
    Interval two_sg(2.0 * pb.sigma()), sk(static_cast<double>(pb.sigma() * pb.kappa()));
    IntervalMatrix J(2 * m, 2 * m);
    CInterval beta(x.beta);
    for (long n = 1; n <= m; ++n) {
        for (long l = 1; l <= m; ++l) {
            Interval Fv = T.F(n, l);
            J(col_c(n), col_c(l)) = CInterval(-(two_sg * Fv));
            J(col_c(n), col_d(l)) = CInterval(-(sk * Fv));
            J(col_d(n), col_c(l)) = CInterval(-(sk * Fv));
            J(col_d(n), col_d(l)) = CInterval(-(two_sg * Fv));
        }
        CInterval D(diag_D(pb, n));
        J(col_c(n), col_c(n)) += D - beta;
        J(col_d(n), col_d(n)) += D + beta;
    }
    for (long n = 1; n <= m; ++n) {
        J(col_c(n), col_pin(x)) = CInterval(-x.c[n - 1]);
        J(col_d(n), col_pin(x)) = CInterval(x.d[n - 1]);
    }
    return J;
}

std::vector<std::vector<double>> fbar_matrix(const EigenProblem& pb) {
    const long m = pb.m;
    std::vector<std::vector<double>> F(m, std::vector<double>(m));
    for (long n = 1; n <= m; ++n)
        for (long l = 1; l <= m; ++l) F[n - 1][l - 1] = (n + l) % 2 ? 0.0 : pb.tails->Fbar_point(n, l);
    return F;
}

// largest |c_n|, smallest index on ties; falls back to d when the c part vanishes
void choose_pin(EigenPairCenter& x) {
    auto argmax = [](const std::vector<cplx>& v, double& best) {
        long j = 1;
        best = -1;
        for (long n = 1; n <= static_cast<long>(v.size()); ++n)
            if (std::abs(v[n - 1]) > best) {
                best = std::abs(v[n - 1]);
                j = n;
            }
        return j;
    };
    double bc = 0, bd = 0;
    long jc = argmax(x.c, bc), jd = argmax(x.d, bd);
    if (bc > 1e-12) {
        x.jstar = jc;
        x.pin_d = false;
    } else if (bd > 1e-12) {
        x.jstar = jd;
        x.pin_d = true;
    } else {
        throw std::runtime_error("eigenvector has no component above 1e-12; j* is ill-defined");
    }
}

// sum over l <= m of F_{k,l} (2c + kappa d) and F_{k,l} (kappa c + 2d)
std::pair<CInterval, CInterval> coupling(const EigenPairCenter& x, const EigenProblem& pb, long k) {
    const TailEstimates& T = *pb.tails;
    Interval kp(static_cast<double>(pb.kappa())), two(2.0);
    CInterval sc, sd;
    for (long l = 1; l <= static_cast<long>(x.c.size()); ++l) {
        if ((k + l) % 2) continue;
        Interval Fv = T.F(k, l);
        CInterval c(x.c[l - 1]), d(x.d[l - 1]);
        sc += Fv * (two * c + kp * d);
        sd += Fv * (kp * c + two * d);
    }
    return {sc, sd};
}

}  // namespace

// ---------------------------------------------------------------- finite section and Newton

std::vector<cplx> finite_section_eigenvalues(const EigenProblem& pb) {
    const long m = pb.m;
    auto F = fbar_matrix(pb);
    const double sg = pb.sigma(), kp = pb.kappa();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (long n = 0; n < m; ++n) {
        for (long l = 0; l < m; ++l) {
            A(n, l) = -2 * sg * F[n][l];
            A(n, m + l) = -sg * kp * F[n][l];
            A(m + n, l) = sg * kp * F[n][l];
            A(m + n, m + l) = 2 * sg * F[n][l];
        }
        double D = static_cast<double>(diag_D_point(pb, n + 1));
        A(n, n) += D;
        A(m + n, m + n) -= D;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("finite-section eigensolve failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return ev;
}

EigenPairCenter initial_eigenpair(const EigenProblem& pb, const EigenSelector& sel) {
    pb.validate();
    const long m = pb.m;
    auto F = fbar_matrix(pb);
    const double sg = pb.sigma(), kp = pb.kappa();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (long n = 0; n < m; ++n) {
        for (long l = 0; l < m; ++l) {
            A(n, l) = -2 * sg * F[n][l];
            A(n, m + l) = -sg * kp * F[n][l];
            A(m + n, l) = sg * kp * F[n][l];
            A(m + n, m + l) = 2 * sg * F[n][l];
        }
        double D = static_cast<double>(diag_D_point(pb, n + 1));
        A(n, n) += D;
        A(m + n, m + n) -= D;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
    if (es.info() != Eigen::Success) throw std::runtime_error("finite-section eigensolve failed");
    const Eigen::VectorXcd& ev = es.eigenvalues();
    long pick = -1;
    if (sel.by_target) {
        double best = INFINITY;
        for (long i = 0; i < ev.size(); ++i)
            if (std::abs(ev(i) - sel.target) < best) {
                best = std::abs(ev(i) - sel.target);
                pick = i;
            }
    } else {
        std::vector<long> idx;
        for (long i = 0; i < ev.size(); ++i)
            if (ev(i).real() > 1e-3) idx.push_back(i);
        std::sort(idx.begin(), idx.end(), [&](long a, long b) {
            if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
            return ev(a).imag() < ev(b).imag();
        });
        if (sel.index < 1 || sel.index > static_cast<long>(idx.size()))
            throw std::invalid_argument("eigenvalue index out of range (1.." + std::to_string(idx.size()) + ")");
        pick = idx[sel.index - 1];
    }
    if (pick < 0) throw std::runtime_error("no eigenvalue selected");
    Eigen::VectorXcd v = es.eigenvectors().col(pick);
    const bool real = ev(pick).imag() == 0;
    v /= v.norm();
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    v *= std::abs(v(big)) / v(big);
    EigenPairCenter x;
    x.beta = ev(pick);
    x.c.resize(m);
    x.d.resize(m);
    for (long n = 0; n < m; ++n) {
        x.c[n] = real ? cplx(v(n).real(), 0) : v(n);
        x.d[n] = real ? cplx(v(m + n).real(), 0) : v(m + n);
    }
    if (real) x.beta = cplx(x.beta.real(), 0);
    choose_pin(x);
    return x;
}

IVector eval_eigmap(const EigenPairCenter& x, const EigenProblem& pb, long nmax) {
    const long mc = static_cast<long>(x.c.size());
    Interval sg(static_cast<double>(pb.sigma()));
    CInterval beta(x.beta);
    IVector f(2 * nmax);
    for (long n = 1; n <= nmax; ++n) {
        auto [sc, sd] = coupling(x, pb, n);
        CInterval lc, ld;
        if (n <= mc) {
            CInterval D(diag_D(pb, n));
            lc = (D - beta) * CInterval(x.c[n - 1]);
            ld = (D + beta) * CInterval(x.d[n - 1]);
        }
        f[col_c(n)] = lc - sg * sc;
        f[col_d(n)] = ld - sg * sd;
    }
    return f;
}

EigenPairCenter newton_eig(const EigenPairCenter& initial, const EigenProblem& pb, double* residual) {
    pb.validate();
    const long m = pb.m;
    if (static_cast<long>(initial.c.size()) != m || static_cast<long>(initial.d.size()) != m)
        throw std::invalid_argument("newton_eig: center length differs from m");
    auto F = fbar_matrix(pb);
    EigenPairCenter x = initial;
    if (x.jstar < 1 || x.jstar > m) choose_pin(x);
    auto norm = [](const std::vector<cld>& f) {
        long double r = 0;
        for (const auto& v : f) r = std::max(r, std::max(std::fabs(v.real()), std::fabs(v.imag())));
        return static_cast<double>(r);
    };
    std::vector<cld> f = residual_point(x, pb, F);
    double res = norm(f);
    for (int it = 0; it < 30 && res >= 1e-13; ++it) {
        Eigen::MatrixXcd J = jacobian_point(x, pb, F);
        Eigen::VectorXcd rhs(2 * m);
        for (long i = 0; i < 2 * m; ++i) rhs(i) = cplx(static_cast<double>(f[i].real()), static_cast<double>(f[i].imag()));
        Eigen::VectorXcd dx = J.partialPivLu().solve(rhs);
        if (!dx.allFinite()) throw std::runtime_error("newton_eig: singular Jacobian");
        EigenPairCenter nx = x;
        for (long n = 1; n <= m; ++n) {
            (col_c(n) == col_pin(x) ? nx.beta : nx.c[n - 1]) -= dx(col_c(n));
            (col_d(n) == col_pin(x) ? nx.beta : nx.d[n - 1]) -= dx(col_d(n));
        }
        std::vector<cld> nf = residual_point(nx, pb, F);
        double nres = norm(nf);
        if (!(nres < res) && it > 2) break;
        x = std::move(nx);
        f = std::move(nf);
        res = nres;
    }
    if (residual) *residual = res;
    if (!(res < 1e-11)) throw std::runtime_error("newton_eig: no convergence (residual " + format_double(res) + ")");
    return x;
}

// ---------------------------------------------------------------- tail bounds

Interval lambda_script(const EigenProblem& pb, const Interval& C_F, double beta_mod, long mm) {
    Interval X = Interval(static_cast<double>(pb.sigma())) * pb.mu() - Interval(beta_mod) - Interval(3.0) * C_F;
    Interval low(std::min(0.0, X.lo()));
    Interval den = pi_squared() + low / sqr(Interval(static_cast<double>(mm + 1)));
    if (!(den.lo() > 0)) throw VerificationFailure("Lambda_k diagonal dominance fails for k > " + std::to_string(mm) + "; raise m");
    return Interval(1.0) / den;
}

LambdaTail lambda_tail_bound(const EigenProblem& pb, double beta_mod, bool complex_center) {
    const TailEstimates& T = *pb.tails;
    LambdaTail t;
    t.complex_center = complex_center;
    t.C_F = Interval(2.0) * (abs(T.Sbar(0)) + T.E(0) + T.Eplus(2 * pb.m + 2));
    t.C_script_m = lambda_script(pb, t.C_F, beta_mod, pb.m);
    Interval cl = lambda_script(pb, t.C_F, beta_mod, pb.M - 1) / sqr(Interval(static_cast<double>(pb.M)));
    if (complex_center) cl = cl * sqrt(Interval(2.0));
    t.C_Lambda = cl;
    t.injectivity.verified = true;
    t.injectivity.statement = "Lambda_k diagonally dominant for all k > " + std::to_string(pb.m) + ": k^2 ||Lambda_k^-1|| <= " +
                              format_double(t.C_script_m.hi()) + "; blocks " + std::to_string(pb.m + 1) + ".." +
                              std::to_string(pb.M - 1) + " inverted in interval arithmetic";
    return t;
}

Interval H1(const EigenProblem& pb, long k) {
    const TailEstimates& T = *pb.tails;
    const long m = pb.m, mp = pb.m_phi();
    const double s = pb.s;
    long J = k <= m ? std::max(m + 1, k + 4 * mp) : k + 4 * mp;
    long j0 = k <= m ? m + 1 : 1;
    Interval acc(0.0);
    for (long j = j0; j <= J; ++j) {
        if (j == k || (j + k) % 2) continue;
        acc += Interval(T.F(k, j).mag()) / ipow(j, s);
    }
    // beyond J the center part vanishes and both envelopes decrease in j
    acc += Interval(2.0) * (T.Eplus(k + J + 1) + T.Eplus(J + 1 - k)) * tail_zeta(J + 1, s);
    return Interval(3.0) * acc;
}

std::pair<Interval, Interval> H_M(const EigenProblem& pb, const EigenPairCenter& x) {
    const TailEstimates& T = *pb.tails;
    const long M = pb.M;
    const double sp = pb.phi->s();
    Interval kp(static_cast<double>(pb.kappa())), two(2.0);
    Interval Ms = ipow(M, sp);
    Interval hc(0.0), hd(0.0);
    for (long l = 1; l <= static_cast<long>(x.c.size()); ++l) {
        Interval w = T.Etilde_plus(M + l) + Ms / ipow(M - l, sp) * T.Etilde_plus(M - l);
        CInterval c(x.c[l - 1]), d(x.d[l - 1]);
        hc += w * Interval(mag(two * c + kp * d).hi());
        hd += w * Interval(mag(kp * c + two * d).hi());
    }
    return {two * hc, two * hd};
}

Interval Z1_M(const EigenProblem& pb) {
    const TailEstimates& T = *pb.tails;
    const long M = pb.M, mp = pb.m_phi();
    const double s = pb.s;
    EstimateTable et(s, M);
    Interval sm1(exact_add(s, -1));
    Interval Ms = ipow(M, s);
    Interval a(0.0);
    for (long p = 1; p <= 4 * mp; ++p) a += abs(T.Sbar(p)) * (Ms / ipow(M - p, s) + Interval(1.0));
    Interval Em = T.Etilde_max();
    Interval b = T.Etilde_plus(M + 1) + T.Etilde_plus(M + 2) / sm1 + Em * et.gamma(M) + Em * (Interval(1.0) + Interval(1.0) / sm1);
    return Interval(6.0) * (a + b);
}

Block2 Lambda_block(const EigenProblem& pb, long k, const CInterval& beta) {
    Interval Fkk = pb.tails->F(k, k);
    Interval two_sg(2.0 * pb.sigma()), sk(static_cast<double>(pb.sigma() * pb.kappa()));
    CInterval D(diag_D(pb, k));
    Block2 L;
    L.a = D - beta - CInterval(two_sg * Fkk);
    L.b = CInterval(-(sk * Fkk));
    L.c = L.b;
    L.d = D + beta - CInterval(two_sg * Fkk);
    return L;
}

Block2 inverse(const Block2& L) {
    CInterval det = L.a * L.d - L.b * L.c;
    if (det.contains_zero()) throw VerificationFailure("2x2 block is not provably invertible");
    return {L.d / det, -L.b / det, -L.c / det, L.a / det};
}

// ---------------------------------------------------------------- bounds

EigenBounds build_eig_bounds(const EigenPairCenter& x, const EigenProblem& pb) {
    pb.validate();
    const long m = pb.m, M = pb.M;
    const double s = pb.s;
    if (x.jstar < 1 || x.jstar > m) throw std::invalid_argument("build_eig_bounds: j* out of range");

    bool real = x.beta.imag() == 0;
    for (long n = 0; n < m && real; ++n) real = x.c[n].imag() == 0 && x.d[n].imag() == 0;

    IntervalMatrix Df = jacobian_interval(x, pb);
    Eigen::MatrixXcd A = real ? approx_inverse(Eigen::MatrixXd(Df.mid().real())).cast<cplx>() : approx_inverse(Df.mid());
    IVector f = eval_eigmap(x, pb, m);
    IVector Af = mat_vec(A, f);

    std::vector<double> w(2 * m), h1(2 * m), z2(2 * m);
    std::vector<Interval> H1v(M);
    for (long n = 1; n <= m; ++n) {
        Interval wn = Interval(1.0) / ipow(n, s);
        w[col_c(n)] = w[col_d(n)] = wn.hi();
        H1v[n] = H1(pb, n);
        h1[col_c(n)] = h1[col_d(n)] = H1v[n].hi();
        z2[col_c(n)] = z2[col_d(n)] = (Interval(4.0) * wn).hi();
    }
    // the pinned slot holds beta (weight 1); its own row loses the pinned-times-beta term
    w[col_pin(x)] = 1.0;
    z2[col_pin(x)] = (Interval(2.0) / ipow(x.jstar, s)).hi();
    std::vector<double> Z0 = defect_times(A, Df, w);
    std::vector<double> AZ1 = abs_mat_vec(A, h1), AZ2 = abs_mat_vec(A, z2);

    EigenBounds out;
    BoundData& bd = out.data;
    bd.s = s;
    bd.m = m;
    bd.M = M;
    bd.p = 2;
    for (long n = 1; n <= m; ++n) {
        for (int part = 0; part < 2; ++part) {
            long i = part == 0 ? col_c(n) : col_d(n);
            bd.Y.push_back(Interval(mag(Af[i]).hi()));
            bd.Z.push_back({Interval(Z0[i]) + Interval(AZ1[i]), Interval(AZ2[i])});
            bd.winv.push_back(Interval(w[i]));
            std::string lab = i == col_pin(x) ? "beta" : (part == 0 ? "c" : "d") + std::to_string(n);
            bd.labels.push_back(lab);
        }
    }

    CInterval beta(x.beta);
    Interval sg(static_cast<double>(pb.sigma()));
    for (long k = m + 1; k < M; ++k) {
        Block2 Li = inverse(Lambda_block(pb, k, beta));
        auto [sc, sd] = coupling(x, pb, k);
        CInterval fc = -(sg * sc), fd = -(sg * sd);
        CInterval yc = Li.a * fc + Li.b * fd, yd = Li.c * fc + Li.d * fd;
        double rc = rnd::add_up(abs1(Li.a), abs1(Li.b)), rd = rnd::add_up(abs1(Li.c), abs1(Li.d));
        Interval h = H1(pb, k);
        Interval wk = Interval(1.0) / ipow(k, s);
        Interval four = Interval(4.0) * wk;
        bd.Y.push_back(Interval(mag(yc).hi()));
        bd.Z.push_back({Interval(rc) * h, Interval(rc) * four});
        bd.Y.push_back(Interval(mag(yd).hi()));
        bd.Z.push_back({Interval(rd) * h, Interval(rd) * four});
        bd.winv.push_back(wk);
        bd.winv.push_back(wk);
        bd.labels.push_back("c" + std::to_string(k));
        bd.labels.push_back("d" + std::to_string(k));
    }

    double beta_mod = modulus_up(beta);
    out.tail = lambda_tail_bound(pb, beta_mod, !real);
    const Interval& CL = out.tail.C_Lambda;
    auto [hc, hd] = H_M(pb, x);
    Interval HM = max(hc, hd);
    bd.Y_M = CL * HM * ipow(M, s) / ipow(M, pb.phi->s());
    bd.Z_M = {CL * Z1_M(pb), CL * Interval(4.0)};
    return out;
}

namespace {

json cplx_json(cplx z) { return json::array({format_double(z.real()), format_double(z.imag())}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw CertificateFormatError("complex value must be a pair of decimals");
    return {parse_double(j[0].get<std::string>()), parse_double(j[1].get<std::string>())};
}

bool is_real_center(const EigenPairCenter& x) {
    if (x.beta.imag() != 0) return false;
    for (std::size_t n = 0; n < x.c.size(); ++n)
        if (x.c[n].imag() != 0 || x.d[n].imag() != 0) return false;
    return true;
}

}  // namespace

EnclosureCertificate prove_eigenpair_from(const EigenProblem& pb, const EigenPairCenter& initial, EigenPairCenter* center_out) {
    EigenPairCenter x = newton_eig(initial, pb);
    EigenBounds eb = build_eig_bounds(x, pb);
    json center;
    center["beta"] = cplx_json(x.beta);
    center["j_star"] = x.jstar;
    center["pinned"] = x.pin_d ? "d" : "c";
    json cj = json::array(), dj = json::array();
    for (long n = 0; n < pb.m; ++n) {
        cj.push_back(cplx_json(x.c[n]));
        dj.push_back(cplx_json(x.d[n]));
    }
    center["c"] = std::move(cj);
    center["d"] = std::move(dj);
    const bool real = is_real_center(x);
    json params;
    params["sigma"] = pb.sigma();
    params["mu"] = format_double(pb.mu().mid());
    params["nodes"] = pb.phi->nodes();
    params["variant"] = to_string(pb.variant);
    params["beta_re"] = format_double(x.beta.real());
    params["beta_im"] = format_double(x.beta.imag());
    params["j_star"] = x.jstar;
    params["pinned"] = x.pin_d ? "d" : "c";
    params["real"] = real;
    params["radius_meaning"] =
        "|beta - center| <= r and |c_n - center|, |d_n - center| <= r / n^s per real and imaginary part; the pinned c_{j_star} (or d_{j_star}) is exact";
    params["bound_state"] = pb.phi->source();
    EnclosureCertificate cert = issue_certificate(eb.data, "eigenpair", std::move(params), std::move(center), eb.tail.injectivity);
    if (center_out) *center_out = x;
    return cert;
}

EnclosureCertificate prove_eigenpair(const EigenProblem& pb, const EigenSelector& sel, EigenPairCenter* center_out) {
    return prove_eigenpair_from(pb, initial_eigenpair(pb, sel), center_out);
}

// ---------------------------------------------------------------- decoded enclosure

EigenEnclosure EigenEnclosure::from_certificate(const EnclosureCertificate& cert) {
    if (cert.problem() != "eigenpair") throw CertificateFormatError("expected an eigenpair certificate");
    EigenEnclosure e;
    try {
        const json& p = cert.params();
        const json& bs = p.at("bound_state");
        if (bs.contains("zero_state")) {
            const json& z = bs.at("zero_state");
            e.phi = std::make_shared<BoundStateEnclosure>(BoundStateEnclosure::zero(
                z.at("sigma").get<int>(), interval_from_json(z.at("mu_interval")), z.at("m_phi").get<long>(),
                parse_double(z.at("s_phi").get<std::string>())));
        } else {
            e.phi = std::make_shared<BoundStateEnclosure>(BoundStateEnclosure::from_certificate(certificate_from_json(bs)));
        }
        e.variant = variant_from_string(p.at("variant").get<std::string>());
        e.real = p.at("real").get<bool>();
        const json& c = cert.center();
        e.center.beta = cplx_from_json(c.at("beta"));
        e.center.jstar = c.at("j_star").get<long>();
        e.center.pin_d = c.value("pinned", std::string("c")) == "d";
        for (const auto& v : c.at("c")) e.center.c.push_back(cplx_from_json(v));
        for (const auto& v : c.at("d")) e.center.d.push_back(cplx_from_json(v));
    } catch (const json::exception& ex) {
        throw CertificateFormatError(std::string("eigenpair certificate: ") + ex.what());
    }
    e.s = cert.s();
    e.m = cert.m();
    e.M = cert.M();
    e.r = cert.radius();
    if (static_cast<long>(e.center.c.size()) != e.m || static_cast<long>(e.center.d.size()) != e.m)
        throw CertificateFormatError("eigenpair center length differs from m");
    if (e.center.jstar < 1 || e.center.jstar > e.m) throw CertificateFormatError("j_star out of range");
    if (e.real != is_real_center(e.center)) throw CertificateFormatError("real flag disagrees with the center");
    return e;
}

EigenProblem EigenEnclosure::problem() const {
    EigenProblem pb;
    pb.phi = phi;
    pb.tails = std::make_shared<TailEstimates>(phi);
    pb.variant = variant;
    pb.s = s;
    pb.m = m;
    pb.M = M;
    pb.validate();
    return pb;
}

CInterval EigenEnclosure::beta() const {
    // a real center with a unique zero in the ball forces a real eigenvalue
    Interval re = Interval::ball(center.beta.real(), r);
    Interval im = real ? Interval(0.0) : Interval::ball(center.beta.imag(), r);
    return {re, im};
}

CInterval EigenEnclosure::c(long n) const {
    if (n < 1) throw std::out_of_range("mode index must be positive");
    if (n == center.jstar && !center.pin_d) return CInterval(center.c[n - 1]);
    cplx z = n <= m ? center.c[n - 1] : cplx(0, 0);
    double rad = rnd::div_up(r, ipow(n, s).lo());
    return {Interval::ball(z.real(), rad), real ? Interval(0.0) : Interval::ball(z.imag(), rad)};
}

CInterval EigenEnclosure::d(long n) const {
    if (n < 1) throw std::out_of_range("mode index must be positive");
    if (n == center.jstar && center.pin_d) return CInterval(center.d[n - 1]);
    cplx z = n <= m ? center.d[n - 1] : cplx(0, 0);
    double rad = rnd::div_up(r, ipow(n, s).lo());
    return {Interval::ball(z.real(), rad), real ? Interval(0.0) : Interval::ball(z.imag(), rad)};
}

void write_eigenfunction_plot(const EigenEnclosure& e, int points, std::ostream& out) {
    out << "# x Re_w Im_w Re_z Im_z\n";
    for (int i = 0; i < points; ++i) {
        double x = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        cplx w = 0, z = 0;
        for (long n = 1; n <= e.m; ++n) {
            double sn = std::numbers::sqrt2 * std::sin(std::numbers::pi * n * x);
            w += e.center.c[n - 1] * sn;
            z += e.center.d[n - 1] * sn;
        }
        out << format_double(x) << ' ' << format_double(w.real()) << ' ' << format_double(w.imag()) << ' '
            << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
    }
}

}  // namespace rignls
