#include "rignls/bound_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rignls/elliptic.hpp"

namespace rignls {

namespace {

// Sequence on a contiguous range of integers starting at lo.
template <class T>
struct ZSeq {
    long lo = 0;
    std::vector<T> v;
    long hi() const { return lo + static_cast<long>(v.size()) - 1; }
    T at(long k) const { return (k < lo || k > hi()) ? T(0) : v[k - lo]; }
};

template <class T>
ZSeq<T> conv(const ZSeq<T>& a, const ZSeq<T>& b) {
    ZSeq<T> c;
    c.lo = a.lo + b.lo;
    c.v.assign(a.v.size() + b.v.size() - 1, T(0));
    for (std::size_t i = 0; i < a.v.size(); ++i)
        for (std::size_t j = 0; j < b.v.size(); ++j) c.v[i + j] += a.v[i] * b.v[j];
    return c;
}

// Symmetric extension of a reduced sequence to all integers: the value at k is the
// full coefficient b_{2k-1} (odd class) or b_{2k} (even class).
template <class T>
ZSeq<T> extend(const std::vector<T>& b, bool odd) {
    const long m = static_cast<long>(b.size());
    ZSeq<T> e;
    e.lo = odd ? 1 - m : -m;
    e.v.assign(odd ? 2 * m : 2 * m + 1, T(0));
    for (long k = e.lo; k <= m; ++k) {
        T val(0);
        if (k >= 1) val = b[k - 1];
        else if (odd) val = -b[-k];
        else if (k < 0) val = -b[-k - 1];
        e.v[k - e.lo] = val;
    }
    return e;
}

long double lambda_point(const BoundStateProblem& pb, long n) {
    long double N = pb.full_index(n);
    return std::numbers::pi_v<long double> * std::numbers::pi_v<long double> * N * N + pb.sigma * static_cast<long double>(pb.mu.mid());
}

std::vector<long double> eval_point(const std::vector<long double>& b, const BoundStateProblem& pb, long nmax) {
    ZSeq<long double> e = extend(b, pb.odd_class());
    ZSeq<long double> s3 = conv(conv(e, e), e);
    std::vector<long double> f(nmax);
    for (long n = 1; n <= nmax; ++n) {
        long double lin = n <= static_cast<long>(b.size()) ? lambda_point(pb, n) * b[n - 1] : 0.0L;
        f[n - 1] = lin + 2.0L * pb.sigma * s3.at(n + pb.shift());
    }
    return f;
}

Eigen::MatrixXd jacobian_point(const std::vector<long double>& b, const BoundStateProblem& pb) {
    const long m = static_cast<long>(b.size());
    ZSeq<long double> e = extend(b, pb.odd_class());
    ZSeq<long double> s2 = conv(e, e);
    Eigen::MatrixXd J(m, m);
    for (long n = 1; n <= m; ++n)
        for (long j = 1; j <= m; ++j) {
            long double v = 6.0L * pb.sigma * (s2.at(n + pb.shift() - j) - s2.at(n + j));
            if (n == j) v += lambda_point(pb, n);
            J(n - 1, j - 1) = static_cast<double>(v);
        }
    return J;
}

}  // namespace

Interval BoundStateProblem::Lambda(long n) const {
    double N = static_cast<double>(full_index(n));
    return pi_squared() * Interval(N * N) + Interval(static_cast<double>(sigma)) * mu;
}

void BoundStateProblem::validate() const {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
    if (nodes < 0) throw std::invalid_argument("node count must be nonnegative");
    if (!(s > 2)) throw std::invalid_argument("decay rate s must exceed 2");
    if (m < 3) throw std::invalid_argument("m_phi must be at least 3");
    if (M != 3 * m) throw std::invalid_argument("M_phi must equal 3 m_phi");
    // every tail multiplier Lambda_n, n > m, must be invertible; Lambda_n increases with n
    if (!(Lambda(m + 1).lo() > 0)) throw std::invalid_argument("m_phi too small: Lambda_{m+1} is not provably positive");
}

BoundStateProblem make_bound_state_problem(int sigma, double mu, int nodes, long m, double s) {
    BoundStateProblem pb;
    pb.sigma = sigma;
    pb.mu = Interval(mu);
    pb.nodes = nodes;
    pb.m = m;
    pb.M = 3 * m;
    pb.s = s;
    pb.validate();
    return pb;
}

std::vector<Interval> eval_map(const std::vector<Interval>& b, const BoundStateProblem& pb, long nmax) {
    ZSeq<Interval> e = extend(b, pb.odd_class());
    ZSeq<Interval> s3 = conv(conv(e, e), e);
    Interval two_sigma(2.0 * pb.sigma);
    std::vector<Interval> f(nmax);
    // the cubic convolution of an m-term sequence vanishes identically past index 3m
    for (long n = 1; n <= nmax; ++n) {
        Interval lin = n <= static_cast<long>(b.size()) ? pb.Lambda(n) * b[n - 1] : Interval(0.0);
        f[n - 1] = lin + two_sigma * s3.at(n + pb.shift());
    }
    return f;
}

std::vector<Interval> eval_map(const SineSeries& b, const BoundStateProblem& pb) {
    if (b.symmetry != pb.symmetry()) throw std::invalid_argument("eval_map: symmetry class does not match the node count");
    std::vector<Interval> v;
    for (const auto& z : b.coeffs) v.push_back(z.re);
    return eval_map(v, pb, 3 * static_cast<long>(v.size()));
}

IntervalMatrix jacobian(const std::vector<Interval>& b, const BoundStateProblem& pb) {
    const long m = static_cast<long>(b.size());
    ZSeq<Interval> e = extend(b, pb.odd_class());
    ZSeq<Interval> s2 = conv(e, e);
    Interval six_sigma(6.0 * pb.sigma);
    IntervalMatrix J(m, m);
    for (long n = 1; n <= m; ++n)
        for (long j = 1; j <= m; ++j) {
            Interval v = six_sigma * (s2.at(n + pb.shift() - j) - s2.at(n + j));
            if (n == j) v += pb.Lambda(n);
            J(n - 1, j - 1) = CInterval(v);
        }
    return J;
}

IntervalMatrix jacobian(const SineSeries& b, const BoundStateProblem& pb) {
    std::vector<Interval> v;
    for (const auto& z : b.coeffs) v.push_back(z.re);
    return jacobian(v, pb);
}

SineSeries newton_solve(const SineSeries& initial, const BoundStateProblem& pb, NewtonReport* report) {
    if (initial.symmetry != pb.symmetry()) throw std::invalid_argument("newton_solve: symmetry class does not match the node count");
    const long m = pb.m;
    std::vector<long double> b(m, 0.0L);
    for (long n = 1; n <= std::min(m, initial.m()); ++n) b[n - 1] = initial[n].re.mid();
    auto resid = [&](const std::vector<long double>& x) {
        std::vector<long double> f = eval_point(x, pb, m);
        long double r = 0;
        for (auto v : f) r = std::max(r, std::fabs(v));
        return std::pair{f, static_cast<double>(r)};
    };
    auto [f, res] = resid(b);
    int it = 0;
    for (; it < 50 && res >= 1e-14; ++it) {
        Eigen::MatrixXd J = jacobian_point(b, pb);
        Eigen::VectorXd rhs(m);
        for (long n = 0; n < m; ++n) rhs(n) = static_cast<double>(f[n]);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        Eigen::VectorXd dx = lu.solve(rhs);
        if (!dx.allFinite()) throw std::runtime_error("newton_solve: singular Jacobian");
        std::vector<long double> nb(b);
        for (long n = 0; n < m; ++n) nb[n] -= dx(n);
        // round to the binary64 center that will be certified
        for (auto& v : nb) v = static_cast<double>(v);
        auto [nf, nres] = resid(nb);
        if (!(nres < res) && it > 2) break;
        b = std::move(nb);
        f = std::move(nf);
        res = nres;
    }
    if (report) {
        report->iterations = it;
        report->residual = res;
    }
    if (!(res < 1e-12)) throw std::runtime_error("newton_solve: no convergence (residual " + format_double(res) + ")");
    double norm = 0;
    for (auto v : b) norm = std::max(norm, static_cast<double>(std::fabs(v)));
    if (norm < 1e-8) throw std::runtime_error("newton_solve: converged to the trivial solution");
    std::vector<double> out(b.begin(), b.end());
    return point_series(out, pb.symmetry(), pb.s);
}

BoundStateBounds build_bounds(const std::vector<double>& bbar, const BoundStateProblem& pb, const EstimateTable& table) {
    pb.validate();
    const long m = pb.m, M = pb.M;
    const int d = pb.shift();
    const bool odd = pb.odd_class();
    if (static_cast<long>(bbar.size()) != m) throw std::invalid_argument("build_bounds: center length differs from m_phi");
    if (table.M() != M || table.s() != pb.s) throw std::invalid_argument("build_bounds: estimate table does not match (s, M)");
    const PowerTable& pw = table.powers();

    std::vector<Interval> bi(bbar.begin(), bbar.end());
    std::vector<Interval> f = eval_map(bi, pb, 3 * m);
    IntervalMatrix Df = jacobian(bi, pb);

    std::vector<long double> bl(bbar.begin(), bbar.end());
    Eigen::MatrixXcd A = approx_inverse(jacobian_point(bl, pb)).cast<std::complex<double>>();

    Interval bnorm(0.0);
    for (long n = 1; n <= m; ++n) bnorm = max(bnorm, abs(Interval(bbar[n - 1])) * pw.wpow(n));

    // ball weights on the extended index: reduced position of ext index k is k (k >= 1)
    // and 1 - k (odd class) or -k (even class) for k <= 0
    auto omega = [&](long k) -> Interval {
        if (k >= 1) return pw.winv(k);
        if (odd) return pw.winv(1 - k);
        return k == 0 ? Interval(0.0) : pw.winv(-k);
    };
    auto reduced_pos = [&](long k) -> long { return k >= 1 ? k : (odd ? 1 - k : -k); };

    ZSeq<Interval> e = extend(bi, odd);
    ZSeq<Interval> s2 = conv(e, e);

    // W2(p) = sum over k2 + k3 = p with |k2|, |k3| < M of omega omega
    ZSeq<Interval> om;
    om.lo = -(M - 1);
    for (long k = -(M - 1); k <= M - 1; ++k) om.v.push_back(omega(k));
    ZSeq<Interval> w2 = conv(om, om);

    std::vector<Interval> Z1(M), Z2(M), Z3(M);
    for (long n = 1; n < M; ++n) {
        const long q = n + d;
        Interval eps = table.eps3(q);
        Interval z1(0.0);
        for (long p = s2.lo; p <= s2.hi(); ++p) {
            long k3 = q - p;
            if (std::labs(k3) >= M) continue;
            if (n <= m && reduced_pos(k3) <= m) continue;  // columns handled inside the finite block
            z1 += mag(CInterval(s2.at(p))) * omega(k3);
        }
        Z1[n] = z1 + sqr(bnorm) * eps;
        Interval z2(0.0);
        for (long k1 = e.lo; k1 <= e.hi(); ++k1) z2 += abs(e.at(k1)) * w2.at(q - k1);
        Z2[n] = z2 + Interval(2.0) * bnorm * eps;
        Interval z3(0.0);
        for (long k3 = -(M - 1); k3 <= M - 1; ++k3) z3 += omega(k3) * w2.at(q - k3);
        Z3[n] = z3 + Interval(3.0) * eps;
    }

    BoundStateBounds out;
    BoundData& bd = out.data;
    bd.s = pb.s;
    bd.m = m;
    bd.M = M;
    bd.p = 3;

    IVector fm(m);
    for (long n = 0; n < m; ++n) fm[n] = CInterval(f[n]);
    IVector Af = mat_vec(A, fm);
    std::vector<double> w(m), z1v(m), z2v(m), z3v(m);
    for (long n = 1; n <= m; ++n) {
        w[n - 1] = pw.winv(n).hi();
        z1v[n - 1] = Z1[n].hi();
        z2v[n - 1] = Z2[n].hi();
        z3v[n - 1] = Z3[n].hi();
    }
    std::vector<double> Z0 = defect_times(A, Df, w);
    std::vector<double> AZ1 = abs_mat_vec(A, z1v), AZ2 = abs_mat_vec(A, z2v), AZ3 = abs_mat_vec(A, z3v);
    for (long n = 1; n <= m; ++n) {
        bd.Y.push_back(Interval(mag(Af[n - 1]).hi()));
        bd.Z.push_back({Interval(Z0[n - 1]) + Interval(6.0) * Interval(AZ1[n - 1]), Interval(12.0) * Interval(AZ2[n - 1]),
                        Interval(6.0) * Interval(AZ3[n - 1])});
        bd.winv.push_back(pw.winv(n));
        bd.labels.push_back("n=" + std::to_string(n));
    }
    for (long n = m + 1; n < M; ++n) {
        Interval lam(pb.Lambda(n).mig());
        Interval fn = n <= 3 * m ? f[n - 1] : Interval(0.0);
        bd.Y.push_back(abs(fn) / lam);
        bd.Z.push_back({Interval(6.0) * Z1[n] / lam, Interval(12.0) * Z2[n] / lam, Interval(6.0) * Z3[n] / lam});
        bd.winv.push_back(pw.winv(n));
        bd.labels.push_back("n=" + std::to_string(n));
    }
    // tail n >= M: Lambda_n increases with n, so 1/Lambda_M bounds every tail multiplier
    Interval LM = pb.Lambda(M);
    if (!(LM.lo() > 0)) throw std::runtime_error("build_bounds: Lambda_M is not provably positive");
    Interval CL = Interval(1.0) / LM;
    Interval YM(0.0);
    for (long n = M; n <= 3 * m; ++n) YM = max(YM, abs(f[n - 1]) * pw.wpow(n) / pb.Lambda(n));
    bd.Y_M = YM;
    // tail rows only see convolution indices n + shift >= M
    Interval a3 = table.alpha3_tail_sup();
    bd.Z_M = {Interval(6.0) * CL * sqr(bnorm) * a3, Interval(12.0) * CL * bnorm * a3, Interval(6.0) * CL * a3};

    out.bnorm = bnorm.hi();
    Interval Lm1 = pb.Lambda(m + 1);
    out.injectivity.verified = Lm1.lo() > 0;
    out.injectivity.statement = "Lambda_n >= " + format_double(Lm1.lo()) + " > 0 for all n > " + std::to_string(m);
    return out;
}

namespace {

json bound_state_params(const BoundStateProblem& pb) {
    json p;
    p["sigma"] = pb.sigma;
    p["mu"] = format_double(pb.mu.mid());
    p["mu_interval"] = interval_json(pb.mu);
    p["nodes"] = pb.nodes;
    p["symmetry"] = to_string(pb.symmetry());
    p["s_phi"] = format_double(pb.s);
    p["m_phi"] = pb.m;
    p["M_phi"] = pb.M;
    p["radius_meaning"] = "|b_N - center_N| <= r / k^s_phi where N = 2k-1 (odd-about-half) or N = 2k (even-about-half); other parity is exactly 0";
    return p;
}

}  // namespace

EnclosureCertificate prove_bound_state(const BoundStateProblem& pb, const std::vector<double>& initial_reduced,
                                       NewtonReport* report) {
    pb.validate();
    SineSeries init = point_series(initial_reduced, pb.symmetry(), pb.s);
    SineSeries sol = newton_solve(init, pb, report);
    // coefficients far below rounding level are zero by symmetry; exact zeros keep interval sums narrow
    double bm = 0;
    for (const auto& z : sol.coeffs) bm = std::max(bm, std::fabs(z.re.mid()));
    std::vector<double> bbar;
    for (const auto& z : sol.coeffs) bbar.push_back(std::fabs(z.re.mid()) < 1e-40 * bm ? 0.0 : z.re.mid());
    EstimateTable table(pb.s, pb.M);
    BoundStateBounds bb = build_bounds(bbar, pb, table);
    json center = json::array();
    for (long N = 1; N <= 2 * pb.m; ++N) {
        bool in_class = (N % 2 == 1) == pb.odd_class();
        center.push_back(format_double(in_class ? bbar[(pb.odd_class() ? (N + 1) / 2 : N / 2) - 1] : 0.0));
    }
    return issue_certificate(bb.data, "bound-state", bound_state_params(pb), center, bb.injectivity);
}

EnclosureCertificate prove_bound_state(const BoundStateProblem& pb, NewtonReport* report) {
    pb.validate();
    if (!pb.mu.is_point()) throw std::invalid_argument("prove_bound_state: the elliptic initial guess needs a point mu");
    EllipticParams ep = elliptic_params(pb.nodes, pb.sigma, pb.mu.mid());
    SineSeries guess = reduced_coefficients(ep, static_cast<int>(pb.m), pb.s);
    std::vector<double> init;
    for (const auto& z : guess.coeffs) init.push_back(z.re.mid());
    return prove_bound_state(pb, init, report);
}

BoundStateEnclosure BoundStateEnclosure::from_certificate(const EnclosureCertificate& c) {
    if (c.problem() != "bound-state") throw CertificateFormatError("expected a bound-state certificate");
    BoundStateEnclosure e;
    try {
        const json& p = c.params();
        e.sigma_ = p.at("sigma").get<int>();
        e.mu_ = interval_from_json(p.at("mu_interval"));
        e.nodes_ = p.at("nodes").get<int>();
        e.sym_ = symmetry_from_string(p.at("symmetry").get<std::string>());
        e.s_ = parse_double(p.at("s_phi").get<std::string>());
        e.m_ = p.at("m_phi").get<long>();
        e.params_ = p;
        for (const auto& v : c.center()) e.full_.push_back(parse_double(v.get<std::string>()));
    } catch (const json::exception& ex) {
        throw CertificateFormatError(std::string("bound-state certificate: ") + ex.what());
    }
    if (static_cast<long>(e.full_.size()) != 2 * e.m_) throw CertificateFormatError("bound-state center length differs from 2 m_phi");
    if (e.s_ != c.s() || e.m_ != c.m()) throw CertificateFormatError("bound-state parameters are inconsistent");
    e.r_ = c.radius();
    e.source_ = c.to_json();
    return e;
}

BoundStateEnclosure BoundStateEnclosure::zero(int sigma, Interval mu, long m, double s) {
    BoundStateEnclosure e;
    e.sigma_ = sigma;
    e.mu_ = mu;
    e.nodes_ = 0;
    e.sym_ = Symmetry::OddAboutHalf;
    e.s_ = s;
    e.m_ = m;
    e.r_ = 0;
    e.full_.assign(2 * m, 0.0);
    e.params_ = {{"sigma", sigma}, {"mu", format_double(mu.mid())}, {"mu_interval", interval_json(mu)}, {"nodes", 0},
                 {"symmetry", "zero-state"}, {"s_phi", format_double(s)}, {"m_phi", m}};
    e.source_ = {{"zero_state", e.params_}};
    return e;
}

double BoundStateEnclosure::center(long N) const {
    long a = N < 0 ? -N : N;
    if (a == 0 || a > static_cast<long>(full_.size())) return 0.0;
    return N < 0 ? -full_[a - 1] : full_[a - 1];
}

double BoundStateEnclosure::rho(long N) const {
    long a = N < 0 ? -N : N;
    if (a == 0) return 0.0;
    bool odd = sym_ == Symmetry::OddAboutHalf;
    if ((a % 2 == 1) != odd) return 0.0;
    long k = odd ? (a + 1) / 2 : a / 2;
    return rnd::div_up(r_, ipow(k, s_).lo());
}

Interval BoundStateEnclosure::coeff(long N) const { return Interval::ball(center(N), rho(N)); }

double BoundStateEnclosure::bmax() const {
    double b = 0;
    for (double v : full_) b = std::max(b, std::fabs(v));
    return b;
}

void write_bound_state_plot(const BoundStateEnclosure& e, int points, std::ostream& out) {
    // |phi - phibar| <= sqrt2 r sum_k k^-s <= sqrt2 r (1 + 1/(s-1))
    double band = std::numbers::sqrt2 * e.r() * (1 + 1 / (e.s() - 1));
    out << "# x phi_lower phi_upper\n";
    for (int i = 0; i < points; ++i) {
        double x = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        double v = 0;
        for (long N = 1; N <= e.support(); ++N) v += e.center(N) * std::sin(std::numbers::pi * N * x);
        v *= std::numbers::sqrt2;
        double pad = band + 1e-14 * (1 + std::fabs(v));
        out << format_double(x) << ' ' << format_double(v - pad) << ' ' << format_double(v + pad) << '\n';
    }
}

}  // namespace rignls
