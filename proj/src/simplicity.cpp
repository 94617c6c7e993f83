#include "rignls/simplicity.hpp"

#include <cmath>

namespace rignls {

namespace {

long col_c(long n) { return 1 + 2 * (n - 1); }
long col_d(long n) { return 2 + 2 * (n - 1); }

}  // namespace

SimplicityProblem SimplicityProblem::from_eigenpair(const EigenEnclosure& e) {
    SimplicityProblem sp{e.problem(), e.beta(), {}, {}, e.r};
    for (long n = 1; n <= e.m; ++n) {
        sp.cp.push_back(e.c(n));
        sp.dp.push_back(e.d(n));
    }
    return sp;
}

EnclosureCertificate prove_simple(const SimplicityProblem& sp) {
    const EigenProblem& pb = sp.eig;
    pb.validate();
    const long m = pb.m, M = pb.M;
    const double s = pb.s;
    if (static_cast<long>(sp.cp.size()) != m || static_cast<long>(sp.dp.size()) != m)
        throw std::invalid_argument("prove_simple: primed coefficients must have length m");
    const TailEstimates& T = *pb.tails;
    Interval two_sg(2.0 * pb.sigma()), sk(static_cast<double>(pb.sigma() * pb.kappa()));

    const long n = 2 * m + 1;
    IntervalMatrix Dg(n, n);
    bool real = sp.beta.is_real();
    for (long k = 1; k <= m; ++k) {
        const CInterval &c = sp.cp[k - 1], &d = sp.dp[k - 1];
        real = real && c.is_real() && d.is_real();
        Dg(0, col_c(k)) = c;
        Dg(0, col_d(k)) = d;
        Dg(col_c(k), 0) = c;
        Dg(col_d(k), 0) = d;
        for (long l = 1; l <= m; ++l) {
            Interval Fv = T.F(k, l);
            Dg(col_c(k), col_c(l)) = CInterval(-(two_sg * Fv));
            Dg(col_c(k), col_d(l)) = CInterval(-(sk * Fv));
            Dg(col_d(k), col_c(l)) = CInterval(-(sk * Fv));
            Dg(col_d(k), col_d(l)) = CInterval(-(two_sg * Fv));
        }
        double kk = static_cast<double>(k);
        CInterval D(pi_squared() * Interval(kk * kk) + Interval(static_cast<double>(pb.sigma())) * pb.mu());
        Dg(col_c(k), col_c(k)) += D - sp.beta;
        Dg(col_d(k), col_d(k)) += D + sp.beta;
    }
    Eigen::MatrixXcd A;
    try {
        A = real ? approx_inverse(Eigen::MatrixXd(Dg.mid().real())).cast<cplx>() : approx_inverse(Dg.mid());
    } catch (const std::exception& e) {
        throw VerificationFailure(std::string("bordered system is numerically singular: ") + e.what());
    }

    Interval R(sp.r_prime);
    std::vector<double> w(n), z1(n);
    w[0] = 1.0;
    // primed tail against unknown tail, both bounded by weights n^-s
    z1[0] = (Interval(4.0) * R * tail_zeta(m + 1, 2 * s)).hi();
    for (long k = 1; k <= m; ++k) {
        w[col_c(k)] = w[col_d(k)] = (Interval(1.0) / ipow(k, s)).hi();
        z1[col_c(k)] = z1[col_d(k)] = H1(pb, k).hi();
    }
    std::vector<double> Z0 = defect_times(A, Dg, w);
    std::vector<double> AZ1 = abs_mat_vec(A, z1);

    BoundData bd;
    bd.s = s;
    bd.m = m;
    bd.M = M;
    bd.p = 1;
    for (long i = 0; i < n; ++i) {
        bd.Y.push_back(Interval(0.0));
        bd.Z.push_back({Interval(Z0[i]) + Interval(AZ1[i])});
        bd.winv.push_back(Interval(w[i]));
        bd.labels.push_back(i == 0 ? "lambda0" : ((i - 1) % 2 == 0 ? "c" : "d") + std::to_string((i - 1) / 2 + 1));
    }
    for (long k = m + 1; k < M; ++k) {
        Block2 Li = inverse(Lambda_block(pb, k, sp.beta));
        Interval wk = Interval(1.0) / ipow(k, s);
        Interval z = H1(pb, k) + Interval(2.0) * R * wk;
        double rc = rnd::add_up(abs1(Li.a), abs1(Li.b)), rd = rnd::add_up(abs1(Li.c), abs1(Li.d));
        bd.Y.push_back(Interval(0.0));
        bd.Z.push_back({Interval(rc) * z});
        bd.Y.push_back(Interval(0.0));
        bd.Z.push_back({Interval(rd) * z});
        bd.winv.push_back(wk);
        bd.winv.push_back(wk);
        bd.labels.push_back("c" + std::to_string(k));
        bd.labels.push_back("d" + std::to_string(k));
    }
    LambdaTail tail = lambda_tail_bound(pb, modulus_up(sp.beta), !real);
    bd.Y_M = Interval(0.0);
    bd.Z_M = {tail.C_Lambda * (Z1_M(pb) + Interval(2.0) * R)};

    json params;
    params["sigma"] = pb.sigma();
    params["mu"] = format_double(pb.mu().mid());
    params["nodes"] = pb.phi->nodes();
    params["variant"] = to_string(pb.variant);
    params["beta_re"] = interval_json(sp.beta.re);
    params["beta_im"] = interval_json(sp.beta.im);
    params["radius_meaning"] = "x = 0 is the only zero of the bordered system within radius r, so beta is simple";
    json center;
    center["lambda0"] = "0";
    center["c"] = "0";
    center["d"] = "0";
    return issue_certificate(bd, "simplicity", std::move(params), std::move(center), tail.injectivity);
}

EnclosureCertificate prove_simple(const EnclosureCertificate& eigcert) {
    return prove_simple(SimplicityProblem::from_eigenpair(EigenEnclosure::from_certificate(eigcert)));
}

Interval gamma_tail_pad(double r, double s) {
    Interval R(r);
    return Interval(2.0) * R * (Interval(1.0) + Interval(1.0) / Interval(exact_add(s, -2)));
}

GammaEnclosure gamma_enclosure(const EigenEnclosure& e) {
    if (!(e.s > 2)) throw std::invalid_argument("gamma_enclosure needs s > 2");
    CInterval sum;
    for (long n = 1; n <= e.m; ++n) {
        Interval w(static_cast<double>(n % 2 ? -n : n));
        sum += w * (CInterval(e.center.c[n - 1]) - CInterval(e.center.d[n - 1]));
    }
    GammaEnclosure g;
    g.pad = gamma_tail_pad(e.r, e.s);
    Interval p(-g.pad.hi(), g.pad.hi());
    g.value.re = sum.re + p;
    g.value.im = e.real ? Interval(0.0) : sum.im + p;
    g.excludes_zero = !g.value.contains_zero();
    return g;
}

GammaEnclosure gamma_enclosure(const EnclosureCertificate& eigcert) {
    return gamma_enclosure(EigenEnclosure::from_certificate(eigcert));
}

bool PropertyReport::all_ok() const {
    if (!missing.empty()) return false;
    for (const auto& r : rows)
        if (!r.simple || !r.gamma.excludes_zero) return false;
    return true;
}

PropertyReport verify_properties_AB(const std::vector<std::pair<std::string, EnclosureCertificate>>& certs) {
    PropertyReport rep;
    for (const auto& [name, cert] : certs) {
        EigenEnclosure e = EigenEnclosure::from_certificate(cert);
        PropertyRow row;
        row.name = name;
        row.beta = e.beta();
        row.gamma = gamma_enclosure(e);
        try {
            prove_simple(SimplicityProblem::from_eigenpair(e));
            row.simple = true;
            row.simple_note = "proved";
        } catch (const VerificationFailure& ex) {
            row.simple_note = std::string("inconclusive: ") + ex.what();
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

PropertyReport verify_properties_AB(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, EnclosureCertificate>> certs;
    PropertyReport missing;
    for (const auto& p : paths) {
        try {
            certs.emplace_back(p, load_certificate(p));
        } catch (const std::exception&) {
            missing.missing.push_back(p);
        }
    }
    PropertyReport rep = verify_properties_AB(certs);
    rep.missing = std::move(missing.missing);
    return rep;
}

void write_report_csv(const PropertyReport& r, std::ostream& out) {
    out << "name,beta_re_lo,beta_re_hi,beta_im_lo,beta_im_hi,simple,gamma_re_lo,gamma_re_hi,gamma_im_lo,gamma_im_hi,"
           "gamma_excludes_zero\n";
    for (const auto& row : r.rows) {
        out << row.name << ',' << format_double(row.beta.re.lo()) << ',' << format_double(row.beta.re.hi()) << ','
            << format_double(row.beta.im.lo()) << ',' << format_double(row.beta.im.hi()) << ','
            << (row.simple ? "proved" : "inconclusive") << ',' << format_double(row.gamma.value.re.lo()) << ','
            << format_double(row.gamma.value.re.hi()) << ',' << format_double(row.gamma.value.im.lo()) << ','
            << format_double(row.gamma.value.im.hi()) << ',' << (row.gamma.excludes_zero ? "true" : "false") << '\n';
    }
    for (const auto& m : r.missing) out << "# missing certificate: " << m << '\n';
}

json report_json(const PropertyReport& r) {
    json j;
    j["gamma_note"] = "unnormalized sum over n of (-1)^n n (c_n - d_n)";
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"name", row.name},
                        {"beta", {{"re", interval_json(row.beta.re)}, {"im", interval_json(row.beta.im)}}},
                        {"simple", row.simple ? "proved" : "inconclusive"},
                        {"simple_note", row.simple_note},
                        {"gamma", {{"re", interval_json(row.gamma.value.re)}, {"im", interval_json(row.gamma.value.im)}}},
                        {"gamma_excludes_zero", row.gamma.excludes_zero}});
    }
    j["rows"] = std::move(rows);
    j["missing"] = r.missing;
    return j;
}

}  // namespace rignls
