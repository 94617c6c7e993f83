#include "rignls/radii.hpp"

#include <cmath>

namespace rignls {

Interval Polynomial::operator()(double r) const {
    Interval acc(0.0);
    Interval R(r);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * R + *it;
    return acc;
}

RadiiPolynomialSet assemble_polynomials(const BoundData& b) {
    const std::size_t K = b.Y.size();
    if (b.Z.size() != K || b.winv.size() != K) throw std::invalid_argument("assemble_polynomials: inconsistent bound sizes");
    RadiiPolynomialSet set;
    set.polys.reserve(K + 1);
    for (std::size_t k = 0; k < K; ++k) {
        Polynomial q;
        q.c.assign(b.p + 1, Interval(0.0));
        q.c[0] = b.Y[k];
        for (std::size_t d = 0; d < b.Z[k].size(); ++d) q.c[d + 1] += b.Z[k][d];
        q.c[1] -= b.winv[k];
        set.polys.push_back(std::move(q));
        set.labels.push_back(k < b.labels.size() ? b.labels[k] : "k=" + std::to_string(k));
    }
    Polynomial t;
    t.c.assign(b.p + 1, Interval(0.0));
    t.c[0] = b.Y_M;
    for (std::size_t d = 0; d < b.Z_M.size(); ++d) t.c[d + 1] += b.Z_M[d];
    t.c[1] -= Interval(1.0);
    set.polys.push_back(std::move(t));
    set.labels.push_back("tail");
    return set;
}

std::vector<double> radius_grid() {
    std::vector<double> g;
    for (double r = 1e-16; r <= 1.0; r *= 1.5) g.push_back(r);
    return g;
}

RadiusSearch find_negative_radius(const RadiiPolynomialSet& set) {
    RadiusSearch res;
    double best_excess = INFINITY;
    for (double r : radius_grid()) {
        long worst = -1;
        double excess = -INFINITY;
        std::vector<Interval> vals;
        vals.reserve(set.polys.size());
        for (std::size_t k = 0; k < set.polys.size(); ++k) {
            Interval v = set.polys[k](r);
            vals.push_back(v);
            double rel = v.hi() / r;
            if (rel > excess) {
                excess = rel;
                worst = static_cast<long>(k);
            }
        }
        if (excess < 0) {
            if (!res.ok) {
                res.ok = true;
                res.r_min = r;
                res.values = std::move(vals);
            }
            res.r_max = r;
        } else if (!res.ok && excess < best_excess) {
            best_excess = excess;
            res.worst = worst;
            res.worst_excess = excess * r;
            res.worst_label = worst >= 0 ? set.labels[worst] : "";
        }
    }
    return res;
}

EnclosureCertificate issue_certificate(const BoundData& bounds, const std::string& problem, json params, json center,
                                       const InjectivityAttestation& attestation) {
    if (!attestation.verified) throw VerificationFailure("issue_certificate: missing injectivity attestation");
    RadiiPolynomialSet set = assemble_polynomials(bounds);
    RadiusSearch rs = find_negative_radius(set);
    if (!rs.ok) {
        throw VerificationFailure("no grid radius makes every radii polynomial negative; most violating component " +
                                  rs.worst_label + " exceeds by " + format_double(rs.worst_excess));
    }
    EnclosureCertificate c;
    c.problem_ = problem;
    c.params_ = std::move(params);
    c.center_ = std::move(center);
    c.radius_ = rs.r_min;
    c.radius_max_ = rs.r_max;
    c.s_ = bounds.s;
    c.m_ = bounds.m;
    c.M_ = bounds.M;
    c.polys_at_r_ = rs.values;
    c.injectivity_ = attestation.statement;
    return c;
}

}  // namespace rignls
