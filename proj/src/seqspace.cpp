#include "rignls/seqspace.hpp"

#include <stdexcept>
#include <string>

namespace rignls {

const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::OddAboutHalf: return "odd-about-half";
        case Symmetry::EvenAboutHalf: return "even-about-half";
        default: return "none";
    }
}

Symmetry symmetry_from_string(const std::string& s) {
    if (s == "odd-about-half") return Symmetry::OddAboutHalf;
    if (s == "even-about-half") return Symmetry::EvenAboutHalf;
    if (s == "none") return Symmetry::None;
    throw std::invalid_argument("unknown symmetry class: " + s);
}

PowerTable::PowerTable(double s, long n) : s_(s), pos_(n + 1), neg_(n + 1) {
    for (long k = 0; k <= n; ++k) {
        pos_[k] = ipow(weight(k), s);
        neg_[k] = Interval(1.0) / pos_[k];
    }
}

Interval PowerTable::wpow(long k) const {
    long a = weight(k);
    return a < static_cast<long>(pos_.size()) ? pos_[a] : ipow(a, s_);
}

Interval PowerTable::winv(long k) const {
    long a = weight(k);
    return a < static_cast<long>(neg_.size()) ? neg_[a] : Interval(1.0) / ipow(a, s_);
}

SineSeries point_series(const std::vector<double>& b, Symmetry sym, double s) {
    SineSeries x;
    x.symmetry = sym;
    x.s = s;
    x.coeffs.reserve(b.size());
    for (double v : b) x.coeffs.emplace_back(v);
    return x;
}

Interval snorm(const SineSeries& x, double s) {
    Interval best(0.0);
    for (long k = 1; k <= x.m(); ++k) best = max(best, mag(x[k]) * ipow(k, s));
    return best;
}

Interval Ball::coordinate(long k) const {
    double r = rnd::div_up(radius, ipow(k, s).lo());
    double c = k <= static_cast<long>(center.size()) ? center[k - 1] : 0.0;
    return Interval::ball(c, r);
}

bool Ball::contains(const std::vector<double>& x) const {
    long n = std::max(x.size(), center.size());
    for (long k = 1; k <= n; ++k) {
        double v = k <= static_cast<long>(x.size()) ? x[k - 1] : 0.0;
        if (!coordinate(k).contains(v)) return false;
    }
    return true;
}

Interval tail_zeta(long n, double s) {
    Interval ns = ipow(n, s);
    return Interval(1.0) / ns + Interval(static_cast<double>(n)) / (ns * Interval(exact_add(s, -1)));
}

EstimateTable::EstimateTable(double s, long M) : s_(s), M_(M), pw_(s, 4 * M + 8) {
    if (!(s > 2)) throw std::invalid_argument("EstimateTable: decay rate must satisfy s > 2");
    // gamma_k is decreasing only from k = 7 on, and alpha2_q <= alpha2_M for q >= M relies on it
    if (M < 7) throw std::invalid_argument("EstimateTable: M must be at least 7");
    Interval sm1(exact_add(s, -1));
    c2_ = Interval(2.0) * (Interval(2.0) + pw_.winv(2) + pw_.winv(3) + Interval(1.0) / (ipow(3, exact_add(s, -1)) * sm1));

    alpha2_.resize(M + 1);
    alpha2_[0] = Interval(4.0) + Interval(1.0) / (ipow(2, exact_add(2 * s, -1)) * Interval(exact_add(2 * s, -1)));
    for (long k = 1; k < M; ++k) {
        Interval sum(0.0);
        for (long k1 = 1; k1 < k; ++k1) sum += pw_.wpow(k) * pw_.winv(k1) * pw_.winv(k - k1);
        alpha2_[k] = c2_ + sum;
    }
    alpha2_[M] = c2_ + gamma(M);

    alpha3_.resize(M + 1);
    eps3_.resize(M + 1);
    for (long k = 0; k <= M; ++k) {
        alpha3_[k] = compute_alpha3(k);
        eps3_[k] = compute_eps3(k);
    }
    alpha3_max_ = alpha3_[0];
    for (long k = 1; k <= M; ++k) alpha3_max_ = max(alpha3_max_, alpha3_[k]);
}

Interval EstimateTable::gamma(long k) const {
    if (k < 4) throw std::invalid_argument("gamma_k is only defined for k >= 4");
    Interval kk(static_cast<double>(k));
    Interval t1 = Interval(2.0) * pow(kk / Interval(static_cast<double>(k - 1)), s_);
    Interval br = Interval(4.0) * log(Interval(static_cast<double>(k - 2))) / kk + (pi_squared() - Interval(6.0)) / Interval(3.0);
    Interval t2 = br * pow(Interval(2.0) / kk + Interval(0.5), exact_add(s_, -2));
    return t1 + t2;
}

Interval EstimateTable::alpha2(long k) const {
    k = k < 0 ? -k : k;
    if (k <= M_) return alpha2_[k];
    return c2_ + gamma(k);
}

Interval EstimateTable::alpha2_sup_from(long q0) const {
    q0 = std::max(q0, 0L);
    Interval best = alpha2(q0);
    for (long q = q0 + 1; q <= M_; ++q) best = max(best, alpha2_[q]);
    // beyond M the gamma branch is decreasing, so alpha2_M (or alpha2_q0) dominates
    return best;
}

Interval EstimateTable::alpha3(long k) const {
    k = k < 0 ? -k : k;
    if (k <= M_) return alpha3_[k];
    return compute_alpha3(k);
}

Interval EstimateTable::eps3(long k) const {
    if (k >= 0 && k <= M_) return eps3_[k];
    return compute_eps3(weight(k));
}

Interval EstimateTable::compute_alpha3(long k) const {
    const long M = M_;
    const double s = s_;
    const Interval aM = alpha2_[M];
    Interval sm1(exact_add(s, -1));
    if (k == 0) {
        Interval sum(0.0);
        for (long k1 = 1; k1 < M; ++k1) sum += alpha2_[k1] * pw_.winv(k1) * pw_.winv(k1);
        return alpha2_[0] + Interval(2.0) * sum + Interval(2.0) * aM / (ipow(M - 1, exact_add(2 * s, -1)) * Interval(exact_add(2 * s, -1)));
    }
    if (k < M) {
        Interval ks = pw_.wpow(k);
        Interval t(0.0);
        for (long k1 = 1; k1 <= M - k - 1; ++k1) t += alpha2_[k1 + k] * ks * pw_.winv(k1) * pw_.winv(k + k1);
        t += aM * ks * (pw_.winv(M - k) * pw_.winv(M) + Interval(1.0) / (ipow(M - k, exact_add(s, -1)) * pw_.wpow(M) * sm1));
        t += alpha2_[k];
        for (long k1 = 1; k1 < k; ++k1) t += alpha2_[k1] * ks * pw_.winv(k1) * pw_.winv(k - k1);
        t += alpha2_[0];
        for (long k1 = 1; k1 < M; ++k1) t += alpha2_[k1] * ks * pw_.winv(k1) * pw_.winv(k + k1);
        t += aM / (ipow(M - 1, exact_add(s, -1)) * sm1);
        return t;
    }
    // The k >= M display has a misplaced fraction bar; it is read as
    // aM [2 + 2^-s + 3^-s + 1/(3^(s-1)(s-1)) + 1/((M-1)^(s-1)(s-1)) + gamma_k].
    // The brute-force test in test_seqspace checks this reading.
    Interval t = aM * (Interval(2.0) + pw_.winv(2) + pw_.winv(3) + Interval(1.0) / (ipow(3, exact_add(s, -1)) * sm1) +
                       Interval(1.0) / (ipow(M - 1, exact_add(s, -1)) * sm1) + gamma(k));
    t += alpha2_[0];
    Interval Ms = pw_.wpow(M);
    for (long k1 = 1; k1 < M; ++k1) t += alpha2_[k1] * pw_.winv(k1) * (Interval(1.0) + Ms * pw_.winv(M - k1));
    return t;
}

Interval EstimateTable::compute_eps3(long k) const {
    const long M = M_;
    Interval t = Interval(2.0) * alpha2_[M] / (Interval(exact_add(s_, -1)) * ipow(M - 1, exact_add(s_, -1)) * pw_.wpow(M + k));
    for (long k1 = M; k1 <= M + k - 1; ++k1) t += alpha2(k1 - k) * pw_.winv(k1) * pw_.winv(k1 - k);
    return t;
}

Interval conv_quadratic_bound(long q, const EstimateTable& t) { return t.alpha2(q) * t.powers().winv(q); }

}  // namespace rignls
