#pragma once

#include <vector>

#include "rignls/complex_interval.hpp"

namespace rignls {

enum class Symmetry { OddAboutHalf, EvenAboutHalf, None };

const char* to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& s);

// w_0 = 1, w_k = |k|
inline long weight(long k) { return k == 0 ? 1 : (k < 0 ? -k : k); }

// Enclosures of k^s and k^-s for k = 0..n (index 0 holds w_0 = 1).
class PowerTable {
public:
    PowerTable() = default;
    PowerTable(double s, long n);
    double s() const { return s_; }
    long size() const { return static_cast<long>(pos_.size()) - 1; }
    // w_k^s and w_k^-s; indices outside the table are computed on demand
    Interval wpow(long k) const;
    Interval winv(long k) const;

private:
    double s_ = 0;
    std::vector<Interval> pos_, neg_;
};

// phi(x) = sqrt(2) sum_n b_n sin(pi n x) with b_{-n} = -b_n. Reduced storage keeps
// b_{2n-1} (odd-about-half) or b_{2n} (even-about-half) at position n.
struct SineSeries {
    std::vector<CInterval> coeffs;  // coeffs[n-1] holds the coefficient with stored index n
    Symmetry symmetry = Symmetry::None;
    double s = 0;

    long m() const { return static_cast<long>(coeffs.size()); }
    const CInterval& operator[](long n) const { return coeffs.at(n - 1); }
};

SineSeries point_series(const std::vector<double>& b, Symmetry sym, double s);

// sup_k |x_k| w_k^s over stored coefficients
Interval snorm(const SineSeries& x, double s);

struct Ball {
    std::vector<double> center;  // center[k-1] is the k-th coordinate
    double radius = 0;
    double s = 0;
    // enclosure of coordinate k (1-based) implied by membership
    Interval coordinate(long k) const;
    bool contains(const std::vector<double>& x) const;
};

// Decay constants for triple and quadratic convolutions of w^-s weights.
class EstimateTable {
public:
    EstimateTable(double s, long M);

    double s() const { return s_; }
    long M() const { return M_; }
    const PowerTable& powers() const { return pw_; }

    Interval gamma(long k) const;
    Interval alpha2(long k) const;
    Interval alpha3(long k) const;
    Interval eps3(long k) const;
    Interval alpha3_max() const { return alpha3_max_; }
    // sup of alpha3_k over k >= M; the k >= M branch depends on k only through the decreasing gamma_k
    Interval alpha3_tail_sup() const { return alpha3_[M_]; }
    // sup of alpha2_q over q >= q0
    Interval alpha2_sup_from(long q0) const;

private:
    Interval compute_alpha3(long k) const;
    Interval compute_eps3(long k) const;

    double s_;
    long M_;
    PowerTable pw_;
    Interval c2_;  // 2[2 + 2^-s + 3^-s + 1/(3^(s-1)(s-1))]
    std::vector<Interval> alpha2_, alpha3_, eps3_;
    Interval alpha3_max_;
};

// bound on sum_{k1+k2=q} w_k1^-s w_k2^-s
Interval conv_quadratic_bound(long q, const EstimateTable& t);

// sum_{j >= n} j^-s <= n^-s + n^(1-s)/(s-1); used for tails
Interval tail_zeta(long n, double s);

}  // namespace rignls
