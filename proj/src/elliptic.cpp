#include "rignls/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rignls {

namespace {
double complement(double k) { return std::sqrt((1 - k) * (1 + k)); }
}  // namespace

double complete_elliptic_K(double k) {
    if (!(k >= 0 && k < 1)) throw std::domain_error("complete_elliptic_K: modulus must lie in [0, 1)");
    double a = 1, b = complement(k);
    for (int i = 0; i < 64 && std::fabs(a - b) > 1e-16 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

double modulus_equation(int j, int sigma, double k) {
    double K = complete_elliptic_K(k);
    double c = 4.0 * (j + 1) * (j + 1) * K * K;
    return sigma > 0 ? c * (2 * k * k - 1) : c * (k * k + 1);
}

double solve_modulus(int j, int sigma, double mu) {
    if (j < 0) throw std::invalid_argument("solve_modulus: node count must be nonnegative");
    double lo = 0, hi = 1;
    double f0 = modulus_equation(j, sigma, 0.0);
    if (mu < f0) throw std::domain_error("solve_modulus: mu is below the threshold of this branch");
    if (mu == f0) return 0.0;
    // the map k -> equation is strictly increasing on [0, 1)
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (modulus_equation(j, sigma, mid) < mu) lo = mid;
        else hi = mid;
    }
    double rl = std::fabs(modulus_equation(j, sigma, lo) - mu);
    double rh = hi < 1 ? std::fabs(modulus_equation(j, sigma, hi) - mu) : INFINITY;
    return rl <= rh ? lo : hi;
}

EllipticParams elliptic_params(int j, int sigma, double mu) {
    EllipticParams p;
    p.j = j;
    p.sigma = sigma;
    p.mu = mu;
    p.k = solve_modulus(j, sigma, mu);
    return p;
}

JacobiValues jacobi(double u, double k) {
    if (k == 0) return {std::sin(u), std::cos(u), 1.0};
    constexpr int kMax = 32;
    double a[kMax + 1], c[kMax + 1];
    a[0] = 1;
    double b = complement(k);
    c[0] = k;
    int n = 0;
    while (n < kMax && std::fabs(c[n]) > 1e-17 * a[n]) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
    double sn = std::sin(phi), cn = std::cos(phi);
    return {sn, cn, std::sqrt((1 - k * sn) * (1 + k * sn))};
}

double bound_state_closed_form(const EllipticParams& p, double x) {
    double K = complete_elliptic_K(p.k);
    double amp = 2 * std::numbers::sqrt2 * (p.j + 1) * p.k * K;
    if (p.sigma > 0) {
        double u = 2 * (p.j + 1) * K * (x - 0.5) + (p.j % 2) * K;
        return amp * jacobi(u, p.k).cn;
    }
    return amp * jacobi(2 * (p.j + 1) * K * x, p.k).sn;
}

std::vector<double> sine_coefficients(const EllipticParams& p, int nmax, int N) {
    std::vector<double> f(N);
    for (int i = 1; i < N; ++i) f[i] = bound_state_closed_form(p, static_cast<double>(i) / N);
    std::vector<double> b(nmax);
    for (int n = 1; n <= nmax; ++n) {
        long double acc = 0;
        for (int i = 1; i < N; ++i) {
            // reduce the argument exactly before calling sin
            long r = (static_cast<long>(n) * i) % (2L * N);
            acc += f[i] * std::sin(std::numbers::pi * static_cast<double>(r) / N);
        }
        b[n - 1] = static_cast<double>(acc) / N / std::numbers::sqrt2;
    }
    return b;
}

SineSeries reduced_coefficients(const EllipticParams& p, int m, double s, int N) {
    bool odd = p.j % 2 == 0;
    std::vector<double> full = sine_coefficients(p, 2 * m, N);
    std::vector<double> red(m);
    for (int n = 1; n <= m; ++n) red[n - 1] = full[(odd ? 2 * n - 1 : 2 * n) - 1];
    return point_series(red, odd ? Symmetry::OddAboutHalf : Symmetry::EvenAboutHalf, s);
}

}  // namespace rignls
