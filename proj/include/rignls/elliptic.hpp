#pragma once

#include <vector>

#include "rignls/seqspace.hpp"

namespace rignls {

// Closed-form bound states through Jacobi elliptic functions. Plain floating point:
// nothing here enters a certificate.
struct EllipticParams {
    int j = 0;
    int sigma = 1;
    double mu = 0;
    double k = 0;
};

double complete_elliptic_K(double k);
// focusing: 4(j+1)^2 (2k^2-1) K^2, defocusing: 4(j+1)^2 (k^2+1) K^2
double modulus_equation(int j, int sigma, double k);
double solve_modulus(int j, int sigma, double mu);
EllipticParams elliptic_params(int j, int sigma, double mu);

struct JacobiValues {
    double sn, cn, dn;
};
JacobiValues jacobi(double u, double k);

double bound_state_closed_form(const EllipticParams& p, double x);

// b_n = (1/sqrt 2) int_0^1 phi(x) sin(pi n x) dx for n = 1..nmax, by the trapezoid rule
// with N panels (spectrally accurate for these periodic extensions).
std::vector<double> sine_coefficients(const EllipticParams& p, int nmax, int N = 8192);

// reduced series in the parity class of the state (odd-about-half for even j)
SineSeries reduced_coefficients(const EllipticParams& p, int m, double s, int N = 8192);

}  // namespace rignls
