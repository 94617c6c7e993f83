#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rignls/interval.hpp"

namespace rignls {

using json = nlohmann::json;

// Y and Z bounds for one problem. Pairs of complex components are flattened, so
// p_k(r) = |Y_k + Z_k(r)| - r/w_k^s becomes one polynomial per scalar component.
struct BoundData {
    std::vector<Interval> Y;               // k = 0..K-1
    std::vector<std::vector<Interval>> Z;  // Z[k][d-1] multiplies r^d
    std::vector<Interval> winv;            // w_k^-s per component
    std::vector<std::string> labels;       // optional, for diagnostics
    Interval Y_M{0.0};
    std::vector<Interval> Z_M;             // tail coefficients of r^1..r^p
    double s = 0;
    long m = 0;
    long M = 0;
    int p = 1;
};

struct Polynomial {
    std::vector<Interval> c;  // c[0] + c[1] r + c[2] r^2 + ...
    Interval operator()(double r) const;
};

struct RadiiPolynomialSet {
    std::vector<Polynomial> polys;  // finite components followed by the tail p_M
    std::vector<std::string> labels;
};

RadiiPolynomialSet assemble_polynomials(const BoundData& b);

struct RadiusSearch {
    bool ok = false;
    double r_min = 0;
    double r_max = 0;
    std::vector<Interval> values;  // p_k(r_min)
    long worst = -1;               // most violating component at the best grid point on failure
    double worst_excess = 0;
    std::string worst_label;
};

std::vector<double> radius_grid();
RadiusSearch find_negative_radius(const RadiiPolynomialSet& polys);

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Produced by a prover after it has checked that the tail operator is invertible.
struct InjectivityAttestation {
    std::string statement;
    bool verified = false;
};

class EnclosureCertificate {
public:
    const std::string& problem() const { return problem_; }
    const json& params() const { return params_; }
    const json& center() const { return center_; }
    double radius() const { return radius_; }
    double radius_max() const { return radius_max_; }
    double s() const { return s_; }
    long m() const { return m_; }
    long M() const { return M_; }
    const std::vector<Interval>& polys_at_r() const { return polys_at_r_; }
    const std::string& injectivity() const { return injectivity_; }

    json to_json() const;
    std::string serialize() const;

private:
    EnclosureCertificate() = default;
    friend EnclosureCertificate issue_certificate(const BoundData&, const std::string&, json, json,
                                                  const InjectivityAttestation&);
    friend EnclosureCertificate certificate_from_json(const json&);

    std::string problem_;
    json params_;
    json center_;
    double radius_ = 0;
    double radius_max_ = 0;
    double s_ = 0;
    long m_ = 0, M_ = 0;
    std::vector<Interval> polys_at_r_;
    std::string injectivity_;
};

// The only way to obtain a certificate from a computation: the polynomials are
// re-assembled from the bounds and re-evaluated here. Throws VerificationFailure.
EnclosureCertificate issue_certificate(const BoundData& bounds, const std::string& problem, json params, json center,
                                       const InjectivityAttestation& attestation);

struct CertificateFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EnclosureCertificate certificate_from_json(const json& j);
EnclosureCertificate parse_certificate(const std::string& text);
EnclosureCertificate load_certificate(const std::string& path);
// temp file + rename
void write_file_atomic(const std::string& path, const std::string& content);

// 17 significant digits; strtod restores the same binary64 value
std::string format_double(double x);
double parse_double(const std::string& s);
json interval_json(const Interval& x);
Interval interval_from_json(const json& j);

}  // namespace rignls
