#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rignls/radii.hpp"

using namespace rignls;

namespace {

BoundData quadratic_case(double y) {
    BoundData b;
    b.Y = {Interval(y)};
    b.Z = {{Interval(0.5), Interval(10.0)}};
    b.winv = {Interval(1.0)};
    b.labels = {"x1"};
    b.Y_M = Interval(0.0);
    b.Z_M = {Interval(0.25)};
    b.s = 3;
    b.m = 1;
    b.M = 2;
    b.p = 2;
    return b;
}

InjectivityAttestation attest() { return {"test operator is the identity on the tail", true}; }

}  // namespace

TEST_CASE("polynomial assembly and evaluation") {
    RadiiPolynomialSet set = assemble_polynomials(quadratic_case(1e-3));
    REQUIRE(set.polys.size() == 2);
    CHECK(set.labels.back() == "tail");
    Interval v = set.polys[0](0.01);
    CHECK(v.contains(1e-3 - 0.005 + 10 * 1e-4));
    CHECK(set.polys[1](0.5).contains(-0.375));
}

TEST_CASE("negative radius interval of a quadratic") {
    // roots of 10 r^2 - 0.5 r + 1e-3 are (0.5 -+ sqrt(0.21)) / 20
    const double r1 = (0.5 - std::sqrt(0.21)) / 20, r2 = (0.5 + std::sqrt(0.21)) / 20;
    RadiusSearch rs = find_negative_radius(assemble_polynomials(quadratic_case(1e-3)));
    REQUIRE(rs.ok);
    CHECK(rs.r_min > r1);
    CHECK(rs.r_min <= 1.5 * r1);
    CHECK(rs.r_max < r2);
    CHECK(rs.r_max * 1.5 >= r2);
    for (const auto& p : rs.values) CHECK(p.hi() < 0);
}

TEST_CASE("certificates are only issued for negative polynomials") {
    CHECK_THROWS_AS(issue_certificate(quadratic_case(1.0), "bound-state", json::object(), json::array(), attest()),
                    VerificationFailure);
    InjectivityAttestation none;
    CHECK_THROWS_AS(issue_certificate(quadratic_case(1e-3), "bound-state", json::object(), json::array(), none),
                    VerificationFailure);
}

TEST_CASE("certificate serialization round-trips and rejects tampering") {
    EnclosureCertificate c =
        issue_certificate(quadratic_case(1e-3), "bound-state", json{{"sigma", 1}}, json::array({"0.1"}), attest());
    EnclosureCertificate d = parse_certificate(c.serialize());
    CHECK(d.serialize() == c.serialize());
    CHECK(d.radius() == c.radius());

    auto tampered = [&](auto edit) {
        json j = c.to_json();
        edit(j);
        return j;
    };
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j["radius"] = "-1e-5"; })), CertificateFormatError);
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j["polys_at_r"][0] = json::array({"-1", "0.5"}); })),
                    CertificateFormatError);
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j["problem"] = "other"; })), CertificateFormatError);
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j["format"] = "v0"; })), CertificateFormatError);
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j["injectivity"] = ""; })), CertificateFormatError);
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j["radius_max"] = "1e-30"; })), CertificateFormatError);
    CHECK_THROWS_AS(certificate_from_json(tampered([](json& j) { j.erase("center"); })), CertificateFormatError);
    CHECK_THROWS_AS(parse_certificate("{not json"), CertificateFormatError);
}

TEST_CASE("decimal serialization is exact") {
    for (double x : {0.1, 1.0 / 3, 12.898, 4.0089e-13, 1e-300, -7.25})
        CHECK(parse_double(format_double(x)) == x);
    CHECK_THROWS_AS(parse_double("1.5x"), CertificateFormatError);
    CHECK_THROWS_AS(parse_double(""), CertificateFormatError);
    Interval i = interval_from_json(interval_json(Interval(0.1, 0.3)));
    CHECK(i.lo() == 0.1);
    CHECK(i.hi() == 0.3);
}

TEST_CASE("atomic writes leave no temporary file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rignls_radii_test";
    fs::remove_all(dir);
    std::string path = (dir / "sub" / "a.json").string();
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    std::ifstream in(path);
    std::string s;
    in >> s;
    CHECK(s == "second");
    long files = 0;
    for (const auto& e : fs::directory_iterator(dir / "sub")) files += e.is_regular_file();
    CHECK(files == 1);
    fs::remove_all(dir);
}
