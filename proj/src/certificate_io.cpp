#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rignls/radii.hpp"

namespace rignls {

namespace {
constexpr const char* kFormat = "rignls-certificate/1";
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v))
        throw CertificateFormatError("not a decimal number: '" + s + "'");
    return v;
}

json interval_json(const Interval& x) { return json::array({format_double(x.lo()), format_double(x.hi())}); }

Interval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw CertificateFormatError("interval must be a pair of decimals");
    double lo = parse_double(j[0].get<std::string>()), hi = parse_double(j[1].get<std::string>());
    if (lo > hi) throw CertificateFormatError("interval endpoints out of order");
    return Interval(lo, hi);
}

json EnclosureCertificate::to_json() const {
    json j;
    j["format"] = kFormat;
    j["problem"] = problem_;
    j["params"] = params_;
    j["center"] = center_;
    j["s"] = format_double(s_);
    j["m"] = m_;
    j["M"] = M_;
    j["radius"] = format_double(radius_);
    j["radius_max"] = format_double(radius_max_);
    j["injectivity"] = injectivity_;
    json p = json::array();
    for (const auto& v : polys_at_r_) p.push_back(interval_json(v));
    j["polys_at_r"] = std::move(p);
    return j;
}

std::string EnclosureCertificate::serialize() const { return to_json().dump(1) + "\n"; }

EnclosureCertificate certificate_from_json(const json& j) {
    try {
        if (!j.is_object() || j.value("format", "") != kFormat) throw CertificateFormatError("unknown certificate format");
        EnclosureCertificate c;
        c.problem_ = j.at("problem").get<std::string>();
        if (c.problem_ != "bound-state" && c.problem_ != "eigenpair" && c.problem_ != "simplicity")
            throw CertificateFormatError("unknown problem kind '" + c.problem_ + "'");
        c.params_ = j.at("params");
        c.center_ = j.at("center");
        c.s_ = parse_double(j.at("s").get<std::string>());
        c.m_ = j.at("m").get<long>();
        c.M_ = j.at("M").get<long>();
        c.radius_ = parse_double(j.at("radius").get<std::string>());
        c.radius_max_ = parse_double(j.at("radius_max").get<std::string>());
        c.injectivity_ = j.at("injectivity").get<std::string>();
        if (c.injectivity_.empty()) throw CertificateFormatError("missing injectivity attestation");
        if (!(c.radius_ > 0) || !std::isfinite(c.radius_) || c.radius_max_ < c.radius_)
            throw CertificateFormatError("radius must be positive and finite");
        if (!(c.s_ > 0) || c.m_ < 1 || c.M_ <= c.m_) throw CertificateFormatError("inconsistent parameters s, m, M");
        const json& p = j.at("polys_at_r");
        if (!p.is_array() || p.empty()) throw CertificateFormatError("missing proof record");
        for (const auto& e : p) {
            Interval v = interval_from_json(e);
            if (!(v.hi() < 0)) throw CertificateFormatError("proof record contains a radii polynomial value that is not negative");
            c.polys_at_r_.push_back(v);
        }
        return c;
    } catch (const json::exception& e) {
        throw CertificateFormatError(std::string("malformed certificate: ") + e.what());
    }
}

EnclosureCertificate parse_certificate(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CertificateFormatError(std::string("certificate is not valid JSON: ") + e.what());
    }
    return certificate_from_json(j);
}

EnclosureCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open certificate " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_certificate(ss.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::ios_base::failure("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::ios_base::failure("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace rignls
