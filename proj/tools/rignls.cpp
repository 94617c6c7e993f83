#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rignls/reference_runs.hpp"

using namespace rignls;

namespace {

enum Exit { kOk = 0, kVerification = 2, kInvalid = 3, kMissing = 4 };

struct MissingInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string cert_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("RIGNLS_CERT_DIR")) return env;
    return "certs";
}

std::string bound_state_name(int sigma, const std::string& mu, int nodes) {
    return "bound_state_sigma" + std::to_string(sigma) + "_mu" + mu + "_nodes" + std::to_string(nodes) + ".json";
}

EnclosureCertificate load_input(const std::string& path) {
    if (!std::filesystem::exists(path)) throw MissingInput("input certificate not found: " + path);
    return load_certificate(path);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    write_file_atomic(path, text);
}

std::string shortest(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void check_sigma(int sigma) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("--sigma must be 1 or -1");
}

std::complex<double> parse_target(const std::string& t) {
    std::string u = t;
    for (char& ch : u)
        if (ch == ',') ch = ' ';
    std::istringstream in(u);
    double re = 0, im = 0;
    if (!(in >> re)) throw std::invalid_argument("--eig-target expects re or re,im");
    in >> im;
    return {re, im};
}

struct Common {
    int sigma = 0;
    std::string mu;
    int nodes = -1;
    std::string in, out, out_dir, plot;
    int plot_points = 401;
    int retries = 3;
};

int prove_bound_state_cmd(const Common& o, long m, double s) {
    check_sigma(o.sigma);
    if (o.mu.empty() || o.nodes < 0) throw std::invalid_argument("--sigma, --mu and --nodes are required");
    double mu = parse_double(o.mu);
    if (m <= 0 || s <= 0) {
        const BoundStateConfig& c = bound_state_config(o.sigma, o.nodes, mu);
        if (m <= 0) m = c.m_phi;
        if (s <= 0) s = c.s_phi;
    }
    make_bound_state_problem(o.sigma, mu, o.nodes, m, s);  // validates before any computation
    BoundStateRun run = run_bound_state(o.sigma, mu, o.nodes, m, s, o.retries);
    for (const auto& l : run.log) std::cerr << "retry: " << l << '\n';
    if (!run.ok) {
        std::cerr << "verification failed: " << run.error << '\n';
        return kVerification;
    }
    std::string path = o.out.empty() ? (std::filesystem::path(cert_dir(o.out_dir)) / bound_state_name(o.sigma, o.mu, o.nodes)).string() : o.out;
    write_file_atomic(path, run.cert->serialize());
    if (!o.plot.empty()) {
        std::ostringstream ss;
        write_bound_state_plot(BoundStateEnclosure::from_certificate(*run.cert), o.plot_points, ss);
        write_file_atomic(o.plot, ss.str());
    }
    std::cout << "bound state verified: r = " << format_double(run.cert->radius()) << " (m_phi = " << run.m_used
              << ")\ncertificate: " << path << '\n';
    return kOk;
}

int prove_spectrum_cmd(const Common& o, double s, long M, const std::string& variant, long index, const std::string& target) {
    Variant v = variant_from_string(variant);
    std::string in = o.in;
    if (in.empty()) {
        if (o.sigma == 0 || o.mu.empty() || o.nodes < 0)
            throw std::invalid_argument("give --in or all of --sigma, --mu, --nodes");
        in = (std::filesystem::path(cert_dir(o.out_dir)) / bound_state_name(o.sigma, o.mu, o.nodes)).string();
    }
    EnclosureCertificate phi = load_input(in);
    BoundStateEnclosure b = BoundStateEnclosure::from_certificate(phi);
    if (o.sigma != 0 && o.sigma != b.sigma()) throw std::invalid_argument("certificate sigma differs from --sigma");
    if (!o.mu.empty() && parse_double(o.mu) != b.mu().mid()) throw std::invalid_argument("certificate mu differs from --mu");
    if (o.nodes >= 0 && o.nodes != b.nodes()) throw std::invalid_argument("certificate nodes differ from --nodes");
    if (!(s > 2) || !(s < b.s())) throw std::invalid_argument("--s must satisfy 2 < s < s_phi");

    EigenSelector sel;
    if (!target.empty()) {
        sel.target = parse_target(target);
    } else {
        sel.by_target = false;
        sel.index = index;
    }
    EigenRun run = run_eigenpair(phi, s, v, sel, M, o.retries);
    for (const auto& l : run.log) std::cerr << "retry: " << l << '\n';
    if (!run.ok) {
        std::cerr << "verification failed: " << run.error << '\n';
        return kVerification;
    }
    EigenEnclosure e = EigenEnclosure::from_certificate(*run.cert);
    std::string path = o.out;
    if (path.empty()) {
        std::ostringstream name;
        name << "eigen_sigma" << b.sigma() << "_mu" << shortest(b.mu().mid()) << "_nodes" << b.nodes() << "_"
             << to_string(v) << "_beta" << std::setprecision(8) << e.center.beta.real();
        if (!e.real) name << (e.center.beta.imag() < 0 ? "-" : "+") << std::abs(e.center.beta.imag()) << "i";
        path = (std::filesystem::path(cert_dir(o.out_dir)) / (name.str() + ".json")).string();
    }
    write_file_atomic(path, run.cert->serialize());
    if (!o.plot.empty()) {
        std::ostringstream ss;
        write_eigenfunction_plot(e, o.plot_points, ss);
        write_file_atomic(o.plot, ss.str());
    }
    CInterval beta = e.beta();
    std::cout << "eigenpair verified: beta in [" << format_double(beta.re.lo()) << ", " << format_double(beta.re.hi())
              << "] + i[" << format_double(beta.im.lo()) << ", " << format_double(beta.im.hi())
              << "], r = " << format_double(run.cert->radius()) << "\ncertificate: " << path << '\n';
    return kOk;
}

int prove_simple_cmd(const Common& o) {
    if (o.in.empty()) throw std::invalid_argument("--in <eigenpair certificate> is required");
    EnclosureCertificate eig = load_input(o.in);
    try {
        EnclosureCertificate c = prove_simple(eig);
        if (!o.out.empty()) write_file_atomic(o.out, c.serialize());
        std::cout << "simple: proved (r = " << format_double(c.radius()) << ")\n";
        return kOk;
    } catch (const VerificationFailure& e) {
        std::cout << "simple: inconclusive: " << e.what() << '\n';
        return kVerification;
    }
}

int check_gamma_cmd(const std::vector<std::string>& ins, const std::string& out) {
    if (ins.empty()) throw std::invalid_argument("--in <eigenpair certificate> is required");
    PropertyReport rep = verify_properties_AB(ins);
    std::ostringstream ss;
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json") ss << report_json(rep).dump(2) << '\n';
    else write_report_csv(rep, ss);
    write_text(out, ss.str());
    if (!rep.missing.empty()) return kMissing;
    return rep.all_ok() ? kOk : kVerification;
}

int reproduce_table_cmd(int table, int jobs, int retries, const std::string& out) {
    std::ostringstream ss;
    bool ok = true;
    if (table == 1) {
        auto rows = reproduce_table1(jobs, retries);
        write_table1_csv(rows, ss);
        for (const auto& r : rows) ok = ok && r.run.ok;
    } else if (table == 2 || table == 3) {
        auto rows = reproduce_eigen_table(table, jobs, retries);
        write_eigen_table_csv(rows, ss);
        for (const auto& r : rows) ok = ok && r.run.ok && r.simple && r.gamma.excludes_zero;
    } else {
        throw std::invalid_argument("--table must be 1, 2 or 3");
    }
    write_text(out, ss.str());
    return ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigorous enclosures for bound states, linearized spectra and controllability coefficients of the 1-D cubic NLS"};
    app.require_subcommand(1);
    Common o;
    long m = 0, M = 0, index = 1;
    double s = 0, s_eig = 3;
    std::string variant = "N", target;
    std::vector<std::string> ins;
    int table = 0, jobs = 1;

    auto add_state = [&](CLI::App* c) {
        c->add_option("--sigma", o.sigma, "1 (focusing) or -1 (defocusing)");
        c->add_option("--mu", o.mu, "decimal value of mu");
        c->add_option("--nodes", o.nodes, "number of interior zeros of the bound state");
    };
    auto add_io = [&](CLI::App* c) {
        c->add_option("--out", o.out, "output path");
        c->add_option("--out-dir", o.out_dir, "certificate directory (default $RIGNLS_CERT_DIR or ./certs)");
        c->add_option("--retries", o.retries, "retries after a verification failure")->check(CLI::NonNegativeNumber);
    };
    auto add_plot = [&](CLI::App* c) {
        c->add_option("--plot", o.plot, "write plot data (columnar text)");
        c->add_option("--plot-points", o.plot_points, "plot grid size")->check(CLI::PositiveNumber);
    };

    auto* bs = app.add_subcommand("prove-bound-state", "enclose a bound state");
    add_state(bs);
    add_io(bs);
    add_plot(bs);
    bs->add_option("--m", m, "reduced truncation m_phi (default from the reference table)");
    bs->add_option("--s", s, "decay rate s_phi (default from the reference table)");

    auto* sp = app.add_subcommand("prove-spectrum", "enclose an eigenpair of the linearization");
    add_state(sp);
    add_io(sp);
    add_plot(sp);
    sp->add_option("--in", o.in, "bound-state certificate");
    sp->add_option("--s", s_eig, "decay rate of the eigenvector")->capture_default_str();
    sp->add_option("--M", M, "computational parameter (default m + 4 m_phi + 1)");
    sp->add_option("--variant", variant, "N or M")->capture_default_str();
    auto* idx = sp->add_option("--eig-index", index, "1-based index among eigenvalues with Re > 0");
    auto* tgt = sp->add_option("--eig-target", target, "select the eigenvalue nearest re or re,im");
    idx->excludes(tgt);

    auto* si = app.add_subcommand("prove-simple", "prove that a certified eigenvalue is simple");
    si->add_option("--in", o.in, "eigenpair certificate");
    si->add_option("--out", o.out, "simplicity certificate path");

    auto* cg = app.add_subcommand("check-gamma", "simplicity and Gamma report for eigenpair certificates");
    cg->add_option("--in", ins, "eigenpair certificates")->expected(1, -1);
    cg->add_option("--out", o.out, "report path (.json or .csv; default stdout)");

    auto* rt = app.add_subcommand("reproduce-table", "run the reference table pipelines");
    rt->add_option("--table", table, "1, 2 or 3")->required();
    rt->add_option("--jobs", jobs, "parallel rows")->default_val(1)->check(CLI::PositiveNumber);
    rt->add_option("--retries", o.retries, "retries after a verification failure")->check(CLI::NonNegativeNumber);
    rt->add_option("--out", o.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*bs) return prove_bound_state_cmd(o, m, s);
        if (*sp) return prove_spectrum_cmd(o, s_eig, M, variant, index, target);
        if (*si) return prove_simple_cmd(o);
        if (*cg) return check_gamma_cmd(ins, o.out);
        if (*rt) return reproduce_table_cmd(table, jobs, o.retries, o.out);
    } catch (const MissingInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMissing;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kInvalid;
    } catch (const CertificateFormatError& e) {
        std::cerr << "invalid certificate: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kVerification;
    }
    return kInvalid;
}
