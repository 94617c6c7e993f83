#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rignls/radii.hpp"

namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / "rignls_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    int run(const std::string& args) const {
        std::string cmd = "cd '" + dir.string() + "' && RIGNLS_CERT_DIR=certs '" RIGNLS_CLI_PATH "' " + args + " >out.txt 2>err.txt";
        int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }
    std::string read(const std::string& name) const {
        std::ifstream in(dir / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

}  // namespace

TEST_CASE("bound state, spectrum and simplicity through the command line") {
    Sandbox sb;
    CHECK(sb.run("prove-bound-state --sigma 1 --mu 12.898 --nodes 0 --m 18 --s 4 --plot phi.txt") == 0);
    std::string cert = "certs/bound_state_sigma1_mu12.898_nodes0.json";
    REQUIRE(fs::exists(sb.dir / cert));
    rignls::EnclosureCertificate c = rignls::load_certificate((sb.dir / cert).string());
    CHECK(c.problem() == "bound-state");
    CHECK(c.params()["mu"] == "12.898");
    CHECK(sb.read("phi.txt").find("# x") == 0);

    // identical configuration, identical bytes
    std::string first = sb.read(cert);
    CHECK(sb.run("prove-bound-state --sigma 1 --mu 12.898 --nodes 0 --m 18 --s 4") == 0);
    CHECK(sb.read(cert) == first);

    CHECK(sb.run("prove-spectrum --sigma 1 --mu 12.898 --nodes 0 --eig-index 1 --out eig.json") == 0);
    CHECK(sb.run("prove-simple --in eig.json --out simple.json") == 0);
    CHECK(rignls::load_certificate((sb.dir / "simple.json").string()).problem() == "simplicity");
    CHECK(sb.run("check-gamma --in eig.json --out report.json") == 0);
    CHECK(sb.read("report.json").find("\"gamma_excludes_zero\": true") != std::string::npos);
}

TEST_CASE("exit codes") {
    Sandbox sb;
    // missing input certificate
    CHECK(sb.run("prove-spectrum --sigma 1 --mu 43.273 --nodes 0") == 4);
    CHECK(sb.run("prove-simple --in nowhere.json") == 4);
    CHECK(sb.run("check-gamma --in nowhere.json") == 4);
    // invalid configurations
    CHECK(sb.run("prove-bound-state --sigma 2 --mu 12.898 --nodes 0 --m 18 --s 4") == 3);
    CHECK(sb.run("prove-bound-state --sigma 1 --mu 12.898 --nodes 0 --m 18 --s 1.5") == 3);
    CHECK(sb.run("prove-bound-state --sigma 1 --mu 1.25 --nodes 0") == 3);
    CHECK(sb.run("prove-bound-state --sigma 1 --mu abc --nodes 0 --m 18 --s 4") == 3);
    CHECK(sb.run("reproduce-table --table 7") == 3);
    CHECK(sb.run("no-such-command") == 3);
    // a bound state below the branch threshold has no elliptic guess
    CHECK(sb.run("prove-bound-state --sigma 1 --mu=-20 --nodes 0 --m 18 --s 4") != 0);

    // pipeline integrity: configuration must agree with the certificate
    REQUIRE(sb.run("prove-bound-state --sigma 1 --mu 12.898 --nodes 0 --m 18 --s 4 --out bs.json") == 0);
    CHECK(sb.run("prove-spectrum --in bs.json --sigma 1 --mu 12.898 --nodes 1") == 3);
    CHECK(sb.run("prove-spectrum --in bs.json --sigma -1") == 3);
    CHECK(sb.run("prove-spectrum --in bs.json --mu 12.9") == 3);
    CHECK(sb.run("prove-spectrum --in bs.json --s 4.5") == 3);
    CHECK(sb.run("prove-spectrum --in bs.json --eig-index 1 --eig-target 3") == 3);

    // a tampered certificate is rejected
    std::string text = sb.read("bs.json");
    auto pos = text.find("\"radius\"");
    REQUIRE(pos != std::string::npos);
    std::ofstream(sb.dir / "bad.json") << text.substr(0, pos) + "\"radius\": \"-1\", \"old_radius\"" + text.substr(pos + 8);
    CHECK(sb.run("prove-spectrum --in bad.json") == 3);
}

TEST_CASE("reference table one as CSV") {
    Sandbox sb;
    CHECK(sb.run("reproduce-table --table 1 --jobs 2 --out t1.csv") == 0);
    std::istringstream in(sb.read("t1.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("sigma,nodes,mu,m_phi,s_phi,r_reference,verified,r", 0) == 0);
    int rows = 0, verified = 0;
    while (std::getline(in, line)) {
        ++rows;
        verified += line.find(",true,") != std::string::npos;
    }
    CHECK(rows == 18);
    CHECK(verified == 18);
    // row order and content do not depend on the worker count
    CHECK(sb.run("reproduce-table --table 1 --jobs 1 --out t1b.csv") == 0);
    auto strip_time = [](std::string s) {
        std::istringstream is(s);
        std::string l, out;
        while (std::getline(is, l)) {
            // drop the trailing seconds and error columns
            for (int i = 0; i < 2; ++i) l = l.substr(0, l.rfind(','));
            out += l + '\n';
        }
        return out;
    };
    CHECK(strip_time(sb.read("t1.csv")) == strip_time(sb.read("t1b.csv")));
}
