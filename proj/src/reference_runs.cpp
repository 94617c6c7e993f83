#include "rignls/reference_runs.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace rignls {

const std::vector<BoundStateConfig>& bound_state_configs() {
    static const std::vector<BoundStateConfig> rows = {
        {1, 0, 12.898, 18, 4, 4.0089e-13},   {1, 0, 43.273, 24, 4, 4.7045e-10},    {1, 0, 80.518, 30, 3.5, 2.9894e-9},
        {1, 1, 12.898, 30, 4, 7.6398e-13},   {1, 1, 43.273, 30, 3.5, 1.3889e-11},  {1, 1, 80.518, 30, 3.2, 2.5216e-8},
        {1, 2, 12.898, 44, 3.1, 5.5127e-12}, {1, 2, 43.273, 58, 3.1, 1.0442e-11},  {1, 2, 80.518, 80, 3, 3.7820e-14},
        {-1, 0, 89.237, 20, 4, 9.0256e-8},   {-1, 0, 161.521, 30, 3.5, 3.1080e-9}, {-1, 0, 254.916, 36, 3.1, 6.7484e-9},
        {-1, 1, 89.237, 20, 4, 4.9679e-8},   {-1, 1, 161.521, 30, 3.1, 8.4114e-10}, {-1, 1, 254.916, 34, 3.1, 4.0952e-8},
        {-1, 2, 89.237, 16, 4, 2.2678e-12},  {-1, 2, 161.521, 54, 3.5, 1.2129e-11}, {-1, 2, 254.916, 54, 3, 1.0558e-14},
    };
    return rows;
}

std::vector<EigenConfig> eigen_configs(int table) {
    using c = std::complex<double>;
    if (table == 2) {
        return {
            {1, 43.273, 0, c(13.413, 0), 3, 1.189e-7, c(0.9771, 0), 2.379e-7},
            {1, 43.273, 0, c(238.868, 0), 3, 0.355e-7, c(-4.6741, 0), 0.709e-7},
            {1, 43.273, 0, c(791.201, 0), 3, 0.622e-7, c(-8.8452, 0), 1.243e-7},
            {1, 43.273, 1, c(90.461, 0), 3, 2.027e-8, c(3.4138, 0), 4.0546e-8},
            {1, 43.273, 1, c(426.79, 0), 3, 1.842e-8, c(-6.5821, 0), 3.685e-8},
            {1, 43.273, 1, c(743.05, 0), 3, 2.264e-8, c(-8.6971, 0), 4.5283e-8},
            {1, 43.273, 1, c(40.30, 15.51), 3, 6.258e-8, c(-0.4929, 1.3720), 1.2517e-7},
            {1, 43.273, 2, c(221.73, 0), 3, 1.357e-9, c(5.462, 0), 4.763e-9},
            {1, 43.273, 2, c(676.54, 0), 3, 1.821e-9, c(-8.4667, 0), 5.003e-9},
            {1, 43.273, 2, c(59.95, 25.55), 3, 2.932e-9, c(0.6855, -1.5570), 5.863e-9},
            {1, 43.273, 2, c(120.36, 33.13), 3, 2.402e-9, c(0.4625, -2.8174), 4.804e-9},
        };
    }
    if (table == 3) {
        return {
            {-1, 254.916, 0, c(78.671, 0), 3, 5.1339e-6, c(1.7575, 0), 1.0268e-5},
            {-1, 254.916, 0, c(360.29, 0), 3, 2.0547e-6, c(-5.7589, 0), 4.1094e-6},
            {-1, 254.916, 0, c(943.45, 0), 3, 3.3776e-6, c(-9.8213, 0), 6.7551e-6},
            {-1, 254.916, 1, c(5.1026, 0), 3, 2.2796e-4, c(3.7268e-3, 0), 4.5592e-4},
            {-1, 254.916, 1, c(284.60, 0), 3, 1.0601e-5, c(-5.1979, 0), 2.1203e-5},
            {-1, 254.916, 1, c(861.30, 0), 3, 9.8321e-6, c(-9.6062, 0), 1.9664e-5},
            {-1, 254.916, 2, c(24.184, 0), 2.8, 5.277e-12, c(-0.130, 0), 2.356e-11},
            {-1, 254.916, 2, c(452.93, 0), 2.8, 1.176e-12, c(-7.229, 0), 3.993e-12},
            {-1, 254.916, 2, c(774.05, 0), 2.8, 1.369e-12, c(-9.397, 0), 4.067e-12},
        };
    }
    throw std::invalid_argument("eigenvalue tables are 2 and 3");
}

const BoundStateConfig& bound_state_config(int sigma, int nodes, double mu) {
    for (const auto& r : bound_state_configs())
        if (r.sigma == sigma && r.nodes == nodes && r.mu == mu) return r;
    throw std::invalid_argument("no reference configuration for this bound state");
}

namespace {
double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

BoundStateRun run_bound_state(int sigma, double mu, int nodes, long m, double s, int retries) {
    auto t0 = std::chrono::steady_clock::now();
    BoundStateRun run;
    for (int attempt = 0; attempt <= retries; ++attempt, m += 6) {
        run.m_used = m;
        try {
            BoundStateProblem pb = make_bound_state_problem(sigma, mu, nodes, m, s);
            run.cert = prove_bound_state(pb);
            run.ok = true;
            run.error.clear();
            break;
        } catch (const VerificationFailure& e) {
            run.error = e.what();
            run.log.push_back("m_phi=" + std::to_string(m) + ": " + e.what());
        } catch (const std::exception& e) {
            run.error = e.what();
            run.log.push_back("m_phi=" + std::to_string(m) + ": " + e.what());
            break;
        }
    }
    run.seconds = elapsed(t0);
    return run;
}

EigenRun run_eigenpair(const EnclosureCertificate& phi_cert, double s, Variant v, const EigenSelector& sel, long M,
                       int retries) {
    auto t0 = std::chrono::steady_clock::now();
    EigenRun run;
    auto phi = std::make_shared<BoundStateEnclosure>(BoundStateEnclosure::from_certificate(phi_cert));
    EigenProblem pb = make_eigen_problem(phi, s, v, M);
    EigenPairCenter init = initial_eigenpair(pb, sel);
    for (int attempt = 0; attempt <= retries; ++attempt, pb.M += 2 * phi->m()) {
        run.M_used = pb.M;
        try {
            run.cert = prove_eigenpair_from(pb, init);
            run.ok = true;
            run.error.clear();
            break;
        } catch (const VerificationFailure& e) {
            run.error = e.what();
            run.log.push_back("M=" + std::to_string(pb.M) + ": " + e.what());
        } catch (const std::exception& e) {
            run.error = e.what();
            run.log.push_back("M=" + std::to_string(pb.M) + ": " + e.what());
            break;
        }
    }
    run.seconds = elapsed(t0);
    return run;
}

void parallel_for(long n, int jobs, const std::function<void(long)>& fn) {
    long workers = std::max(1L, std::min<long>(jobs, n));
    if (workers == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (long i; (i = next++) < n;) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::vector<Table1Row> reproduce_table1(int jobs, int retries) {
    const auto& cfgs = bound_state_configs();
    std::vector<Table1Row> rows(cfgs.size());
    parallel_for(static_cast<long>(cfgs.size()), jobs, [&](long i) {
        const auto& c = cfgs[i];
        rows[i] = {c, run_bound_state(c.sigma, c.mu, c.nodes, c.m_phi, c.s_phi, retries)};
    });
    return rows;
}

namespace {
// shortest decimal that round-trips
std::string csv_num(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}
std::string csv_text(std::string t) {
    for (char& ch : t)
        if (ch == '"' || ch == '\n') ch = '\'';
    return '"' + t + '"';
}
}  // namespace

void write_table1_csv(const std::vector<Table1Row>& rows, std::ostream& out) {
    out << "sigma,nodes,mu,m_phi,s_phi,r_reference,verified,r,m_used,seconds,error\n";
    for (const auto& r : rows) {
        out << r.cfg.sigma << ',' << r.cfg.nodes << ',' << csv_num(r.cfg.mu) << ',' << r.cfg.m_phi << ','
            << csv_num(r.cfg.s_phi) << ',' << csv_num(r.cfg.r_reference) << ',' << (r.run.ok ? "true" : "false") << ','
            << (r.run.ok ? csv_num(r.run.cert->radius()) : "") << ',' << r.run.m_used << ',' << csv_num(r.run.seconds)
            << ',' << csv_text(r.run.error) << '\n';
    }
}

std::vector<EigenTableRow> reproduce_eigen_table(int table, int jobs, int retries) {
    const auto cfgs = eigen_configs(table);
    std::map<int, BoundStateRun> states;
    std::vector<int> nodes;
    for (const auto& c : cfgs)
        if (!states.count(c.nodes)) {
            states[c.nodes] = {};
            nodes.push_back(c.nodes);
        }
    parallel_for(static_cast<long>(nodes.size()), jobs, [&](long i) {
        const auto& b = bound_state_config(cfgs.front().sigma, nodes[i], cfgs.front().mu);
        states.at(nodes[i]) = run_bound_state(b.sigma, b.mu, b.nodes, b.m_phi, b.s_phi, retries);
    });
    std::vector<EigenTableRow> rows(cfgs.size());
    parallel_for(static_cast<long>(cfgs.size()), jobs, [&](long i) {
        EigenTableRow& row = rows[i];
        row.cfg = cfgs[i];
        const BoundStateRun& bs = states.at(row.cfg.nodes);
        if (!bs.ok) {
            row.run.error = "bound state not verified: " + bs.error;
            return;
        }
        EigenSelector sel;
        sel.target = row.cfg.beta;
        try {
            row.run = run_eigenpair(*bs.cert, row.cfg.s, Variant::N, sel, 0, retries);
        } catch (const std::exception& e) {
            row.run.error = e.what();
        }
        if (!row.run.ok) return;
        EigenEnclosure e = EigenEnclosure::from_certificate(*row.run.cert);
        row.beta = e.beta();
        row.gamma = gamma_enclosure(e);
        try {
            prove_simple(SimplicityProblem::from_eigenpair(e));
            row.simple = true;
            row.simple_note = "proved";
        } catch (const std::exception& ex) {
            row.simple_note = std::string("inconclusive: ") + ex.what();
        }
    });
    return rows;
}

void write_eigen_table_csv(const std::vector<EigenTableRow>& rows, std::ostream& out) {
    out << "sigma,mu,nodes,beta_reference_re,beta_reference_im,s,r_reference,gamma_reference_re,gamma_reference_im,"
           "gamma_pad_reference,verified,beta_re,beta_im,r,simple,gamma_re,gamma_im,gamma_pad,gamma_excludes_zero,"
           "M_used,seconds,error\n";
    for (const auto& r : rows) {
        const auto& c = r.cfg;
        out << c.sigma << ',' << csv_num(c.mu) << ',' << c.nodes << ',' << csv_num(c.beta.real()) << ','
            << csv_num(c.beta.imag()) << ',' << csv_num(c.s) << ',' << csv_num(c.r_reference) << ','
            << csv_num(c.gamma.real()) << ',' << csv_num(c.gamma.imag()) << ',' << csv_num(c.gamma_pad_reference) << ','
            << (r.run.ok ? "true" : "false") << ',';
        if (r.run.ok) {
            out << csv_num(r.beta.re.mid()) << ',' << csv_num(r.beta.im.mid()) << ',' << csv_num(r.run.cert->radius())
                << ',' << (r.simple ? "proved" : "inconclusive") << ',' << csv_num(r.gamma.value.re.mid()) << ','
                << csv_num(r.gamma.value.im.mid()) << ',' << csv_num(r.gamma.pad.hi()) << ','
                << (r.gamma.excludes_zero ? "true" : "false");
        } else {
            out << ",,,,,,,";
        }
        out << ',' << r.run.M_used << ',' << csv_num(r.run.seconds) << ',' << csv_text(r.run.error) << '\n';
    }
}

}  // namespace rignls
