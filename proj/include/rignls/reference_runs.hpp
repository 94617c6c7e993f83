#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rignls/bound_state.hpp"
#include "rignls/simplicity.hpp"
#include "rignls/spectrum.hpp"

namespace rignls {

struct BoundStateConfig {
    int sigma;
    int nodes;
    double mu;
    long m_phi;
    double s_phi;
    double r_reference;
};

struct EigenConfig {
    int sigma;
    double mu;
    int nodes;
    std::complex<double> beta;   // reference value; complex entries stand for a conjugate pair
    double s;
    double r_reference;
    std::complex<double> gamma;  // reference Gamma for the listed member of the pair
    double gamma_pad_reference;
};

const std::vector<BoundStateConfig>& bound_state_configs();
// block for table 2 (sigma = 1) or table 3 (sigma = -1)
std::vector<EigenConfig> eigen_configs(int table);
const BoundStateConfig& bound_state_config(int sigma, int nodes, double mu);

struct BoundStateRun {
    bool ok = false;
    std::optional<EnclosureCertificate> cert;
    std::string error;
    long m_used = 0;
    double seconds = 0;
    std::vector<std::string> log;
};

// retry policy: m <- m + 6 after a verification failure, at most `retries` times
BoundStateRun run_bound_state(int sigma, double mu, int nodes, long m, double s, int retries = 3);

struct EigenRun {
    bool ok = false;
    std::optional<EnclosureCertificate> cert;
    std::string error;
    long M_used = 0;
    double seconds = 0;
    std::vector<std::string> log;
};

// retry policy: M <- M + 2 m_phi after a verification failure, at most `retries` times
EigenRun run_eigenpair(const EnclosureCertificate& phi_cert, double s, Variant v, const EigenSelector& sel, long M = 0,
                       int retries = 3);

// runs fn(0..n-1) on at most `jobs` threads; results must be written by index
void parallel_for(long n, int jobs, const std::function<void(long)>& fn);

struct Table1Row {
    BoundStateConfig cfg;
    BoundStateRun run;
};
std::vector<Table1Row> reproduce_table1(int jobs, int retries = 3);
void write_table1_csv(const std::vector<Table1Row>& rows, std::ostream& out);

struct EigenTableRow {
    EigenConfig cfg;
    EigenRun run;
    CInterval beta;
    bool simple = false;
    std::string simple_note;
    GammaEnclosure gamma;
};
// full pipeline per row: bound state, eigenpair nearest the reference value, simplicity, Gamma
std::vector<EigenTableRow> reproduce_eigen_table(int table, int jobs, int retries = 3);
void write_eigen_table_csv(const std::vector<EigenTableRow>& rows, std::ostream& out);

}  // namespace rignls
