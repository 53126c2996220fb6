#pragma once

#include <planch/ratfunc.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace planch {

// All inputs arrive through flags; there are no configuration files, so a
// logged invocation reproduces its output byte for byte.
struct RunConfig {
    std::string command;            // eval | check | report | oracle
    std::string group;              // gln | sp4 | g2
    std::vector<int> partition;     // gln block sizes
    std::string levi;               // sp4 / g2 component label
    std::vector<int> trace_exps{0};  // trace monomial exponents
    int all_partitions = 0;         // check every partition of 1..n
    bool formal_degrees = false;    // check the formal-degree catalog
    std::vector<double> oracle_q;   // quadrature comparison points
    double tol = 1e-9;
    int grid = 1024;                // quadrature points per circle
    int rank = 1;                   // only the rank-1 normalization exists
    std::string format;             // json | csv | text; empty = inferred
    std::string output;             // artifact path; empty = standard output
    bool trace_branches = false;    // residue decisions to standard error
    bool disable_shortcut = false;  // turn off the vanishing shortcut
    unsigned reorder_seed = 0;      // nonzero: randomized elimination order
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitContourPole = 3;
inline constexpr int kExitIo = 4;

// Empty when the config is consistent, otherwise the reason it is not.
std::string validate_config(const RunConfig& cfg);

// Dispatches a validated config; returns one of the exit codes above.
// Reports go to `out`, diagnostics and branch traces to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Flag parsing plus run_command on the standard streams.
int run_cli(int argc, const char* const* argv);

// "1 / (1 + q)" -> "1/(1+q)": the spacing-free rendering used in JSON and CSV.
std::string compact_str(const RatFunc& f);

}  // namespace planch
