#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace jhflow::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kInadmissible = 3,
    kIo = 4,
    kThreshold = 5,
    kNoBracket = 6,
};

/// Invalid flag values or combinations that the parser itself cannot catch.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A spec that parses but does not describe an admissible solution.
class InadmissibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Flag values shared by all subcommands; each subcommand reads its subset.
struct Options {
    std::optional<double> c0, c1, c2;
    std::string family;
    double const_c = 0.0;
    double g3 = 0.0;
    double wp_shift = 0.0;
    std::optional<int> n;
    double seed = 0.5;
    std::optional<std::string> grid;
    std::optional<std::string> cone;
    std::optional<std::string> theta_range;
    /// Empty selects the command's default: csv for tables, json for reports.
    std::string format;
    std::optional<std::filesystem::path> out;
    int threads = 1;
    std::optional<double> tol;
    double tol_constraint = 1e-12;
    double tol_scaling = 1e-11;
    bool extended = false;
    bool reciprocal = false;
    std::string variant = "weierstrass";
    int branch = 1;
    std::optional<double> ctilde1;
    double h0 = 0.0;
    double dh0 = 0.0;
    std::optional<std::filesystem::path> input;
    int samples = 100;
    int sweep_samples = 201;
    std::uint64_t sample_seed = 1;
    double scale_u = 1.0;
    double step = 1e-4;
};

int cmd_classify(const Options& opt);
int cmd_eval(const Options& opt);
int cmd_verify(const Options& opt);
int cmd_global_solve(const Options& opt);
int cmd_nonradial(const Options& opt);
int cmd_oracle(const Options& opt);

}  // namespace jhflow::cli
