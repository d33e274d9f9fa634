#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "jhflow/radial.hpp"
#include "log.hpp"
#include "output.hpp"

using namespace jhflow::cli;

namespace {

/// Reads key=value lines (blank lines and '#' comments skipped) and turns
/// them into --key=value arguments; a bare key becomes the flag --key.
std::vector<std::string> config_arguments(const std::string& path) {
    std::vector<std::string> args;
    const std::string text = read_file(path);
    std::size_t start = 0;
    int line_no = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line.erase(0, line.find_first_not_of(" \t"));
        line.erase(line.find_last_not_of(" \t") + 1);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key.empty() || key.find_first_of(" \t") != std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": malformed line");
        }
        if (key == "config") throw UsageError(path + ": config files cannot include other config files");
        if (eq == std::string::npos) {
            args.push_back("--" + key);
        } else {
            std::string value = line.substr(eq + 1);
            value.erase(0, value.find_first_not_of(" \t"));
            args.push_back("--" + key + "=" + value);
        }
    }
    return args;
}

/// Places the config-file arguments right after the subcommand name, so that
/// flags given on the command line come later and win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (!path) return args;
    const auto injected = config_arguments(*path);
    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
    const auto at = sub == args.end() ? args.end() : sub + 1;
    args.insert(at, injected.begin(), injected.end());
    return args;
}

const CLI::Validator kFinite(
    [](std::string& s) -> std::string {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) return "value must be a finite number";
        } catch (const std::exception&) {
            return "value must be a finite number";
        }
        return {};
    },
    "FINITE");

void add_report_format(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

void add_table_format(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_common(CLI::App* cmd, Options& opt, std::string& config) {
    cmd->add_option("--out", opt.out, "output file (stdout if omitted)");
    cmd->add_option("--config", config, "key=value file; command-line flags take precedence");
}

void add_radial_spec(CLI::App* cmd, Options& opt) {
    cmd->add_option("--c1", opt.c1, "parameter C1")->check(kFinite);
    cmd->add_option("--c2", opt.c2, "parameter C2")->check(kFinite);
    cmd->add_option("--const-c", opt.const_c, "integration constant C (the value itself for F0)")->check(kFinite);
}

void add_threads(CLI::App* cmd, Options& opt) {
    cmd->add_option("--threads", opt.threads, "worker threads for grid evaluation")->check(CLI::Range(1, 256));
}

void add_nonradial_spec(CLI::App* cmd, Options& opt) {
    cmd->add_option("--c0", opt.c0, "swirl constant C0")->check(kFinite);
    cmd->add_option("--variant", opt.variant, "weierstrass, degenerate, linear or numeric")
        ->check(CLI::IsMember({"weierstrass", "degenerate", "linear", "numeric"}));
    cmd->add_option("--g3", opt.g3, "Weierstrass invariant g3")->check(kFinite);
    cmd->add_option("--wp-shift", opt.wp_shift, "shift C of the Weierstrass argument")->check(kFinite);
    cmd->add_option("--branch", opt.branch, "sign branch of the linear coefficient")->check(CLI::IsMember({-1, 1}));
    cmd->add_option("--ctilde1", opt.ctilde1, "linear coefficient for the numeric variant")->check(kFinite);
    cmd->add_option("--h0", opt.h0, "H(0) for the numeric variant")->check(kFinite);
    cmd->add_option("--dh0", opt.dh0, "H'(0) for the numeric variant")->check(kFinite);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact self-similar solutions of the planar stationary Navier-Stokes equations", "jhflow"};
    app.set_version_flag("--version", std::string(JHFLOW_VERSION));
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Options opt;
    std::string config;
    const std::vector<std::string> families = {"F0", "F1", "F2", "F3", "F4", "F5", "F6", "F7", "global", "landau"};

    auto* classify = app.add_subcommand("classify", "region, discriminants and roots of the cubic");
    classify->add_option("--c1", opt.c1, "parameter C1")->check(kFinite)->required();
    classify->add_option("--c2", opt.c2, "parameter C2")->check(kFinite)->required();
    add_report_format(classify, opt);
    add_common(classify, opt, config);

    auto* eval = app.add_subcommand("eval", "sample a radial or Landau field on a grid");
    eval->add_option("--family", opt.family, "F0..F7, global or landau")->check(CLI::IsMember(families))->required();
    add_radial_spec(eval, opt);
    eval->add_option("--n", opt.n, "periods of a global solution")->check(CLI::PositiveNumber);
    eval->add_option("--seed", opt.seed, "modulus parameter k^2 of a global solution")->check(kFinite);
    eval->add_option("--grid", opt.grid, "xmin,xmax,ymin,ymax,nx,ny")->required();
    eval->add_option("--cone", opt.cone, "open sector a,b in radians");
    eval->add_flag("--extended", opt.extended, "evaluate through the full-turn angle");
    eval->add_flag("--reciprocal", opt.reciprocal, "evaluate through the reciprocal angle arctan(x/y)");
    add_table_format(eval, opt);
    add_threads(eval, opt);
    add_common(eval, opt, config);

    auto* verify = app.add_subcommand("verify", "PDE, swirl and scaling residuals of a field");
    std::vector<std::string> verify_families = families;
    verify_families.push_back("nonradial");
    verify->add_option("--family", opt.family, "F0..F7, global, landau or nonradial")->check(CLI::IsMember(verify_families));
    add_radial_spec(verify, opt);
    add_nonradial_spec(verify, opt);
    verify->add_option("--n", opt.n, "periods of a global solution")->check(CLI::PositiveNumber);
    verify->add_option("--seed", opt.seed, "modulus parameter k^2 of a global solution")->check(kFinite);
    verify->add_flag("--extended", opt.extended, "evaluate through the full-turn angle");
    verify->add_flag("--reciprocal", opt.reciprocal, "evaluate through the reciprocal angle arctan(x/y)");
    verify->add_option("--input", opt.input, "JSON output of eval or nonradial to re-check")->check(CLI::ExistingFile);
    verify->add_option("--samples", opt.samples, "number of random interior points")->check(CLI::PositiveNumber);
    verify->add_option("--sample-seed", opt.sample_seed, "seed of the interior sampler");
    verify->add_option("--scale-u", opt.scale_u, "multiply u by this factor before checking")->check(kFinite);
    verify->add_option("--tol", opt.tol, "threshold on the normalized PDE residual")->check(CLI::PositiveNumber);
    verify->add_option("--tol-constraint", opt.tol_constraint, "threshold on |x v - y u - C0|")->check(CLI::PositiveNumber);
    verify->add_option("--tol-scaling", opt.tol_scaling, "threshold on the scaling identity")->check(CLI::PositiveNumber);
    add_report_format(verify, opt);
    add_common(verify, opt, config);

    auto* global = app.add_subcommand("global-solve", "globally periodic F3 solution with n periods");
    global->add_option("--n", opt.n, "number of periods")->required();
    global->add_option("--seed", opt.seed, "modulus parameter k^2 in (0, 1)")->check(kFinite);
    global->add_option("--const-c", opt.const_c, "integration constant C")->check(kFinite);
    add_report_format(global, opt);
    add_common(global, opt, config);

    auto* nonradial = app.add_subcommand("nonradial", "non-radial field on a grid or angular profile sweep");
    add_nonradial_spec(nonradial, opt);
    nonradial->add_option("--c1", opt.c1, "parameter C1 of the linear variant")->check(kFinite);
    nonradial->add_option("--grid", opt.grid, "xmin,xmax,ymin,ymax,nx,ny");
    nonradial->add_option("--cone", opt.cone, "open sector a,b in radians");
    nonradial->add_option("--theta-range", opt.theta_range, "a,b for an angular sweep");
    nonradial->add_option("--samples", opt.sweep_samples, "points of the angular sweep");
    add_table_format(nonradial, opt);
    add_threads(nonradial, opt);
    add_common(nonradial, opt, config);

    auto* oracle = app.add_subcommand("oracle", "closed form against RK4 of the angular ODE");
    oracle->add_option("--family", opt.family, "F0..F7")
        ->check(CLI::IsMember({"F0", "F1", "F2", "F3", "F4", "F5", "F6", "F7"}))
        ->required();
    add_radial_spec(oracle, opt);
    oracle->add_option("--theta-range", opt.theta_range, "a,b")->required();
    oracle->add_option("--step", opt.step, "RK4 step")->check(CLI::PositiveNumber);
    oracle->add_option("--tol", opt.tol, "threshold on the maximum deviation")->check(CLI::PositiveNumber);
    add_report_format(oracle, opt);
    add_common(oracle, opt, config);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        log(LogLevel::Error, e.what());
        return kUsage;
    } catch (const IoError& e) {
        log(LogLevel::Error, e.what());
        return kIo;
    }

    try {
        if (*classify) return cmd_classify(opt);
        if (*eval) return cmd_eval(opt);
        if (*verify) return cmd_verify(opt);
        if (*global) {
            if (*opt.n < 1) throw UsageError("--n must be a positive integer");
            return cmd_global_solve(opt);
        }
        if (*nonradial) return cmd_nonradial(opt);
        if (*oracle) return cmd_oracle(opt);
    } catch (const UsageError& e) {
        log(LogLevel::Error, e.what());
        return kUsage;
    } catch (const IoError& e) {
        log(LogLevel::Error, e.what());
        return kIo;
    } catch (const jhflow::radial::NoBracketError& e) {
        log(LogLevel::Error, e.what());
        return kNoBracket;
    } catch (const std::domain_error& e) {
        log(LogLevel::Error, e.what());
        return kInadmissible;
    } catch (const std::exception& e) {
        log(LogLevel::Error, "internal error: ", e.what());
        return kInternal;
    }
    return kInternal;
}
