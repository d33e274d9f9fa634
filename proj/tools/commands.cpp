#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "jhflow/cubic.hpp"
#include "jhflow/nonradial.hpp"
#include "jhflow/radial.hpp"
#include "jhflow/verify.hpp"
#include "log.hpp"
#include "output.hpp"

#ifndef JHFLOW_VERSION
#define JHFLOW_VERSION "0.0.0"
#endif

namespace jhflow::cli {

namespace {

using json = nlohmann::ordered_json;
using verify::Point;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxGridPoints = 10'000'000;
constexpr double kStoredTolerance = 1e-12;

// ---------------------------------------------------------------- parsing

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || !std::isfinite(v)) {
            throw UsageError(std::string(what) + ": '" + item + "' is not a finite number");
        }
        values.push_back(v);
        start = comma + 1;
    }
    if (values.size() != expected) {
        throw UsageError(std::string(what) + " expects " + std::to_string(expected) + " comma-separated values");
    }
    return values;
}

struct Grid {
    double x_min, x_max, y_min, y_max;
    std::size_t nx, ny;

    [[nodiscard]] double x(std::size_t i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1.0); }
    [[nodiscard]] double y(std::size_t j) const { return ny == 1 ? y_min : y_min + (y_max - y_min) * j / (ny - 1.0); }
};

std::size_t as_count(double v, const char* what) {
    if (v < 1.0 || v != std::floor(v) || v > static_cast<double>(kMaxGridPoints)) {
        throw UsageError(std::string("grid ") + what + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
}

Grid parse_grid(const std::string& text) {
    const auto v = parse_list(text, 6, "--grid");
    Grid g{v[0], v[1], v[2], v[3], as_count(v[4], "nx"), as_count(v[5], "ny")};
    if (!(g.x_min < g.x_max) || !(g.y_min < g.y_max)) {
        throw UsageError("--grid needs x_min < x_max and y_min < y_max");
    }
    if (g.nx * g.ny > kMaxGridPoints) {
        throw UsageError("--grid has more than 1e7 points");
    }
    return g;
}

ThetaInterval parse_range(const std::string& text, const char* what) {
    const auto v = parse_list(text, 2, what);
    if (!(v[0] < v[1])) throw UsageError(std::string(what) + " needs a < b");
    return {v[0], v[1], false, false};
}

/// Open angular sector (a, b) with 0 < b - a <= 2 pi.
struct Cone {
    double lo, hi;
    [[nodiscard]] bool contains(double x, double y) const {
        double t = std::atan2(y, x);
        t -= kTwoPi * std::floor((t - lo) / kTwoPi);
        return t > lo && t < hi;
    }
};

std::optional<Cone> parse_cone(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    const auto r = parse_range(*text, "--cone");
    if (r.hi - r.lo > kTwoPi) throw UsageError("--cone opening must not exceed 2 pi");
    return Cone{r.lo, r.hi};
}

double require(const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError(std::string(flag) + " is required here");
    return *v;
}

// ---------------------------------------------------------------- fields

/// A field chosen from the flags, with its evaluator, a sampler of interior
/// points and a description for the JSON inputs block.
struct FieldSetup {
    verify::FieldEvaluator fe;
    std::function<std::vector<Point>(int, std::uint64_t)> sampler;
    json inputs = json::object();
    std::optional<radial::RadialProfileSpec> ray_profile;
};

std::vector<Point> annulus_samples(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto draw = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
        const double r = draw(0.5, 2.0);
        const double t = draw(0.0, kTwoPi);
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return pts;
}

nonradial::NonRadialSpec nonradial_spec(const Options& opt, json& inputs) {
    const double c0 = require(opt.c0, "--c0");
    const auto variant = nonradial::variant_from_string(opt.variant);
    if (!variant) throw UsageError("unknown --variant '" + opt.variant + "'");
    inputs["variant"] = opt.variant;
    inputs["c0"] = c0;
    try {
        switch (*variant) {
            case nonradial::Variant::Weierstrass:
                inputs["g3"] = opt.g3;
                inputs["wp_shift"] = opt.wp_shift;
                return nonradial::make_weierstrass(c0, opt.g3, opt.wp_shift);
            case nonradial::Variant::Degenerate:
                inputs["wp_shift"] = opt.wp_shift;
                return nonradial::make_degenerate(c0, opt.wp_shift);
            case nonradial::Variant::LinearOnly: {
                const double c1 = require(opt.c1, "--c1");
                inputs["c1"] = c1;
                inputs["branch"] = opt.branch;
                return nonradial::make_linear(c0, c1, opt.branch);
            }
            case nonradial::Variant::NumericLienard: {
                const double ct1 = require(opt.ctilde1, "--ctilde1");
                inputs["ctilde1"] = ct1;
                inputs["h0"] = opt.h0;
                inputs["dh0"] = opt.dh0;
                return nonradial::make_numeric(c0, ct1, opt.h0, opt.dh0);
            }
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::domain_error& e) {
        throw InadmissibleError(e.what());
    }
    throw std::logic_error("unknown variant");
}

FieldSetup build_field(const Options& opt) {
    FieldSetup setup;
    json& in = setup.inputs;
    in["family"] = opt.family;

    if (opt.family == "landau") {
        const double a = require(opt.c1, "--c1");
        const double b = require(opt.c2, "--c2");
        in["c1"] = a;
        in["c2"] = b;
        setup.fe = verify::landau_evaluator(a, b);
        setup.sampler = annulus_samples;
        return setup;
    }

    if (opt.family == "nonradial") {
        const auto spec = nonradial_spec(opt, in);
        setup.fe = verify::nonradial_evaluator(spec);
        setup.sampler = [spec](int count, std::uint64_t seed) { return verify::interior_samples(spec, count, seed); };
        return setup;
    }

    if (opt.extended && opt.reciprocal) throw UsageError("--extended and --reciprocal are exclusive");

    radial::RadialProfileSpec spec;
    bool extended = opt.extended;
    if (opt.family == "global") {
        if (!opt.n) throw UsageError("--n is required for the global family");
        if (!(opt.seed > 0.0 && opt.seed < 1.0)) throw UsageError("--seed must lie in (0, 1)");
        if (opt.reciprocal) throw UsageError("global solutions are evaluated on the full turn");
        const auto sol = radial::global_periodic_solve(*opt.n, opt.seed, opt.const_c);
        spec = radial::global_profile(sol);
        extended = true;
        in["n"] = *opt.n;
        in["seed"] = opt.seed;
        in["const_c"] = opt.const_c;
    } else {
        const auto family = radial::family_from_string(opt.family);
        if (!family) throw UsageError("unknown --family '" + opt.family + "'");
        const double c1 = require(opt.c1, "--c1");
        const double c2 = require(opt.c2, "--c2");
        try {
            spec = radial::make_profile(*family, {c1, c2}, opt.const_c);
        } catch (const std::domain_error& e) {
            throw InadmissibleError(e.what());
        }
        in["c1"] = c1;
        in["c2"] = c2;
        in["const_c"] = opt.const_c;
    }
    in["extended"] = extended;
    in["reciprocal"] = opt.reciprocal;

    if (opt.reciprocal) {
        setup.fe = verify::reciprocal_evaluator(spec);
        // Points whose reciprocal angle arctan(x/y) is an interior angle of the profile.
        setup.sampler = [spec](int count, std::uint64_t seed) {
            std::vector<Point> pts;
            for (auto [x, y] : verify::interior_samples(spec, false, count, seed)) pts.emplace_back(y, x);
            return pts;
        };
    } else {
        setup.fe = verify::radial_evaluator(spec, extended);
        setup.sampler = [spec, extended](int count, std::uint64_t seed) {
            return verify::interior_samples(spec, extended, count, seed);
        };
        if (extended) setup.ray_profile = spec;
    }
    return setup;
}

// ---------------------------------------------------------------- output

json envelope(const char* command, json inputs) {
    json doc;
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    doc["results"] = json::object();
    doc["residuals"] = json::object();
    doc["version"] = JHFLOW_VERSION;
    return doc;
}

void flatten(const json& node, const std::string& prefix, std::string& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    out += prefix + ": ";
    if (node.is_number_float()) {
        out += format_double(node.get<double>());
    } else if (node.is_string()) {
        out += node.get<std::string>();
    } else {
        out += node.dump();
    }
    out += '\n';
}

/// Reports are JSON by default or "key: value" lines with --format text.
void emit_report(const Options& opt, const json& doc) {
    if (opt.format == "text") {
        std::string text;
        flatten(doc, "", text);
        write_output(opt.out, text);
    } else {
        write_output(opt.out, doc.dump(2) + "\n");
    }
}

/// Tables are CSV by default or embedded in the JSON envelope.
void emit_table(const Options& opt, json doc, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
    if (opt.format == "json") {
        doc["results"]["columns"] = header;
        json table = json::array();
        for (const auto& row : rows) {
            json r = json::array();
            for (double v : row) r.push_back(std::isfinite(v) ? json(v) : json(nullptr));
            table.push_back(std::move(r));
        }
        doc["results"]["rows"] = std::move(table);
        write_output(opt.out, doc.dump(2) + "\n");
    } else {
        write_output(opt.out, to_csv(header, rows));
    }
}

json intervals_json(const std::vector<ThetaInterval>& windows) {
    json arr = json::array();
    for (const auto& w : windows) arr.push_back({w.lo, w.hi});
    return arr;
}

// ---------------------------------------------------------------- sampling

/// Evaluates row(i) for i in [0, count) on up to `threads` workers. Results
/// are stored by index, so the output does not depend on scheduling.
std::vector<std::vector<double>> evaluate_rows(std::size_t count, int threads,
                                               const std::function<std::vector<double>(std::size_t)>& row) {
    std::vector<std::vector<double>> rows(count);
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(threads), 1, std::max<std::size_t>(1, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) rows[i] = row(i);
        return rows;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t end = std::min(count, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i) rows[i] = row(i);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<double> field_row(const verify::FieldEvaluator& fe, const std::optional<Cone>& cone, double x, double y) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if ((cone && !cone->contains(x, y)) || !fe.contains(x, y)) return {x, y, nan, nan, nan, 0.0};
    try {
        const FieldSample s = fe.eval(x, y);
        if (!std::isfinite(s.u) || !std::isfinite(s.v) || !std::isfinite(s.p)) return {x, y, nan, nan, nan, 0.0};
        return {x, y, s.u, s.v, s.p, 1.0};
    } catch (const std::domain_error&) {
        return {x, y, nan, nan, nan, 0.0};
    }
}

int grid_table(const Options& opt, const char* command, const FieldSetup& setup, json extra_results = json::object()) {
    const Grid grid = parse_grid(*opt.grid);
    const auto cone = parse_cone(opt.cone);
    json inputs = setup.inputs;
    inputs["grid"] = *opt.grid;
    if (opt.cone) inputs["cone"] = *opt.cone;
    const auto rows = evaluate_rows(grid.nx * grid.ny, opt.threads, [&](std::size_t idx) {
        return field_row(setup.fe, cone, grid.x(idx % grid.nx), grid.y(idx / grid.nx));
    });
    const auto valid = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r[5] == 1.0; });
    log(LogLevel::Info, command, ": ", valid, " of ", rows.size(), " grid points valid");
    json doc = envelope(command, std::move(inputs));
    doc["results"] = std::move(extra_results);
    doc["results"]["valid_points"] = valid;
    doc["results"]["invalid_points"] = static_cast<std::ptrdiff_t>(rows.size()) - valid;
    emit_table(opt, std::move(doc), {"x", "y", "u", "v", "p", "valid"}, rows);
    return kOk;
}

// ---------------------------------------------------------------- verify helpers

Options options_from_inputs(const json& in, const Options& base) {
    Options opt = base;
    const auto num = [&](const char* key) -> std::optional<double> {
        if (!in.contains(key)) return std::nullopt;
        if (!in[key].is_number()) throw UsageError(std::string("input field '") + key + "' is not a number");
        return in[key].get<double>();
    };
    opt.family = in.value("family", std::string());
    opt.c0 = num("c0");
    opt.c1 = num("c1");
    opt.c2 = num("c2");
    opt.const_c = num("const_c").value_or(0.0);
    opt.g3 = num("g3").value_or(0.0);
    opt.wp_shift = num("wp_shift").value_or(0.0);
    if (auto n = num("n")) opt.n = static_cast<int>(*n);
    opt.seed = num("seed").value_or(0.5);
    opt.extended = in.value("extended", false);
    opt.reciprocal = in.value("reciprocal", false);
    opt.variant = in.value("variant", std::string("weierstrass"));
    opt.branch = static_cast<int>(num("branch").value_or(1.0));
    opt.ctilde1 = num("ctilde1");
    opt.h0 = num("h0").value_or(0.0);
    opt.dh0 = num("dh0").value_or(0.0);
    return opt;
}

struct StoredPoint {
    Point point;
    FieldSample sample;
};

std::vector<StoredPoint> stored_points(const json& doc) {
    const auto& columns = doc.at("results").at("columns");
    if (columns != json({"x", "y", "u", "v", "p", "valid"})) {
        throw UsageError("input file does not hold a field table");
    }
    std::vector<StoredPoint> pts;
    for (const auto& row : doc.at("results").at("rows")) {
        if (row.at(5).get<double>() != 1.0) continue;
        pts.push_back({{row.at(0).get<double>(), row.at(1).get<double>()},
                       {row.at(2).get<double>(), row.at(3).get<double>(), row.at(4).get<double>()}});
    }
    return pts;
}

double relative_gap(const FieldSample& a, const FieldSample& b) {
    const double scale = std::max({1.0, std::abs(b.u), std::abs(b.v), std::abs(b.p)});
    return std::max({std::abs(a.u - b.u), std::abs(a.v - b.v), std::abs(a.p - b.p)}) / scale;
}

}  // namespace

// ---------------------------------------------------------------- commands

int cmd_classify(const Options& opt) {
    const cubic::ParameterPoint p{require(opt.c1, "--c1"), require(opt.c2, "--c2")};
    const auto disc = cubic::discriminants(p);
    const auto tag = cubic::classify(p);
    const auto roots = cubic::solve_cubic(p);

    json doc = envelope("classify", {{"c1", p.c1}, {"c2", p.c2}});
    auto& r = doc["results"];
    r["region"] = std::string(cubic::to_string(tag));
    r["delta_cubic"] = disc.delta_cubic;
    r["delta_square"] = disc.delta_square;
    r["l_plus"] = disc.l_plus ? json(*disc.l_plus) : json(nullptr);
    r["l_minus"] = disc.l_minus ? json(*disc.l_minus) : json(nullptr);
    json rj;
    std::visit(
        [&rj](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, cubic::ThreeDistinctReal>) {
                rj = {{"structure", "three distinct real"}, {"values", {v.a, v.b, v.c}}};
            } else if constexpr (std::is_same_v<T, cubic::DoubleAndSimple>) {
                rj = {{"structure", "double and simple"}, {"double", v.double_root}, {"simple", v.simple_root}};
            } else if constexpr (std::is_same_v<T, cubic::TripleReal>) {
                rj = {{"structure", "triple"}, {"values", {v.r}}};
            } else {
                rj = {{"structure", "one real and conjugate pair"}, {"real", v.alpha}, {"re", v.m}, {"im", v.n}};
            }
        },
        roots);
    r["roots"] = std::move(rj);
    double worst = 0.0;
    for (double root : cubic::real_roots(roots)) worst = std::max(worst, std::abs(cubic::p3_eval(root, p)));
    doc["residuals"]["max_root_residual"] = worst;
    emit_report(opt, doc);
    return kOk;
}

int cmd_eval(const Options& opt) {
    if (opt.family == "nonradial") throw UsageError("use the nonradial command for non-radial fields");
    const FieldSetup setup = build_field(opt);
    return grid_table(opt, "eval", setup);
}

int cmd_verify(const Options& opt) {
    Options effective = opt;
    json stored_doc;
    if (opt.input) {
        try {
            stored_doc = json::parse(read_file(*opt.input));
        } catch (const json::parse_error& e) {
            throw IoError(opt.input->string() + " is not valid JSON: " + e.what());
        }
        const std::string origin = stored_doc.value("command", std::string());
        if (origin != "eval" && origin != "nonradial") throw UsageError("input must be the JSON output of eval or nonradial");
        effective = options_from_inputs(stored_doc.at("inputs"), opt);
        if (origin == "nonradial") effective.family = "nonradial";
    }
    if (effective.samples < 1) throw UsageError("--samples must be positive");
    const double tol = opt.tol.value_or(1e-6);

    FieldSetup setup = build_field(effective);
    if (opt.scale_u != 1.0) setup.fe = verify::scale_u(setup.fe, opt.scale_u);

    std::vector<Point> points;
    double stored_gap = 0.0;
    if (opt.input) {
        for (const auto& sp : stored_points(stored_doc)) {
            points.push_back(sp.point);
            stored_gap = std::max(stored_gap, relative_gap(sp.sample, setup.fe.eval(sp.point.first, sp.point.second)));
        }
    } else {
        points = setup.sampler(effective.samples, opt.sample_seed);
    }

    verify::SweepSummary total;
    std::size_t skipped = 0;
    double residual_sum = 0.0;
    for (const auto& pt : points) {
        verify::SweepSummary one;
        try {
            one = verify::sweep(setup.fe, {pt});
        } catch (const std::domain_error&) {
            ++skipped;  // the stencil reaches past the field's domain
            continue;
        }
        ++total.points;
        residual_sum += one.max_residual;
        total.max_residual = std::max(total.max_residual, one.max_residual);
        total.max_constraint = std::max(total.max_constraint, one.max_constraint);
        total.max_scaling = std::max(total.max_scaling, one.max_scaling);
    }
    total.mean_residual = total.points ? residual_sum / static_cast<double>(total.points) : 0.0;

    json inputs = setup.inputs;
    if (opt.input) inputs["input"] = opt.input->string();
    inputs["samples"] = effective.samples;
    inputs["sample_seed"] = opt.sample_seed;
    inputs["scale_u"] = opt.scale_u;
    inputs["tol"] = tol;
    inputs["tol_constraint"] = opt.tol_constraint;
    inputs["tol_scaling"] = opt.tol_scaling;
    json doc = envelope("verify", std::move(inputs));
    auto& res = doc["residuals"];
    res["max_residual"] = total.max_residual;
    res["mean_residual"] = total.mean_residual;
    res["max_constraint"] = total.max_constraint;
    res["max_scaling"] = total.max_scaling;

    bool pass = total.points > 0 && total.max_residual < tol && total.max_constraint < opt.tol_constraint &&
                total.max_scaling < opt.tol_scaling;
    if (opt.input) {
        res["stored_mismatch"] = stored_gap;
        pass = pass && stored_gap < kStoredTolerance;
    }
    if (setup.ray_profile) {
        json ray = json::array();
        for (const auto& m : verify::smoothness_across_ray(*setup.ray_profile, 3)) {
            ray.push_back({{"order", m.order}, {"mismatch", m.mismatch}, {"scale", m.scale}});
            if (opt.family == "global" || effective.family == "global") pass = pass && m.mismatch < 1e-7 * m.scale;
        }
        res["ray_matching"] = std::move(ray);
    }
    doc["results"]["points"] = total.points;
    doc["results"]["skipped"] = skipped;
    doc["results"]["pass"] = pass;
    log(pass ? LogLevel::Info : LogLevel::Warn, "verify: max residual ", total.max_residual, pass ? " (pass)" : " (fail)");
    emit_report(opt, doc);
    return pass ? kOk : kThreshold;
}

int cmd_global_solve(const Options& opt) {
    if (!opt.n) throw UsageError("--n is required");
    if (!(opt.seed > 0.0 && opt.seed < 1.0)) throw UsageError("--seed must lie in (0, 1)");
    const auto sol = radial::global_periodic_solve(*opt.n, opt.seed, opt.const_c);
    json doc = envelope("global-solve", {{"n", *opt.n}, {"seed", opt.seed}, {"const_c", opt.const_c}});
    auto& r = doc["results"];
    r["a"] = sol.a;
    r["b"] = sol.b;
    r["c"] = sol.c;
    r["c1"] = sol.source.c1;
    r["c2"] = sol.source.c2;
    r["region"] = std::string(cubic::to_string(cubic::classify(sol.source)));
    r["flux"] = sol.flux;
    r["flux_bound"] = 4.0 + sol.flux / std::numbers::pi;
    r["flux_condition"] = sol.flux_condition;
    doc["residuals"]["condition_residual"] = sol.condition_residual;
    doc["residuals"]["vieta_sum"] = sol.a + sol.b + sol.c + 6.0;
    emit_report(opt, doc);
    return kOk;
}

int cmd_nonradial(const Options& opt) {
    if (opt.grid.has_value() == opt.theta_range.has_value()) {
        throw UsageError("nonradial needs exactly one of --grid and --theta-range");
    }
    json inputs;
    const auto spec = nonradial_spec(opt, inputs);

    if (opt.grid) {
        FieldSetup setup;
        setup.fe = verify::nonradial_evaluator(spec);
        setup.inputs = std::move(inputs);
        return grid_table(opt, "nonradial", setup, {{"windows", intervals_json(nonradial::pole_free_windows(spec))}});
    }

    if (opt.sweep_samples < 2) throw UsageError("--samples must be at least 2 for a sweep");
    const ThetaInterval range = parse_range(*opt.theta_range, "--theta-range");
    const auto windows = nonradial::pole_free_windows(spec, range);
    inputs["theta_range"] = *opt.theta_range;
    inputs["samples"] = opt.sweep_samples;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool closed_form = spec.variant != nonradial::Variant::NumericLienard;
    const auto count = static_cast<std::size_t>(opt.sweep_samples);
    const auto rows = evaluate_rows(count, opt.threads, [&](std::size_t i) -> std::vector<double> {
        const double t = range.lo + range.width() * static_cast<double>(i) / (count - 1.0);
        const bool inside = std::any_of(windows.begin(), windows.end(), [t](const auto& w) { return w.contains(t); });
        if (!inside) return {t, nan, nan, nan, nan, 0.0};
        try {
            const auto h = nonradial::angular_profile(spec, t);
            const double res = closed_form ? verify::lienard_residual(spec, t) : nan;
            return {t, h.h, h.dh, h.d2h, res, 1.0};
        } catch (const std::domain_error&) {
            return {t, nan, nan, nan, nan, 0.0};
        }
    });
    double worst = 0.0;
    for (const auto& r : rows)
        if (r[5] == 1.0 && std::isfinite(r[4])) worst = std::max(worst, r[4]);

    json doc = envelope("nonradial", std::move(inputs));
    doc["results"]["windows"] = intervals_json(windows);
    doc["residuals"]["max_lienard_residual"] = closed_form ? json(worst) : json(nullptr);
    if (opt.format != "json") {
        for (const auto& w : windows) log(LogLevel::Info, "pole-free window (", w.lo, ", ", w.hi, ")");
    }
    emit_table(opt, std::move(doc), {"theta", "H", "dH", "d2H", "lienard_residual", "valid"}, rows);
    return kOk;
}

int cmd_oracle(const Options& opt) {
    if (!opt.theta_range) throw UsageError("--theta-range is required");
    if (!(opt.step > 0.0)) throw UsageError("--step must be positive");
    const auto family = radial::family_from_string(opt.family);
    if (!family) throw UsageError("oracle needs --family F0..F7");
    const cubic::ParameterPoint p{require(opt.c1, "--c1"), require(opt.c2, "--c2")};
    radial::RadialProfileSpec spec;
    try {
        spec = radial::make_profile(*family, p, opt.const_c);
    } catch (const std::domain_error& e) {
        throw InadmissibleError(e.what());
    }
    const ThetaInterval range = parse_range(*opt.theta_range, "--theta-range");
    const double tol = opt.tol.value_or(1e-6);
    const double err = verify::ode_oracle_compare(spec, range.lo, range.hi, opt.step);

    json doc = envelope("oracle", {{"family", opt.family},
                                   {"c1", p.c1},
                                   {"c2", p.c2},
                                   {"const_c", opt.const_c},
                                   {"theta_range", *opt.theta_range},
                                   {"step", opt.step},
                                   {"tol", tol}});
    doc["residuals"]["max_error"] = err;
    if (*family != radial::Family::F0) {
        double fi = 0.0;
        for (int i = 0; i <= 200; ++i) {
            fi = std::max(fi, verify::first_integral_residual(spec, range.lo + range.width() * i / 200.0));
        }
        doc["residuals"]["max_first_integral"] = fi;
    }
    const bool pass = err < tol;
    doc["results"]["pass"] = pass;
    emit_report(opt, doc);
    return pass ? kOk : kThreshold;
}

}  // namespace jhflow::cli
