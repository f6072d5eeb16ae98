#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kelvin/evolution.hpp"
#include "kelvin/expr.hpp"
#include "kelvin/extension.hpp"
#include "kelvin/io.hpp"
#include "kelvin/spectral.hpp"
#include "kelvin/verify.hpp"

namespace {

using namespace kelvin;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

struct Common {
    std::string fn;
    std::string input;
    int grid = 1024;
    std::string out;
    std::string format;
};

struct Options {
    Common common;
    int n_max = kMaxExtension;
    double t = 0.0;
    std::string method;
    std::vector<int> orders{0, 1};
    double about = 0.0;
    int count = 10;
    double lambda = 1.0;
    std::vector<std::string> only;
    bool serial = false;
    bool all_checks = false;
};

void add_function_flags(CLI::App* cmd, Common& c) {
    auto* fn = cmd->add_option("--fn", c.fn, "Function of x, e.g. \"0.5*cos(pi*x)\"");
    auto* input = cmd->add_option("--input", c.input, "CSV file with header x,value")->check(CLI::ExistingFile);
    fn->excludes(input);
    cmd->add_option("--grid", c.grid, "Number of grid cells (even) when sampling --fn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Common& c, const std::string& formats) {
    cmd->add_option("--out", c.out, "Output path (default: stdout)");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember(CLI::detail::split(formats, '|')));
}

GridFunction load_function(const Common& c) {
    if (!c.input.empty()) return read_grid_csv(std::filesystem::path(c.input));
    if (c.fn.empty()) throw InvalidArgument("one of --fn or --input is required");
    const FunctionExpr expr = parse_expr(c.fn);
    return sample(expr, c.grid);
}

// Explicit --format wins; otherwise the --out extension decides, then the command default.
std::string resolve_format(const Common& c, const std::string& fallback) {
    if (!c.format.empty()) return c.format;
    if (!c.out.empty()) {
        const std::string ext = std::filesystem::path(c.out).extension().string();
        if (ext == ".json") return "json";
        if (ext == ".csv") return "csv";
    }
    return fallback;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write '" + c.out + "'");
    file << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int run_extend(const Options& o) {
    const GridFunction f = load_function(o.common);
    const ExtendedFunction ef = integral_extension(f, o.n_max);
    const LineFunction line = ef.line();
    if (resolve_format(o.common, "csv") == "json") {
        nlohmann::json checks = nlohmann::json::array();
        for (const IdentityCheck& c : check_identities(ef)) {
            checks.push_back({{"identity", c.identity},
                              {"max_deviation", c.max_deviation},
                              {"max_scaled_deviation", c.max_scaled_deviation},
                              {"worst_segment", c.worst_segment},
                              {"tolerance", c.tolerance}});
        }
        nlohmann::json j = to_json(line);
        j["n_max"] = ef.n_max();
        j["segment_growth"] = segment_growth(ef);
        j["identities"] = std::move(checks);
        emit(o.common, dump(j));
    } else {
        std::ostringstream s;
        write_csv(s, line);
        emit(o.common, s.str());
    }
    return kOk;
}

void emit_evolution(const Common& c, const EvolutionResult& r) {
    if (resolve_format(c, "csv") == "json") {
        emit(c, dump(to_json(r)));
    } else {
        std::ostringstream s;
        write_csv(s, r.state);
        emit(c, s.str());
    }
}

int run_cosine(const Options& o) {
    const Method m = method_from_string(o.method.empty() ? "dalembert-cosine" : o.method);
    if (m != Method::DalembertCosine) throw InvalidArgument("cosine supports only --method dalembert-cosine");
    emit_evolution(o.common, cosine_apply(load_function(o.common), o.t, o.n_max));
    return kOk;
}

int run_semigroup(const Options& o) {
    const Method m = method_from_string(o.method.empty() ? "weierstrass" : o.method);
    const GridFunction f = load_function(o.common);
    switch (m) {
        case Method::Weierstrass: emit_evolution(o.common, semigroup_apply(f, o.t, o.n_max)); break;
        case Method::FdExpmOracle: emit_evolution(o.common, semigroup_expm(build_model(f.n_cells()), f, o.t)); break;
        case Method::DalembertCosine:
            throw InvalidArgument("semigroup supports --method weierstrass or fd-expm-oracle");
    }
    return kOk;
}

int run_moments(const Options& o) {
    const MomentReport r = moments(load_function(o.common), o.orders, o.about);
    if (resolve_format(o.common, "json") == "json") {
        emit(o.common, dump(to_json(r)));
    } else {
        std::ostringstream s;
        s << "order,value\n";
        for (std::size_t k = 0; k < r.orders.size(); ++k) s << r.orders[k] << ',' << format_number(r.values[k]) << '\n';
        emit(o.common, s.str());
    }
    return kOk;
}

int run_spectrum(const Options& o) {
    const SpectralModel model = build_model(o.common.grid);
    const KernelResiduals kr = kernel_residuals(model);
    const auto count = std::min<Eigen::Index>(o.count, model.eigenvalues.size());
    std::vector<double> top(model.eigenvalues.data(), model.eigenvalues.data() + count);
    if (resolve_format(o.common, "json") == "json") {
        emit(o.common, dump({{"eigenvalues", top}, {"gap", model.gap}, {"kernel_residuals", {{"f0", kr.f0}, {"f1", kr.f1}}}}));
    } else {
        std::ostringstream s;
        s << "index,eigenvalue\n";
        for (Eigen::Index k = 0; k < count; ++k) s << k << ',' << format_number(top[k]) << '\n';
        emit(o.common, s.str());
    }
    return kOk;
}

int run_resolve(const Options& o) {
    const GridFunction g = load_function(o.common);
    const ResolventSolution sol = resolve(g, o.lambda);
    if (resolve_format(o.common, "csv") == "json") {
        nlohmann::json j = to_json(sol);
        j["residual"] = resolvent_residual(sol, g);
        const BoundaryResiduals b = boundary_residuals(sol.solution);
        j["boundary_residuals"] = {{"at_0", b.at_0}, {"at_1", b.at_1}};
        emit(o.common, dump(j));
    } else {
        std::ostringstream s;
        write_csv(s, sol.solution);
        emit(o.common, s.str());
    }
    return kOk;
}

int run_verify_cmd(const Options& o) {
    VerifyConfig cfg;
    cfg.n_cells = o.common.grid;
    cfg.only = o.only;
    cfg.parallel = !o.serial;
    for (const std::string& key : cfg.only) find_criterion(key);
    const VerifyReport report = run_verify(cfg);
    const std::string format = resolve_format(o.common, "text");
    if (format == "json") {
        emit(o.common, dump(to_json(report)));
    } else {
        std::cout << summary(report, o.all_checks);
        if (!o.common.out.empty()) emit(o.common, dump(to_json(report)));
    }
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moment-preserving cosine families and heat semigroups on [0, 1]"};
    app.require_subcommand(1);
    Options o;

    auto* extend = app.add_subcommand("extend", "Integral extension on [-nmax, 1 + nmax]");
    add_function_flags(extend, o.common);
    add_output_flags(extend, o.common, "csv|json");
    extend->add_option("--nmax", o.n_max, "Extension half-width")->check(CLI::Range(1, kMaxExtension))->capture_default_str();

    auto* cosine = app.add_subcommand("cosine", "D'Alembert cosine family C(t) f");
    add_function_flags(cosine, o.common);
    add_output_flags(cosine, o.common, "csv|json");
    cosine->add_option("--t", o.t, "Time (any real, |t| <= nmax)")->required();
    cosine->add_option("--nmax", o.n_max, "Extension budget")->check(CLI::Range(1, kMaxExtension))->capture_default_str();
    cosine->add_option("--method", o.method, "dalembert-cosine");

    auto* semigroup = app.add_subcommand("semigroup", "Heat semigroup S(t) f");
    add_function_flags(semigroup, o.common);
    add_output_flags(semigroup, o.common, "csv|json");
    semigroup->add_option("--t", o.t, "Time t >= 0")->required()->check(CLI::NonNegativeNumber);
    semigroup->add_option("--nmax", o.n_max, "Extension budget")->check(CLI::Range(1, kMaxExtension))->capture_default_str();
    semigroup->add_option("--method", o.method, "weierstrass (default) or fd-expm-oracle");

    auto* mom = app.add_subcommand("moments", "Moments F_i f and G_a f");
    add_function_flags(mom, o.common);
    add_output_flags(mom, o.common, "csv|json");
    mom->add_option("--orders", o.orders, "Moment orders")->delimiter(',')->check(CLI::NonNegativeNumber);
    mom->add_option("--about", o.about, "Point a of G_a f = a F0 f - F1 f");

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the finite-difference generator");
    spectrum->add_option("--grid", o.common.grid, "Number of grid cells (even, >= 32)")->capture_default_str();
    spectrum->add_option("--count", o.count, "How many of the largest eigenvalues to report")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(spectrum, o.common, "csv|json");

    auto* resolve_cmd = app.add_subcommand("resolve", "Solve lambda f - f'' = g with the coupled boundary conditions");
    add_function_flags(resolve_cmd, o.common);
    add_output_flags(resolve_cmd, o.common, "csv|json");
    resolve_cmd->add_option("--lambda", o.lambda, "lambda > 0")->required();

    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--grid", o.common.grid, "Reference resolution")->default_str("4096");
    verify->add_option("--only", o.only, "Criterion name or number (repeatable)");
    verify->add_option("--out", o.common.out, "Also write the JSON report to this path");
    verify->add_option("--format", o.common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->add_flag("--serial", o.serial, "Run criteria one after another");
    verify->add_flag("--checks", o.all_checks, "List every check, not only failures");

    // Reference default for verify differs from the interactive default.
    verify->preparse_callback([&o](std::size_t) { o.common.grid = 4096; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*extend) return run_extend(o);
        if (*cosine) return run_cosine(o);
        if (*semigroup) return run_semigroup(o);
        if (*mom) return run_moments(o);
        if (*spectrum) return run_spectrum(o);
        if (*resolve_cmd) return run_resolve(o);
        if (*verify) return run_verify_cmd(o);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
