#include "kelvin/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "kelvin/evolution.hpp"
#include "kelvin/extension.hpp"
#include "kelvin/io.hpp"
#include "kelvin/spectral.hpp"
#include "kelvin/volterra.hpp"

namespace kelvin {

namespace {

constexpr std::array<Criterion, 12> kCriteria{{
    {1, "moments", "F0 and F1 conserved by the cosine family and the semigroup"},
    {2, "odd-cosine-anchor", "g_1 of (1/2) cos(pi x) matches its closed form"},
    {3, "affine-extension", "2x - 1 extends to 2x - 1 on [-3, 4]"},
    {4, "structural-identities", "compatibility, symmetry and claim identities of the recurrence"},
    {5, "parity", "even and odd structure of extensions and trajectories"},
    {6, "robin-coincidence", "Robin closed form equals the integral extension on odd functions"},
    {7, "cosine-equation", "2 C(t) C(s) = C(t+s) + C(t-s)"},
    {8, "volterra-oracle", "closed-form and fixed-point Volterra solvers agree"},
    {9, "spectrum", "double zero eigenvalue, kernel span and a stable gap"},
    {10, "resolvent", "explicit resolvent solves the boundary value problem"},
    {11, "convergence", "exponential approach to the equilibrium projection"},
    {12, "boundary-conditions", "boundary-condition checker for moment orders 0 and 1"},
}};

constexpr std::array<double, 5> kTimes{0.25, 0.5, 1.0, 2.0, 3.5};

struct Named {
    std::string label;
    std::function<double(double)> fn;
};

std::vector<Named> corpus() {
    using std::numbers::pi;
    return {
        {"1", [](double) { return 1.0; }},
        {"2x-1", [](double x) { return 2.0 * x - 1.0; }},
        {"cos(pi x)/2", [](double x) { return 0.5 * std::cos(pi * x); }},
        {"cos(2 pi x)", [](double x) { return std::cos(2.0 * pi * x); }},
        {"x^2", [](double x) { return x * x; }},
        {"exp(x)", [](double x) { return std::exp(x); }},
    };
}

std::string fmt(double v) { return format_number(v); }

class Checks {
public:
    void at_most(std::string label, double measured, double tol) {
        add(std::move(label), measured, tol, Bound::AtMost, measured <= tol);
    }
    void at_least(std::string label, double measured, double tol) {
        add(std::move(label), measured, tol, Bound::AtLeast, measured >= tol);
    }
    void equal(std::string label, double measured, double expected) {
        add(std::move(label), measured, expected, Bound::Equal, measured == expected);
    }
    std::vector<Check> take() { return std::move(checks_); }

private:
    void add(std::string label, double measured, double tol, Bound bound, bool ok) {
        checks_.push_back({std::move(label), measured, tol, bound, ok && std::isfinite(measured)});
    }
    std::vector<Check> checks_;
};

// Dense models are shared between criteria that run concurrently.
const SpectralModel& shared_model(int n_cells) {
    static std::mutex mutex;
    static std::map<int, std::shared_future<SpectralModel>> cache;
    std::shared_future<SpectralModel> entry;
    bool owner = false;
    std::packaged_task<SpectralModel()> task([n_cells] { return build_model(n_cells); });
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n_cells);
        if (it == cache.end()) {
            it = cache.emplace(n_cells, task.get_future().share()).first;
            owner = true;
        }
        entry = it->second;
    }
    if (owner) task();
    return entry.get();
}

void moments_criterion(const VerifyConfig& cfg, Checks& out) {
    for (const auto& f : corpus()) {
        const GridFunction g = sample(f.fn, cfg.n_cells);
        double cosine = 0.0;
        double semigroup = 0.0;
        for (double t : kTimes) {
            const auto c = cosine_apply(g, t, kMaxExtension).moment_drift;
            const auto s = semigroup_apply(g, t, kMaxExtension).moment_drift;
            cosine = std::max({cosine, c[0], c[1]});
            semigroup = std::max({semigroup, s[0], s[1]});
        }
        out.at_most("cosine drift " + f.label, cosine, 1e-6);
        out.at_most("semigroup drift " + f.label, semigroup, 5e-6);
    }
}

void anchor_criterion(const VerifyConfig& cfg, Checks& out) {
    using std::numbers::pi;
    const GridFunction f = sample([](double x) { return 0.5 * std::cos(pi * x); }, cfg.n_cells);
    const ExtendedFunction ef = integral_extension(f, 1);
    const GridFunction expected = sample(
        [](double x) {
            return 2.0 / (pi * pi + 4.0) * (2.0 * std::cos(pi * x) - pi * std::sin(pi * x) - 2.0 * std::exp(2.0 * x)) -
                   0.5 * std::cos(pi * x);
        },
        cfg.n_cells);
    out.at_most("sup |g_1 - closed form|", sup_distance(ef.g(1), expected), 1e-6);
}

void affine_criterion(const VerifyConfig& cfg, Checks& out) {
    const GridFunction f = sample([](double x) { return 2.0 * x - 1.0; }, cfg.n_cells);
    const LineFunction line = integral_extension(f, 3).line();
    double err = 0.0;
    for (Eigen::Index k = 0; k < line.values.size(); ++k) {
        err = std::max(err, std::abs(line.values[k] - (2.0 * line.node(k) - 1.0)));
    }
    out.at_most("sup over [-3, 4] |ext - (2x - 1)|", err, 1e-9);
}

void identities_criterion(const VerifyConfig& cfg, Checks& out) {
    const IdentityTolerances tol{1e-8, 1e-8, 1e-8};
    for (const auto& f : corpus()) {
        const ExtendedFunction ef = integral_extension(sample(f.fn, cfg.n_cells), 3, {.validate = false});
        for (const IdentityCheck& c : check_identities(ef, tol)) {
            out.at_most(c.identity + " " + f.label + " (scaled)", c.max_scaled_deviation, c.tolerance);
        }
    }
}

void parity_criterion(const VerifyConfig& cfg, Checks& out) {
    constexpr int kSegments = 3;
    for (const auto& f : corpus()) {
        const GridFunction g = sample(f.fn, cfg.n_cells);
        const EvenOddParts parts = split_even_odd(g);

        const ExtendedFunction even = integral_extension(parts.even, kSegments);
        double segments = 0.0;
        for (int n = 0; n <= kSegments; ++n) {
            segments = std::max({segments, sup_distance(even.g(n), parts.even), sup_distance(even.h(n), parts.even)});
        }
        out.at_most("even part of " + f.label + ": max |g_n - f|, |h_n - f|", segments, 1e-10);

        const ExtendedFunction odd = integral_extension(parts.odd, kSegments);
        double sums = 0.0;
        for (int n = 0; n <= kSegments; ++n) sums = std::max(sums, sup_norm(odd.g(n) + odd.h(n)));
        out.at_most("odd part of " + f.label + ": max |g_n + h_n|", sums, 1e-8);

        double period = 0.0;
        double split = 0.0;
        for (double t : kTimes) {
            const GridFunction ce = cosine_apply(parts.even, t, kMaxExtension).state;
            period = std::max(period, sup_distance(cosine_apply(parts.even, t + 1.0, kMaxExtension).state, ce));
            const GridFunction whole = cosine_apply(g, t, kMaxExtension).state;
            split = std::max(split, sup_distance(whole, ce + cosine_apply(parts.odd, t, kMaxExtension).state));
        }
        out.at_most("even part of " + f.label + ": |C(t+1) f - C(t) f|", period, 1e-8);
        out.at_most(f.label + ": |C(t) f - C(t) f_ev - C(t) f_od|", split, 1e-8);
    }
}

void robin_criterion(const VerifyConfig& cfg, Checks& out) {
    for (const auto& f : corpus()) {
        const GridFunction odd = split_even_odd(sample(f.fn, cfg.n_cells)).odd;
        if (sup_norm(odd) == 0.0) continue;
        const LineFunction robin = robin_extension(odd);
        const LineFunction integral = integral_extension(odd, 1).line();
        out.at_most("odd part of " + f.label + ": sup over [-1, 2]",
                    (robin.values - integral.values).cwiseAbs().maxCoeff(), 1e-7);

        const Eigen::Index cells = cfg.n_cells;
        double evolved = 0.0;
        for (double t : {0.25, 0.5, 1.0}) {
            const auto k = static_cast<Eigen::Index>(std::lround(t * cells));
            const Eigen::VectorXd via_robin =
                0.5 * (robin.values.segment(cells + k, cells + 1) + robin.values.segment(cells - k, cells + 1));
            evolved = std::max(evolved, (via_robin - cosine_apply(odd, t, 1).state.values()).cwiseAbs().maxCoeff());
        }
        out.at_most("odd part of " + f.label + ": cosine via Robin vs integral, |t| <= 1", evolved, 1e-6);
    }
}

void cosine_equation_criterion(const VerifyConfig& cfg, Checks& out) {
    const std::array<std::pair<double, double>, 3> pairs{{{0.5, 0.25}, {1.0, 0.5}, {0.75, 0.75}}};
    for (const auto& f : corpus()) {
        const GridFunction g = sample(f.fn, cfg.n_cells);
        for (const auto& [t, s] : pairs) {
            out.at_most(f.label + " at (t, s) = (" + fmt(t) + ", " + fmt(s) + ")", cosine_equation_check(g, t, s, 2),
                        5e-6);
        }
    }
}

void volterra_criterion(const VerifyConfig& cfg, Checks& out) {
    for (const auto& f : corpus()) {
        const GridFunction g = sample(f.fn, cfg.n_cells);
        const FixedPointSolution fp = solve_fixed_point(g, 1e-13);
        out.at_most("g = " + f.label + ": sup |closed form - fixed point|", sup_distance(solve_closed_form(g), fp.f),
                    1e-10);
        double ratio = 0.0;
        for (double r : fp.contraction_ratios) ratio = std::max(ratio, r);
        out.at_most("g = " + f.label + ": max contraction ratio", ratio, 0.5 + 1e-6);
    }
}

void spectrum_criterion(const VerifyConfig&, Checks& out) {
    const SpectralModel& m256 = shared_model(256);
    const SpectralModel& m512 = shared_model(512);
    const SpectralModel& m1024 = shared_model(1024);
    const double h2 = 1.0 / (1024.0 * 1024.0);

    out.equal("eigenvalues within 1e3 h^2 of zero", kernel_dimension(m1024), 2.0);
    out.at_most("largest eigenvalue", m1024.eigenvalues[0], 1e3 * h2);
    const KernelResiduals kr = kernel_residuals(m1024);
    out.at_most("kernel residual f0", kr.f0, 1e2 * h2);
    out.at_most("kernel residual f1", kr.f1, 1e2 * h2);

    const double coarse = spectral_gap(m256, m512);
    const double fine = spectral_gap(m512, m1024);
    out.at_most("relative gap change, extrapolated to 512 vs 1024", std::abs(fine - coarse) / fine, 5e-4);
    const double continuum = -continuum_eigenvalues(1).front();
    out.at_most("relative distance of the extrapolated gap to the continuum root",
                std::abs(fine - continuum) / continuum, 5e-4);
}

void resolvent_criterion(const VerifyConfig& cfg, Checks& out) {
    const auto all = corpus();
    const std::array<const Named*, 3> picks{&all[4], &all[5], &all[2]};
    for (double lambda : {1.0, 4.0, 25.0}) {
        for (const Named* f : picks) {
            const GridFunction g = sample(f->fn, cfg.n_cells);
            const ResolventSolution sol = resolve(g, lambda);
            const std::string tag = "lambda " + fmt(lambda) + ", g = " + f->label;
            out.at_most(tag + ": |lambda f - f'' - g|", resolvent_residual(sol, g), 1e-5);
            const BoundaryResiduals b = boundary_residuals(sol.solution);
            out.at_most(tag + ": boundary residual at 0", b.at_0, 1e-6);
            out.at_most(tag + ": boundary residual at 1", b.at_1, 1e-6);
        }
        const double s = std::sqrt(lambda);
        const double det = resolve(GridFunction::zeros(cfg.n_cells), lambda).determinant;
        const double printed = 4.0 * s + 2.0 * lambda * std::cosh(s) - 4.0 * s * std::sinh(s);
        out.at_most("lambda " + fmt(lambda) + ": determinant vs 4s + 2 lambda cosh s - 4s sinh s (relative)",
                    std::abs(det - printed) / std::abs(printed), 1e-10);
        const double derived = resolvent_determinant(lambda);
        out.at_most("lambda " + fmt(lambda) + ": determinant vs 4s + 2 lambda sinh s - 4s cosh s (relative)",
                    std::abs(det - derived) / std::abs(derived), 1e-10);
    }
}

// Least-squares slope of log|y| against t.
double log_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const auto n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double ly = std::log(y[k]);
        st += t[k];
        sy += ly;
        stt += t[k] * t[k];
        sty += t[k] * ly;
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

void convergence_criterion(const VerifyConfig&, Checks& out) {
    using std::numbers::pi;
    const SpectralModel& model = shared_model(1024);
    const double gap = spectral_gap(shared_model(512), model);
    const std::vector<Named> picks{
        {"x^2", [](double x) { return x * x; }},
        {"exp(x)", [](double x) { return std::exp(x); }},
        {"cos(pi x)/2", [](double x) { return 0.5 * std::cos(pi * x); }},
    };
    for (const auto& f : picks) {
        const GridFunction g = sample(f.fn, 1024);
        std::vector<double> ts;
        std::vector<double> dev;
        for (int k = 0; k <= 10; ++k) {
            ts.push_back(1.0 + 0.5 * k);
            dev.push_back(sup_norm(equilibrium_deviation(model, g, ts.back())));
        }
        out.at_least(f.label + ": fitted decay rate", -log_slope(ts, dev), 0.9 * gap);
        const GridFunction weierstrass = semigroup_apply(g, 1.0, kMaxExtension).state;
        out.at_most(f.label + ": |weierstrass - expm| at t = 1", sup_distance(weierstrass, expm_oracle(model, g, 1.0)),
                    1e-3);
    }
}

void boundary_criterion(const VerifyConfig& cfg, Checks& out) {
    using std::numbers::pi;
    const std::vector<Named> members{
        {"1", [](double) { return 1.0; }},
        {"2x-1", [](double x) { return 2.0 * x - 1.0; }},
        {"12x-6", [](double x) { return 12.0 * x - 6.0; }},
        {"cos(2 pi x)", [](double x) { return std::cos(2.0 * pi * x); }},
        {"x^2 (1-x)^2 + 0.3 x", [](double x) { return x * x * (1.0 - x) * (1.0 - x) + 0.3 * x; }},
    };
    for (const auto& f : members) {
        const GridFunction g = sample(f.fn, cfg.n_cells);
        for (int i : {0, 1}) {
            const BoundaryCheck bc = bc_checker(g, i);
            out.at_most(f.label + ": |residual| for i = " + std::to_string(i), std::abs(bc.residual), bc.tolerance);
        }
    }
    const BoundaryCheck square = bc_checker(sample([](double x) { return x * x; }, cfg.n_cells), 0);
    out.at_most("x^2: |residual - 2| for i = 0", std::abs(square.residual - 2.0), 1e-6);
}

using Runner = void (*)(const VerifyConfig&, Checks&);

constexpr std::array<Runner, 12> kRunners{
    moments_criterion,       anchor_criterion,    affine_criterion,         identities_criterion,
    parity_criterion,        robin_criterion,     cosine_equation_criterion, volterra_criterion,
    spectrum_criterion,      resolvent_criterion, convergence_criterion,    boundary_criterion,
};

double closeness(const Check& c) {
    switch (c.bound) {
        case Bound::AtMost: return c.tolerance > 0.0 ? c.measured / c.tolerance : c.measured;
        case Bound::AtLeast: return c.measured > 0.0 ? c.tolerance / c.measured : HUGE_VAL;
        case Bound::Equal: return c.passed ? 0.0 : HUGE_VAL;
    }
    return 0.0;
}

const char* bound_symbol(Bound b) {
    switch (b) {
        case Bound::AtMost: return "<=";
        case Bound::AtLeast: return ">=";
        case Bound::Equal: return "==";
    }
    return "?";
}

}  // namespace

std::span<const Criterion> criteria() { return kCriteria; }

const Criterion& find_criterion(std::string_view key) {
    for (const Criterion& c : kCriteria) {
        if (key == c.name || key == std::to_string(c.id)) return c;
    }
    throw InvalidArgument("unknown criterion '" + std::string(key) + "'");
}

bool VerifyReport::all_passed() const noexcept {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

CriterionResult run_criterion(const Criterion& c, const VerifyConfig& config) {
    CriterionResult result{c.id, std::string(c.name), false, 0.0, 0.0, {}, {}};
    Checks checks;
    try {
        kRunners[static_cast<std::size_t>(c.id - 1)](config, checks);
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    result.checks = checks.take();
    result.passed = result.error.empty() && !result.checks.empty() &&
                    std::all_of(result.checks.begin(), result.checks.end(), [](const Check& k) { return k.passed; });

    const Check* worst = nullptr;
    for (const Check& k : result.checks) {
        if (!k.passed) {
            worst = &k;
            break;
        }
        if (!worst || closeness(k) > closeness(*worst)) worst = &k;
    }
    if (worst) {
        result.measured = worst->measured;
        result.tolerance = worst->tolerance;
    } else {
        result.measured = std::nan("");
    }
    return result;
}

VerifyReport run_verify(const VerifyConfig& config) {
    std::vector<const Criterion*> selected;
    if (config.only.empty()) {
        for (const Criterion& c : kCriteria) selected.push_back(&c);
    } else {
        for (const std::string& key : config.only) {
            const Criterion* c = &find_criterion(key);
            if (std::find(selected.begin(), selected.end(), c) == selected.end()) selected.push_back(c);
        }
        std::sort(selected.begin(), selected.end(), [](auto* a, auto* b) { return a->id < b->id; });
    }

    VerifyReport report;
    if (config.parallel) {
        std::vector<std::future<CriterionResult>> jobs;
        for (const Criterion* c : selected) {
            jobs.push_back(std::async(std::launch::async, [c, &config] { return run_criterion(*c, config); }));
        }
        for (auto& job : jobs) report.results.push_back(job.get());
    } else {
        for (const Criterion* c : selected) report.results.push_back(run_criterion(*c, config));
    }
    return report;
}

nlohmann::json to_json(const VerifyReport& report) {
    nlohmann::json items = nlohmann::json::array();
    for (const CriterionResult& r : report.results) {
        nlohmann::json checks = nlohmann::json::array();
        for (const Check& c : r.checks) {
            checks.push_back({{"label", c.label},
                              {"measured", c.measured},
                              {"bound", bound_symbol(c.bound)},
                              {"tolerance", c.tolerance},
                              {"status", c.passed ? "pass" : "fail"}});
        }
        nlohmann::json item{{"id", r.id},
                            {"name", r.name},
                            {"status", r.passed ? "pass" : "fail"},
                            {"measured", r.measured},
                            {"tolerance", r.tolerance},
                            {"checks", std::move(checks)}};
        if (!r.error.empty()) item["error"] = r.error;
        items.push_back(std::move(item));
    }
    return {{"criteria", std::move(items)}, {"passed", report.all_passed()}, {"exit_code", report.exit_code()}};
}

std::string summary(const VerifyReport& report, bool with_checks) {
    std::ostringstream out;
    int passed = 0;
    for (const CriterionResult& r : report.results) {
        passed += r.passed ? 1 : 0;
        out << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name;
        if (r.checks.empty()) {
            out << "  no measurement\n";
        } else {
            out << "  measured=" << fmt(r.measured) << " tolerance=" << fmt(r.tolerance) << '\n';
        }
        if (!r.error.empty()) out << "        error: " << r.error << '\n';
        for (const Check& c : r.checks) {
            if (!with_checks && c.passed) continue;
            out << "        " << (c.passed ? "ok   " : "FAIL ") << c.label << ": " << fmt(c.measured) << ' '
                << bound_symbol(c.bound) << ' ' << fmt(c.tolerance) << '\n';
        }
    }
    out << passed << '/' << report.results.size() << " criteria passed\n";
    return out.str();
}

}  // namespace kelvin
