#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace kelvin {

struct Criterion {
    int id = 0;
    std::string_view name;
    std::string_view summary;
};

/// The twelve acceptance criteria in order.
std::span<const Criterion> criteria();

/// Looks a criterion up by name or by its 1-based number; throws InvalidArgument otherwise.
const Criterion& find_criterion(std::string_view key);

enum class Bound { AtMost, AtLeast, Equal };

/// One measured quantity inside a criterion.
struct Check {
    std::string label;
    double measured = 0.0;
    double tolerance = 0.0;
    Bound bound = Bound::AtMost;
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// The worst check: the first failing one, else the one closest to its bound.
    double measured = 0.0;
    double tolerance = 0.0;
    std::vector<Check> checks;
    /// Set when the criterion threw instead of completing.
    std::string error;
};

struct VerifyConfig {
    /// Reference resolution; the spectral criteria use their own fixed grids.
    int n_cells = 4096;
    /// Criterion names or numbers; empty runs everything.
    std::vector<std::string> only;
    bool parallel = true;
};

struct VerifyReport {
    std::vector<CriterionResult> results;
    bool all_passed() const noexcept;
    int exit_code() const noexcept { return all_passed() ? 0 : 1; }
};

CriterionResult run_criterion(const Criterion& c, const VerifyConfig& config);

/// Runs the selected criteria (independently, in parallel when enabled).
/// A criterion that throws is recorded as failed; the suite never aborts.
VerifyReport run_verify(const VerifyConfig& config);

nlohmann::json to_json(const VerifyReport& report);

/// One line per criterion: PASS/FAIL, number, name, worst measured value and tolerance.
std::string summary(const VerifyReport& report, bool with_checks = false);

}  // namespace kelvin
