#include <set>
#include <string>

#include "doctest.h"
#include "kelvin/error.hpp"
#include "kelvin/verify.hpp"

using namespace kelvin;

TEST_CASE("criteria are numbered 1..12 with unique names") {
    std::set<std::string_view> names;
    int expected = 1;
    for (const Criterion& c : criteria()) {
        CHECK(c.id == expected++);
        names.insert(c.name);
        CHECK(&find_criterion(c.name) == &c);
        CHECK(&find_criterion(std::to_string(c.id)) == &c);
    }
    CHECK(names.size() == 12);
    CHECK_THROWS_AS(find_criterion("nope"), InvalidArgument);
    CHECK_THROWS_AS(find_criterion("13"), InvalidArgument);
}

TEST_CASE("--only runs exactly the selected criteria, in order") {
    VerifyConfig cfg;
    cfg.n_cells = 256;
    cfg.only = {"3", "odd-cosine-anchor", "affine-extension"};
    const VerifyReport report = run_verify(cfg);
    REQUIRE(report.results.size() == 2);
    CHECK(report.results[0].name == "odd-cosine-anchor");
    CHECK(report.results[1].name == "affine-extension");
    CHECK(report.all_passed());
    CHECK(report.exit_code() == 0);

    const nlohmann::json j = to_json(report);
    CHECK(j["criteria"].size() == 2);
    CHECK(j["criteria"][0]["status"] == "pass");
    CHECK(j["exit_code"] == 0);
    CHECK(summary(report).find("PASS   2  odd-cosine-anchor") != std::string::npos);
}

TEST_CASE("a coarse grid fails the anchor with the measured error reported") {
    VerifyConfig cfg;
    cfg.n_cells = 16;
    cfg.only = {"odd-cosine-anchor"};
    cfg.parallel = false;
    const VerifyReport report = run_verify(cfg);
    REQUIRE(report.results.size() == 1);
    const CriterionResult& r = report.results[0];
    CHECK_FALSE(r.passed);
    // At 16 cells the extension's own identity checks trip before the anchor is compared.
    CHECK(r.error.find("integral extension breaches") != std::string::npos);
    CHECK(report.exit_code() == 1);
    CHECK(summary(report).find("FAIL") != std::string::npos);
}

TEST_CASE("a criterion that throws is recorded, not propagated") {
    VerifyConfig cfg;
    cfg.n_cells = 7;
    cfg.only = {"moments"};
    const VerifyReport report = run_verify(cfg);
    REQUIRE(report.results.size() == 1);
    CHECK_FALSE(report.results[0].passed);
    CHECK_FALSE(report.results[0].error.empty());
    CHECK(to_json(report)["criteria"][0].contains("error"));
}
