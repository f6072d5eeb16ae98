#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kelvin/io.hpp"

using namespace kelvin;

TEST_CASE("shortest round-trip numbers") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-6.0) == "-6");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
    for (double v : {std::numbers::pi, 1e-300, -2.5e17, std::numeric_limits<double>::denorm_min()}) {
        const std::string s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("grid CSV round-trips bit for bit") {
    const GridFunction f = sample([](double x) { return std::exp(x) * std::sin(7.0 * x); }, 96);
    std::ostringstream out;
    write_csv(out, f);
    std::istringstream in(out.str());
    const GridFunction back = read_grid_csv(in);
    CHECK(back.values() == f.values());

    std::ostringstream again;
    write_csv(again, back);
    CHECK(again.str() == out.str());
    CHECK(out.str().rfind("x,value\n0,", 0) == 0);
}

TEST_CASE("grid CSV validation") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_grid_csv(in);
    };
    CHECK(parse("x,value\n0,1\n0.5,2\n1,3\n")[1] == 2.0);
    CHECK(parse("x,value\r\n0,1\r\n\r\n0.5,2\r\n1,3\r\n").n_cells() == 2);
    CHECK_THROWS_AS(parse(""), InvalidArgument);
    CHECK_THROWS_AS(parse("t,value\n0,1\n0.5,2\n1,3\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("x,value\n0,1\n0.4,2\n1,3\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("x,value\n0,1\n0.5,abc\n1,3\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("x,value\n0,1\n0.5,2,7\n1,3\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("x,value\n0,1\n0.333333333333333,2\n0.6666666666666666,3\n1,4\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("x,value\n0,1\n1,2\n"), InvalidArgument);
    try {
        parse("x,value\n0,1\n0.5,oops\n1,3\n");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    // x within 1e-12 of the node is accepted.
    CHECK_NOTHROW(parse("x,value\n0,1\n0.5000000000001,2\n1,3\n"));
    CHECK_THROWS_AS(read_grid_csv(std::filesystem::path("/nonexistent/input.csv")), InvalidArgument);
}

TEST_CASE("line CSV covers the extension range") {
    LineFunction line{-1.0, 2, Eigen::VectorXd::LinSpaced(7, 0.0, 6.0)};
    std::ostringstream out;
    write_csv(out, line);
    CHECK(out.str() == "x,value\n-1,0\n-0.5,1\n0,2\n0.5,3\n1,4\n1.5,5\n2,6\n");
}

TEST_CASE("JSON documents") {
    const GridFunction f = sample([](double x) { return x; }, 4);
    const nlohmann::json j = to_json(f);
    CHECK(j["n_cells"] == 4);
    CHECK(j["values"].size() == 5);

    EvolutionResult r{f, 0.5, Method::Weierstrass, {1e-12, 2e-12}, 3e-15};
    const nlohmann::json e = to_json(r);
    CHECK(e["method"] == "weierstrass");
    CHECK(e["moment_drift"][1] == 2e-12);
    CHECK(e["quadrature_tail_bound"] == 3e-15);
    CHECK(e.dump() == to_json(r).dump());

    const nlohmann::json m = to_json(moments(f, {0, 1}, 0.5));
    CHECK(m["moment_about"].get<double>() == doctest::Approx(0.5 * 0.5 - 1.0 / 3.0));
    CHECK_FALSE(to_json(moments(f, {2})).contains("moment_about"));
}
