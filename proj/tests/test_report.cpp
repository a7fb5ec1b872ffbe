#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "specdisc/report.hpp"

using namespace specdisc;

TEST_CASE("config parsing: values, comments, defaults") {
    const auto config = ExperimentConfig::parse_string(
        "alpha = 1.5   # duty exponent\n"
        "\n"
        "grid.res = 24\n"
        "rule = linf\n");
    CHECK(config.get_double("alpha", 0.0) == 1.5);
    CHECK(config.get_int("grid.res", 0) == 24);
    CHECK(config.get_string("rule", "") == "linf");
    CHECK(config.get_double("missing", 7.0) == 7.0);
    CHECK(config.has("alpha"));
    CHECK(!config.has("beta"));
}

TEST_CASE("config parsing: errors carry line and key") {
    try {
        ExperimentConfig::parse_string("a = 1\nbroken line\n");
        FAIL("expected throw");
    } catch (const ConfigParseError& e) {
        CHECK(e.error().line == 2);
    }
    try {
        const auto c = ExperimentConfig::parse_string("n = twelve\n");
        c.get_int("n", 0);
        FAIL("expected throw");
    } catch (const ConfigParseError& e) {
        CHECK(e.error().key == "n");
        CHECK(e.error().line == 1);
    }
    CHECK_THROWS_AS(ExperimentConfig::parse_string("dup = 1\ndup = 2\n"), ConfigParseError);
}

TEST_CASE("golden compare: identity, perturbation, tolerance rule") {
    const std::string doc = R"({"a": 1.0, "b": {"c": [1, 2, 3]}, "s": "x"})";
    CHECK(golden_compare(doc, doc).empty());

    const std::string bumped = R"({"a": 1.0000002, "b": {"c": [1, 2, 3]}, "s": "x"})";
    const auto diffs = golden_compare(doc, bumped);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs[0].path == "/a");

    // |a-b| <= atol + rtol*|b| passes with loose tolerances.
    CHECK(golden_compare(doc, bumped, 1e-3, 1e-3).empty());

    const std::string missing = R"({"a": 1.0, "s": "x"})";
    CHECK(golden_compare(doc, missing).size() == 1);
}

TEST_CASE("plot data and range parsing") {
    const std::string path = "plot_test_tmp.txt";
    write_plot_data(path, {1.0, 2.0}, {3.0, 4.5});
    std::ifstream in(path);
    double a, b;
    in >> a >> b;
    CHECK(a == 1.0);
    CHECK(b == 3.0);
    in.close();
    std::remove(path.c_str());

    CHECK(parse_range("3..7") == std::pair<std::int64_t, std::int64_t>{3, 7});
    CHECK(parse_range("5") == std::pair<std::int64_t, std::int64_t>{5, 5});
    CHECK_THROWS(parse_range("9..2"));
}
