#include <cmath>
#include <limits>

#include "doctest.h"
#include "gmt/errors.hpp"
#include "gmt/report.hpp"

using namespace gmt;

TEST_CASE("report json round trip") {
    Report r;
    r.command = "extend";
    r.inputs = {{"domain", "comb"}, {"level", "8"}};
    r.metrics = {{"constant", 6.079}, {"overlap", 1.00390625}};
    r.artifacts = {"out/set.pbm"};
    CHECK(report_from_json(to_json(r)) == r);
    CHECK(report_from_json(to_json(r, -1)) == r);
}

TEST_CASE("report rejects bad numbers and bad text") {
    Report r;
    r.command = "x";
    r.metrics["bad"] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(to_json(r), ContractViolation);
    r.metrics["bad"] = INFINITY;
    CHECK_THROWS_AS(to_json(r), ContractViolation);
    CHECK_THROWS_AS(report_from_json("{\"command\": 3"), ParseError);
    CHECK_THROWS_AS(report_from_json("[1,2]"), ParseError);
}

TEST_CASE("edge measure json") {
    const Grid g = Grid::make(2, 1, {2, 1, 1});
    const EdgeMeasure m(g, {{0, 1, 0.5}});
    const std::string s = to_json(m);
    CHECK(s.find("\"value\"") != std::string::npos);
    CHECK(s.find("[0,1,0.5]") != std::string::npos);
}

TEST_CASE("version string") { CHECK_FALSE(version().empty()); }
