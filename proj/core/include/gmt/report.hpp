#pragma once

#include <map>
#include <string>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

std::string version();

struct Report {
    std::string command;
    std::map<std::string, std::string> inputs;
    std::map<std::string, double> metrics;
    std::vector<std::string> artifacts;
    std::string version = gmt::version();

    friend bool operator==(const Report&, const Report&) = default;
};

// Throws ContractViolation if a metric is not finite.
std::string to_json(const Report& r, int indent = 2);
// Throws ParseError on malformed input.
Report report_from_json(const std::string& text);

// {"value": total, "faces": [[a, b, weight], ...]}
std::string to_json(const EdgeMeasure& m);

}  // namespace gmt
