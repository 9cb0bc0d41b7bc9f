#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmt::cli {

// Bad flag values detected after parsing; reported like parse errors (exit 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;

    std::string domain = "square";
    int level = 6;
    std::uint64_t seed = 0;
    std::vector<std::string> params;  // key=value
    std::string mask;

    std::string set = "left-half";
    std::string set_mask;
    std::string baseline = "filled";
    std::string mode = "set";
    std::string function = "ramp";
    int depth = 0;
    int trials = 20;

    std::string out;
    bool force = false;

    std::string sweep_command;
    std::vector<int> levels;
};

}  // namespace gmt::cli
