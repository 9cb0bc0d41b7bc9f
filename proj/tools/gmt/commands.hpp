#pragma once

#include <string>

#include "gmt/report.hpp"
#include "options.hpp"

namespace gmt::cli {

// One of gallery, decompose, jordan, smooth, coarea, extend, verify.
Report run_command(const Options& o);

// CSV of every metric against level, rows in level order.
std::string run_sweep(const Options& o);

// Creates the --out directory; refuses a non-empty one without --force.
void prepare_output(const Options& o);

}  // namespace gmt::cli
