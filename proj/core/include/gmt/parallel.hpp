#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace gmt {

// Worker count: GMT_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs body(begin, end) over [0, n) split into fixed-size blocks. Block
// boundaries depend only on n and block, never on the worker count.
void parallel_blocks(std::int64_t n, std::int64_t block,
                     const std::function<void(std::int64_t, std::int64_t)>& body);

// Deterministic sum: per-block partials are combined in block order.
double parallel_sum(std::int64_t n, std::int64_t block,
                    const std::function<double(std::int64_t, std::int64_t)>& partial);

}  // namespace gmt
