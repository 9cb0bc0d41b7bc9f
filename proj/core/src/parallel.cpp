#include "gmt/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace gmt {

int thread_count() {
    if (const char* env = std::getenv("GMT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_blocks(std::int64_t n, std::int64_t block,
                     const std::function<void(std::int64_t, std::int64_t)>& body) {
    if (n <= 0) return;
    block = std::max<std::int64_t>(block, 1);
    const std::int64_t nblocks = (n + block - 1) / block;
    const int workers = int(std::min<std::int64_t>(thread_count(), nblocks));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) body(b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            try {
                body(b * block, std::min(n, (b + 1) * block));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = nblocks;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers - 1));
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

double parallel_sum(std::int64_t n, std::int64_t block,
                    const std::function<double(std::int64_t, std::int64_t)>& partial) {
    if (n <= 0) return 0.0;
    block = std::max<std::int64_t>(block, 1);
    const std::int64_t nblocks = (n + block - 1) / block;
    std::vector<double> parts(std::size_t(nblocks), 0.0);
    parallel_blocks(nblocks, 1, [&](std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b)
            parts[std::size_t(b)] = partial(b * block, std::min(n, (b + 1) * block));
    });
    double total = 0.0;
    for (double p : parts) total += p;
    return total;
}

}  // namespace gmt
