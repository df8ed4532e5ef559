#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace sbridge {

// Worker cap for block-parallel loops. SB_THREADS=0 or unset means "use the
// hardware concurrency"; any positive value is taken literally.
inline int thread_cap() {
    static const int cap = [] {
        if (const char* s = std::getenv("SB_THREADS")) {
            const int v = std::atoi(s);
            if (v > 0) return v;
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return hc > 0 ? static_cast<int>(hc) : 1;
    }();
    return cap;
}

// Runs fn(block, begin, end) over [0, count) split into fixed-size blocks.
// The block boundaries depend only on (count, block_size), never on the
// worker count, so floating-point reductions accumulated per block are
// bit-identical for any SB_THREADS setting. Blocks are claimed dynamically;
// fn must only write state owned by its block.
template <class Fn>
void for_blocks(std::size_t count, std::size_t block_size, Fn&& fn) {
    if (count == 0) return;
    const std::size_t nblocks = (count + block_size - 1) / block_size;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), nblocks);

    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * block_size;
        const std::size_t end = std::min(count, begin + block_size);
        fn(b, begin, end);
    };

    if (workers <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sbridge
