#pragma once

// Deterministic work distribution for the randomized suites. Each task index
// computes into its own slot; the number of worker threads (capped by the
// MODGEO_THREADS environment variable) affects only scheduling, never
// results, because every task derives its inputs from its index alone.

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace modgeo {

inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("MODGEO_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

/// Runs body(i) for i in [0, count) across the thread budget. Exceptions
/// propagate; indices are processed in contiguous blocks per thread.
inline void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& body) {
    unsigned workers = thread_budget();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(count, begin + chunk);
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace modgeo
