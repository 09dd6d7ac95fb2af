#include "parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace fdd {

unsigned thread_limit() {
    static const unsigned limit = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("FDD_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v > 0) return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
        }
        return hw;
    }();
    return limit;
}

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn) {
    if (end <= begin) return;
    const std::size_t n = end - begin;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_limit(), n));
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([=, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace fdd
