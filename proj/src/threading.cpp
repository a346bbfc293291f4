#include "secrecy/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace secrecy {

std::size_t worker_count(std::size_t cap) {
    std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SECRECY_TOOLKIT_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) n = std::min(n, static_cast<std::size_t>(v));
    }
    if (cap >= 1) n = std::min(n, cap);
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, std::size_t cap) {
    if (n == 0) return;
    const std::size_t workers = std::min(worker_count(cap), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace secrecy
