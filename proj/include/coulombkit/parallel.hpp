#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coulombkit {

// Worker count: COULOMBKIT_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COULOMBKIT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

// Applies f to every input; results keep input order. The first exception
// thrown by any worker is rethrown on the calling thread.
template <class T, class F>
auto parallel_map(const std::vector<T>& in, F f) -> std::vector<decltype(f(in.front()))> {
    using R = decltype(f(in.front()));
    std::vector<R> out(in.size());
    unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(in.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < in.size();) {
            try {
                out[i] = f(in[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = in.size();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace coulombkit
