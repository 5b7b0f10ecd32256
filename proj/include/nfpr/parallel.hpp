#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace nfpr {

/// Resolves a user thread cap: 0 means all hardware threads.
[[nodiscard]] inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [begin, end) into contiguous chunks and runs fn(chunk_begin,
/// chunk_end) on up to `threads` workers. The first exception thrown by a
/// worker is rethrown on the caller's thread.
template <class Fn>
void parallel_for(int begin, int end, unsigned threads, Fn&& fn) {
    const int total = end - begin;
    if (total <= 0) return;
    const int workers = static_cast<int>(std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(total)));
    if (workers <= 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        const int lo = begin + static_cast<int>(static_cast<long long>(total) * t / workers);
        const int hi = begin + static_cast<int>(static_cast<long long>(total) * (t + 1) / workers);
        pool.emplace_back([&, lo, hi, t] {
            try {
                fn(lo, hi);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace nfpr
