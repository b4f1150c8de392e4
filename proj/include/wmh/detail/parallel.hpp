#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace wmh::detail {

using Clock = std::chrono::steady_clock;

/// Runs f(i) for i in [0, n) on up to `threads` workers. Each index is processed
/// at most once and results must be written to per-index storage by `f`.
/// Returns false when `deadline` passed before every index was started; the
/// exception from the lowest failing index is rethrown after all workers join.
template <class F>
bool parallel_for(std::size_t n, unsigned threads, F &&f,
                  std::optional<Clock::time_point> deadline = std::nullopt) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> expired{false};
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&] {
        for (;;) {
            if (next.load() >= n) return;
            if (deadline && Clock::now() > *deadline) {
                expired = true;
                return;
            }
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return !expired.load();
}

} // namespace wmh::detail
