#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cubeph {

/// Evaluates fn(0..count-1) on up to `jobs` threads and returns the results in
/// index order, so any later fold over them is independent of the job count.
/// The first exception thrown by a task is rethrown after all workers stop.
template <class Fn>
auto run_indexed(int count, int jobs, Fn&& fn) -> std::vector<decltype(fn(0))> {
    using Result = decltype(fn(0));
    std::vector<Result> results(static_cast<std::size_t>(std::max(count, 0)));
    if (count <= 0) return results;
    const int workers = std::clamp(jobs, 1, count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
        return results;
    }

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace cubeph
