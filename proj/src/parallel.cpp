#include "lexkit/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lexkit {

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
    threads = resolve_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (threads > n) threads = n;

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    // Contiguous block per worker keeps the partition deterministic.
    std::size_t chunk = n / threads;
    std::size_t extra = n % threads;
    std::size_t begin = 0;
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t end = begin + chunk + (t < extra ? 1 : 0);
        workers.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lexkit
