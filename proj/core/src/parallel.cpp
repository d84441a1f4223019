#include "kgex/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kgex {

size_t default_jobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

void parallel_for(size_t n, size_t jobs, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (jobs == 0) jobs = default_jobs();
    jobs = std::min(jobs, n);

    if (jobs <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const size_t chunk = (n + jobs - 1) / jobs;
    for (size_t w = 0; w < jobs; ++w) {
        const size_t begin = w * chunk;
        const size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end] {
            try {
                for (size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace kgex
