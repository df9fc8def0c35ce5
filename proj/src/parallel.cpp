#include "tfm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tfm {

std::size_t worker_count() {
    if (const char* env = std::getenv("TFMULT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = count;
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace tfm
