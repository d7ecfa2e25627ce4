#include "multiway/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

namespace multiway {

unsigned thread_cap() {
    unsigned cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("MULTIWAY_THREADS")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && value > 0) cap = static_cast<unsigned>(value);
    }
    return std::max(1u, cap);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned shuffle_seed) {
    if (n == 0) return;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (shuffle_seed != 0) {
        std::mt19937 rng(shuffle_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), n));
    if (workers <= 1) {
        for (std::size_t i : order) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t slot = next.fetch_add(1);
            if (slot >= n) return;
            try {
                fn(order[slot]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (failure) std::rethrow_exception(failure);
}

}  // namespace multiway
