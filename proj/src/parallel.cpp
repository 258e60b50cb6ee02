#include "nearcurve/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nearcurve::exec {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int threads() {
    int n = g_threads.load();
    if (n == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        n = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return n < 1 ? 1 : n;
}

void run_blocks(long long n_blocks, const std::function<void(long long)>& fn) {
    if (n_blocks <= 0) return;
    int nw = threads();
    if (nw == 1 || n_blocks == 1) {
        for (long long i = 0; i < n_blocks; ++i) fn(i);
        return;
    }
    if (static_cast<long long>(nw) > n_blocks) nw = static_cast<int>(n_blocks);

    std::atomic<long long> next{0};
    // first_bad tracks the smallest failing block so the rethrown error does not
    // depend on thread scheduling.
    std::atomic<long long> first_bad{n_blocks};
    std::exception_ptr errs_by_block;
    std::mutex err_mu;

    auto worker = [&] {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= n_blocks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                long long prev = first_bad.load();
                if (i < prev) {
                    first_bad.store(i);
                    errs_by_block = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nw - 1));
    for (int t = 1; t < nw; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    if (first_bad.load() < n_blocks) std::rethrow_exception(errs_by_block);
}

} // namespace nearcurve::exec
