#include "pmfix/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pmfix::par {

namespace {

int env_threads() {
    if (const char* env = std::getenv("PMFIX_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
            // Unparseable value falls through to the default.
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::atomic<int> g_override{0};

}  // namespace

int thread_count() {
    const int n = g_override.load(std::memory_order_relaxed);
    if (n > 0) return n;
    static const int from_env = env_threads();
    return from_env;
}

void set_threads(int n) { g_override.store(n > 0 ? n : 0, std::memory_order_relaxed); }

bool parallel_enabled() {
#ifdef _OPENMP
    return thread_count() > 1;
#else
    return false;
#endif
}

namespace detail {

void run_parallel(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx) {
#ifdef _OPENMP
    const int threads = thread_count();
#pragma omp parallel for num_threads(threads) schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        trampoline(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
#endif
}

}  // namespace detail

}  // namespace pmfix::par
