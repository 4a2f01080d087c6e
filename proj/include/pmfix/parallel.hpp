#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

namespace pmfix::par {

/// Execution mode for the scan kernels. Serial is the reference
/// implementation the tests compare against; Auto picks the OpenMP kernel
/// when more than one thread is configured.
enum class Exec { Serial, Auto };

/// Configured thread count: PMFIX_THREADS when set, otherwise the OpenMP
/// default (1 in builds without OpenMP).
int thread_count();

/// Override the thread cap; 0 restores the environment default. Test hook.
void set_threads(int n);

/// True when the Auto mode will actually run multithreaded.
bool parallel_enabled();

namespace detail {
void run_parallel(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx);
}

/// Runs body(i) for i in [0, n). In Auto mode the iterations are spread
/// across OpenMP threads; body must therefore only write to per-index
/// state. Exceptions are captured and the lowest-index one is rethrown, so
/// failure behavior matches the serial reference.
template <class F>
void for_index(std::size_t n, F&& body, Exec mode = Exec::Auto) {
    if (mode == Exec::Serial || !parallel_enabled() || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    struct Ctx {
        F* body;
        std::vector<std::exception_ptr> errors;
    } ctx{&body, std::vector<std::exception_ptr>(n)};
    detail::run_parallel(
        n,
        [](void* raw, std::size_t i) {
            auto* c = static_cast<Ctx*>(raw);
            try {
                (*c->body)(i);
            } catch (...) {
                c->errors[i] = std::current_exception();
            }
        },
        &ctx);
    for (std::size_t i = 0; i < n; ++i)
        if (ctx.errors[i]) std::rethrow_exception(ctx.errors[i]);
}

}  // namespace pmfix::par
