// Trial sweep engine. Every randomized suite funnels its trial loop through
// run_trials, which has an OpenMP-parallel path and a serial reference path.
// Trials must be independent: each derives its generator from (seed, index)
// and writes only to its own result slot, so the two paths produce identical
// reports and the serial path stays usable as the oracle for the parallel one.
#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qdp {

enum class ExecutionMode { serial, parallel };

inline ExecutionMode default_execution_mode() {
#ifdef _OPENMP
    return ExecutionMode::parallel;
#else
    return ExecutionMode::serial;
#endif
}

// fn(i) is invoked exactly once for each i in [0, n). Exceptions are captured
// per trial and the lowest-index one is rethrown after the sweep, in both modes.
template <typename Fn>
void run_trials(std::size_t n, ExecutionMode mode, Fn&& fn) {
    if (n == 0) return;
    if (mode == ExecutionMode::serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> failures(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace qdp
