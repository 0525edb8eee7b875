#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optilik {

enum class Execution { Serial, Parallel };

// Worker cap: OPTILIK_THREADS if set, otherwise the logical CPU count.
inline int worker_threads() {
    if (const char* env = std::getenv("OPTILIK_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<int>(n);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, n). The parallel path requires bodies that are
// independent across i and write only to their own output slots; callers get
// bitwise-identical results from both execution modes.
template <typename F>
void parallel_for(std::size_t n, F&& body, Execution mode = Execution::Parallel) {
    const int threads = worker_threads();
#ifdef _OPENMP
    if (mode == Execution::Parallel && threads > 1 && n > 1) {
        const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)threads;
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace optilik
