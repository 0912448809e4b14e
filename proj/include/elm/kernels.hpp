#pragma once

#include <cstddef>
#include <functional>

#ifdef ELM_HAVE_OPENMP
#include <omp.h>
#endif

namespace elm {

// Hot loops come in two flavours: a serial reference, and an OpenMP version
// used by default. Results are written to preassigned slots so the parallel
// path is placement-deterministic; reductions chunk by thread index so a run
// is reproducible for a fixed thread count.
enum class Execution { Serial, Parallel };

inline int max_threads() {
#ifdef ELM_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef ELM_HAVE_OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Runs body(i) for i in [0, n). Parallel mode uses dynamic scheduling; the
/// body must only write to its own slot i.
template <typename F>
void for_each_index(std::size_t n, Execution exec, F&& body) {
#ifdef ELM_HAVE_OPENMP
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace elm
