#pragma once

#include <cstddef>
#include <vector>

namespace cge {
namespace parallel {

enum class Mode { Serial, OpenMP };

/// Global execution mode for grid sweeps.  Reductions are deterministic
/// either way (sweeps fill buffers, sums are fixed-tree pairwise), so the
/// two modes produce bit-identical results.
Mode mode();
void set_mode(Mode m);

/// Apply fn(i) for i in [0, n).  fn must only write to index-i slots.
template <class F> void for_each(std::size_t n, F &&fn);

namespace detail {
bool use_openmp();
}

template <class F> void for_each(std::size_t n, F &&fn) {
    if (detail::use_openmp()) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < (long long)n; ++i)
            fn((std::size_t)i);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
    }
}

/// Deterministic fixed-tree pairwise sum; independent of thread count.
double pairwise_sum(const double *a, std::size_t n);
inline double pairwise_sum(const std::vector<double> &a) {
    return pairwise_sum(a.data(), a.size());
}

} // namespace parallel
} // namespace cge
