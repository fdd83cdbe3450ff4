#include "cge/parallel.hpp"

namespace cge {
namespace parallel {

namespace {
Mode g_mode = Mode::OpenMP;
}

Mode mode() { return g_mode; }
void set_mode(Mode m) { g_mode = m; }

namespace detail {
bool use_openmp() {
#ifdef _OPENMP
    return g_mode == Mode::OpenMP;
#else
    return false;
#endif
}
} // namespace detail

double pairwise_sum(const double *a, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += a[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}

} // namespace parallel
} // namespace cge
