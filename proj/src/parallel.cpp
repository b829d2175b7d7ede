#include "quadgrav/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qg::par {

void init_threads_from_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("QUADGRAV_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void for_each_index(int n, Mode mode, const std::function<void(int)>& fn) {
#ifdef _OPENMP
    if (mode == Mode::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
#else
    (void)mode;
#endif
    for (int i = 0; i < n; ++i) fn(i);
}

double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double sum_map(int n, Mode mode, const std::function<double(int)>& fn) {
    std::vector<double> buf(static_cast<std::size_t>(n));
    for_each_index(n, mode, [&](int i) { buf[std::size_t(i)] = fn(i); });
    return pairwise_sum(buf);
}

} // namespace qg::par
