#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qg::par {

// OpenMP-parallel point sweeps with a serial reference path. Reductions are
// deterministic: per-index values land in a preallocated buffer and are
// combined by fixed-order pairwise summation, so serial and parallel modes
// produce bit-identical results for any thread count.

enum class Mode { Serial, OpenMP };

// honors QUADGRAV_THREADS (caps the OpenMP team size)
void init_threads_from_env();
int thread_count();

void for_each_index(int n, Mode mode, const std::function<void(int)>& fn);

double pairwise_sum(std::span<const double> v);

// evaluate fn on 0..n-1 (possibly in parallel) and pairwise-sum the results
double sum_map(int n, Mode mode, const std::function<double(int)>& fn);

} // namespace qg::par
