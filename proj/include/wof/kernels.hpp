#pragma once

// Data-parallel building blocks. Every kernel has a serial path
// (workers <= 1) that is the reference implementation; the OpenMP path
// must produce bit-identical results because each index writes its own
// slot and reductions run afterwards in index order.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wof::kernels {

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// out[i] = fn(i) for i in [0, count).
template <typename T, typename Fn>
std::vector<T> map_serial(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

template <typename T, typename Fn>
std::vector<T> map_parallel(std::size_t count, Fn&& fn, int workers) {
  std::vector<T> out(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  }
  return out;
}

template <typename T, typename Fn>
std::vector<T> map(std::size_t count, Fn&& fn, int workers) {
  if (workers <= 1 || count <= 1) return map_serial<T>(count, fn);
  return map_parallel<T>(count, fn, workers);
}

}  // namespace wof::kernels
